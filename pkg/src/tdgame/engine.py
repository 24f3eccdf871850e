"""Rules for the two games.

Total domination game on a graph: players alternately select vertices, each
selection must newly dominate at least one vertex (a vertex is dominated when
it has a selected neighbor; selection does not dominate the selected vertex
itself), and the game ends when every vertex is dominated.

Transversal game on a hypergraph: each selected vertex must lie in at least
one edge that no previously selected vertex touches, and the game ends when
every edge is hit.

States are values: ``apply_move`` returns a new state. A game can start from
a preset selected set; the move counter ``t`` counts only post-preset moves.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .graphs import Graph, Hypergraph


class Player(Enum):
    DOMINATOR = "dominator"
    STALLER = "staller"

    def other(self) -> "Player":
        return Player.STALLER if self is Player.DOMINATOR else Player.DOMINATOR


#: In the transversal game the minimizing player is called the Edge-hitter.
EDGE_HITTER = Player.DOMINATOR

Board = Union[Graph, Hypergraph]


class IllegalMoveError(ValueError):
    """Move rejected by the rules; names the vertex and the violated rule."""

    def __init__(self, vertex: int, rule: str):
        self.vertex = vertex
        self.rule = rule
        super().__init__(f"illegal move {vertex}: {rule}")


@dataclass(frozen=True)
class GameState:
    """Selected vertices plus the derived covered set.

    ``covered_mask`` holds dominated vertices for the graph game and hit edge
    indices for the transversal game. ``t`` counts moves after the preset.
    """

    board: Board
    selected: tuple[int, ...]
    selected_mask: int
    covered_mask: int
    mover: Player
    preset_count: int

    @property
    def t(self) -> int:
        return len(self.selected) - self.preset_count

    @property
    def is_graph_game(self) -> bool:
        return isinstance(self.board, Graph)

    def is_selected(self, v: int) -> bool:
        return bool(self.selected_mask >> v & 1)

    def dominated_mask(self) -> int:
        if not self.is_graph_game:
            raise TypeError("dominated_mask is only defined for the graph game")
        return self.covered_mask

    def is_dominated(self, v: int) -> bool:
        return bool(self.dominated_mask() >> v & 1)

    def undominated(self) -> frozenset[int]:
        mask = self.dominated_mask()
        return frozenset(v for v in range(self.board.n) if not mask >> v & 1)


def _gain_mask(board: Board, v: int) -> int:
    if isinstance(board, Graph):
        return board.nbr_mask[v]
    return board.vertex_edges[v]


def _full_mask(board: Board) -> int:
    if isinstance(board, Graph):
        return (1 << board.n) - 1
    return (1 << len(board.edges)) - 1


def new_game(
    board: Board,
    preset: tuple[int, ...] | frozenset[int] | list[int] = (),
    first_mover: Player = Player.DOMINATOR,
) -> GameState:
    if isinstance(board, Graph):
        isolated = board.isolated_vertices()
        if isolated:
            raise ValueError(
                f"graph game undefined: isolated vertices {isolated} can never"
                " be dominated"
            )
    else:
        if board.has_empty_edge():
            raise ValueError(
                "transversal game undefined: an empty edge can never be hit"
            )
    preset_list = sorted(preset) if isinstance(preset, (set, frozenset)) else list(preset)
    selected_mask = 0
    covered = 0
    for v in preset_list:
        if not 0 <= v < board.n:
            raise ValueError(f"preset vertex {v} out of range")
        if selected_mask >> v & 1:
            raise ValueError(f"duplicate preset vertex {v}")
        selected_mask |= 1 << v
        covered |= _gain_mask(board, v)
    return GameState(
        board=board,
        selected=tuple(preset_list),
        selected_mask=selected_mask,
        covered_mask=covered,
        mover=first_mover,
        preset_count=len(preset_list),
    )


def legal_moves(s: GameState) -> frozenset[int]:
    """Vertices that may be played now; empty iff the game is over."""
    out = []
    not_covered = ~s.covered_mask
    for v in range(s.board.n):
        if s.selected_mask >> v & 1:
            continue
        if _gain_mask(s.board, v) & not_covered:
            out.append(v)
    return frozenset(out)


def is_legal(s: GameState, v: int) -> bool:
    return (
        0 <= v < s.board.n
        and not s.selected_mask >> v & 1
        and bool(_gain_mask(s.board, v) & ~s.covered_mask)
    )


def apply_move(s: GameState, v: int) -> GameState:
    if not 0 <= v < s.board.n:
        raise IllegalMoveError(v, "vertex out of range")
    if s.selected_mask >> v & 1:
        raise IllegalMoveError(v, "vertex already selected")
    gain = _gain_mask(s.board, v) & ~s.covered_mask
    if not gain:
        rule = (
            "does not dominate any new vertex"
            if s.is_graph_game
            else "does not hit any new edge"
        )
        raise IllegalMoveError(v, rule)
    return GameState(
        board=s.board,
        selected=s.selected + (v,),
        selected_mask=s.selected_mask | 1 << v,
        covered_mask=s.covered_mask | _gain_mask(s.board, v),
        mover=s.mover.other(),
        preset_count=s.preset_count,
    )


def is_terminal(s: GameState) -> bool:
    return s.covered_mask == _full_mask(s.board)
