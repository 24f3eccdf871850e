"""Exact game values by memoized minimax.

The value of a position is the number of moves still to be played under
optimal play: the minimizing player (Dominator / Edge-hitter) takes the min
over legal moves of 1 + value(child), the maximizer (Staller) the max, and a
finished game has value 0. Positions are keyed by (selected set, mover); the
covered set is a function of the selected set, so it stays out of the key.

Values solved from an empty preset with Dominator first give the game total
domination number of a graph (or the game transversal number of a
hypergraph); Staller-first gives the Staller-start variants. Continuation
games simply start from a nonempty preset and count post-preset moves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Union

from .engine import Player
from .graphs import Graph, Hypergraph, open_neighborhood_hypergraph

Board = Union[Graph, Hypergraph]

DEFAULT_MAX_VERTICES = 22
DEFAULT_MAX_CACHE = 1 << 22


class ResourceLimitError(RuntimeError):
    def __init__(self, message: str, cache_size: int):
        self.cache_size = cache_size
        super().__init__(f"{message} (cache keys: {cache_size})")


@dataclass(frozen=True)
class SolverResult:
    value: int
    best_move: Optional[int]
    nodes_expanded: int
    from_cache: bool


class MinimaxSolver:
    """Reusable solver for one board; the cache persists across queries."""

    def __init__(
        self,
        board: Board,
        max_vertices: int = DEFAULT_MAX_VERTICES,
        max_cache_entries: int = DEFAULT_MAX_CACHE,
    ):
        if board.n > max_vertices:
            raise ResourceLimitError(
                f"board has {board.n} vertices, over the {max_vertices} cap", 0
            )
        if isinstance(board, Graph):
            if board.isolated_vertices():
                raise ValueError("graph game undefined with isolated vertices")
            self._gain = board.nbr_mask
            self._full = (1 << board.n) - 1
        else:
            if board.has_empty_edge():
                raise ValueError("transversal game undefined with an empty edge")
            self._gain = board.vertex_edges
            self._full = (1 << len(board.edges)) - 1
        self.board = board
        self.max_cache_entries = max_cache_entries
        self._cache: dict[tuple[int, bool], int] = {}
        self.nodes_expanded = 0

    def covered_for(self, selected_mask: int) -> int:
        covered = 0
        m = selected_mask
        while m:
            v = (m & -m).bit_length() - 1
            covered |= self._gain[v]
            m &= m - 1
        return covered

    def _value(self, selected: int, covered: int, minimizing: bool) -> int:
        key = (selected, minimizing)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.nodes_expanded += 1
        if len(self._cache) >= self.max_cache_entries:
            raise ResourceLimitError("solver cache budget exceeded", len(self._cache))
        best = -1
        gain = self._gain
        not_covered = ~covered
        for v in range(self.board.n):
            if selected >> v & 1:
                continue
            g = gain[v]
            if not g & not_covered:
                continue
            child = 1 + self._value(selected | 1 << v, covered | g, not minimizing)
            if best < 0:
                best = child
            elif minimizing:
                if child < best:
                    best = child
            elif child > best:
                best = child
        if best < 0:
            best = 0  # no legal move: covered == full, game over
        self._cache[key] = best
        return best

    def value(self, selected_mask: int, mover: Player) -> int:
        return self._value(
            selected_mask,
            self.covered_for(selected_mask),
            mover is Player.DOMINATOR,
        )

    def solve(
        self,
        preset: tuple[int, ...] | frozenset[int] | list[int] = (),
        first_mover: Player = Player.DOMINATOR,
    ) -> SolverResult:
        selected = 0
        for v in preset:
            if not 0 <= v < self.board.n:
                raise ValueError(f"preset vertex {v} out of range")
            selected |= 1 << v
        minimizing = first_mover is Player.DOMINATOR
        from_cache = (selected, minimizing) in self._cache
        before = self.nodes_expanded
        covered = self.covered_for(selected)
        value = self._value(selected, covered, minimizing)
        best_move = None
        if covered != self._full:
            want = None
            for v in range(self.board.n):
                if selected >> v & 1:
                    continue
                g = self._gain[v]
                if not g & ~covered:
                    continue
                child = 1 + self._value(selected | 1 << v, covered | g, not minimizing)
                if child == value and want is None:
                    want = v
            best_move = want
        return SolverResult(
            value=value,
            best_move=best_move,
            nodes_expanded=self.nodes_expanded - before,
            from_cache=from_cache,
        )

    def best_move_for(self, selected_mask: int, mover: Player) -> Optional[int]:
        """Lowest-index optimal move for ``mover``, or None at a terminal."""
        covered = self.covered_for(selected_mask)
        if covered == self._full:
            return None
        minimizing = mover is Player.DOMINATOR
        best_val = None
        best_v = None
        for v in range(self.board.n):
            if selected_mask >> v & 1:
                continue
            g = self._gain[v]
            if not g & ~covered:
                continue
            child = 1 + self._value(selected_mask | 1 << v, covered | g, not minimizing)
            if (
                best_val is None
                or (minimizing and child < best_val)
                or (not minimizing and child > best_val)
            ):
                best_val = child
                best_v = v
        return best_v


def solve(
    board: Board,
    preset: tuple[int, ...] | frozenset[int] | list[int] = (),
    first_mover: Player = Player.DOMINATOR,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_cache_entries: int = DEFAULT_MAX_CACHE,
) -> SolverResult:
    """One-shot solve with a fresh cache."""
    return MinimaxSolver(board, max_vertices, max_cache_entries).solve(
        preset, first_mover
    )


def game_value(board: Board, first_mover: Player = Player.DOMINATOR) -> int:
    return solve(board, (), first_mover).value


@dataclass
class ContinuationReport:
    board_n: int
    samples: int
    checked_monotonicity: int = 0
    checked_start_gap: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_continuation_principle(
    board: Board, samples: int, seed: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> ContinuationReport:
    """Spot-check two facts on random presets A and vertices v, w not in A:
    extending the preset never lengthens the remaining game
    (value(A + {v, w}) <= value(A + {w}), minimizer to move), and the
    minimizer-start value exceeds the maximizer-start value by at most one.
    A violation would mean a solver bug, so the report is expected clean."""
    solver = MinimaxSolver(board, max_vertices=max_vertices)
    rng = random.Random(seed)
    report = ContinuationReport(board_n=board.n, samples=samples)
    n = board.n
    for _ in range(samples):
        size = rng.randrange(0, n) if n > 1 else 0
        picks = rng.sample(range(n), min(size + 2, n))
        if len(picks) < 2:
            continue
        v, w = picks[0], picks[1]
        a_mask = 0
        for x in picks[2:]:
            a_mask |= 1 << x
        lhs = solver.value(a_mask | 1 << v | 1 << w, Player.DOMINATOR)
        rhs = solver.value(a_mask | 1 << w, Player.DOMINATOR)
        report.checked_monotonicity += 1
        if lhs > rhs:
            report.violations.append(
                f"continuation: value(A+{{{v},{w}}})={lhs} >"
                f" value(A+{{{w}}})={rhs} for A mask {a_mask:#x}"
            )
        e_start = solver.value(a_mask, Player.DOMINATOR)
        s_start = solver.value(a_mask, Player.STALLER)
        report.checked_start_gap += 1
        if e_start > s_start + 1:
            report.violations.append(
                f"start gap: minimizer-start {e_start} > maximizer-start"
                f" {s_start} + 1 for A mask {a_mask:#x}"
            )
    return report


def gamma_equals_tau_on_onh(
    g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES
) -> bool:
    """Does the graph game on g match the transversal game on its open
    neighborhood hypergraph, for both first movers? Expected always true."""
    h = open_neighborhood_hypergraph(g)
    gs = MinimaxSolver(g, max_vertices=max_vertices)
    hs = MinimaxSolver(h, max_vertices=max_vertices)
    return (
        gs.solve((), Player.DOMINATOR).value == hs.solve((), Player.DOMINATOR).value
        and gs.solve((), Player.STALLER).value == hs.solve((), Player.STALLER).value
    )
