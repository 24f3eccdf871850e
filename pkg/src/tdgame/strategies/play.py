"""Alternating play between a Dominator policy and an adversary.

The Dominator policy owns the observer bookkeeping: it holds a
:class:`Table` (game state plus ledger) and performs its paints and marks
there. The loop keeps an authoritative outer state, feeds Staller moves to
the policy, and assembles the trace with bound verdicts at the end.
"""

from __future__ import annotations

from typing import Optional, Union

from ..engine import GameState, Player, apply_move, is_terminal, new_game
from ..graphs import Graph, classify_vertices, encode_graph6
from ..ledger import Ledger
from .accounting import GameTrace, general_bound, min_deg2_bound


class Table:
    """A live game state and its ledger, with the mutators policies use."""

    def __init__(self, board: Graph, leaves=()):
        self.board = board
        self.state: GameState = new_game(board)
        self.ledger = Ledger(board, leaves)

    def play(self, v: int, mover: Player) -> None:
        self.state = apply_move(self.state, v)
        self.ledger.note_move(self.state, v, mover)

    def paint(self, v: int) -> None:
        self.ledger.paint_black(self.state, v)

    def repaint_all(self) -> list[int]:
        return self.ledger.paint_all_dominated(self.state)

    def deplete(self, v: int) -> None:
        self.ledger.mark_depleted(self.state, v)

    def depend(self, v: int) -> None:
        self.ledger.mark_dependent(self.state, v)

    def is_selected(self, v: int) -> bool:
        return self.state.is_selected(v)

    def is_legal(self, v: int) -> bool:
        from ..engine import is_legal

        return is_legal(self.state, v)

    def done(self) -> bool:
        return is_terminal(self.state)


def bound_verdicts(board: Graph, move_count: int) -> dict:
    """The two bound checks, each tagged with whether it applies to the
    board (no isolated vertices/edges for the 3/4 bound; minimum degree two
    for the 5/7 bound)."""
    no_isolated = not board.isolated_vertices()
    verdicts = {}
    applicable = no_isolated and not board.isolated_edges() and board.n > 0
    bound = general_bound(board.n)
    verdicts["three_quarters"] = {
        "applicable": applicable,
        "bound": bound,
        "pass": (move_count <= bound) if applicable else True,
    }
    applicable2 = board.n > 0 and board.min_degree() >= 2
    bound2 = min_deg2_bound(board.n)
    verdicts["min_deg2"] = {
        "applicable": applicable2,
        "bound": bound2,
        "pass": (move_count <= bound2) if applicable2 else True,
    }
    return verdicts


def play_game(
    board: Graph,
    d_policy: Union[str, object],
    s_policy: Union[str, object],
    seed: Optional[int] = None,
) -> GameTrace:
    """Play one full game (Dominator first) and return the trace."""
    from . import make_dominator, make_staller  # local import to avoid a cycle

    dominator = (
        make_dominator(d_policy, board) if isinstance(d_policy, str) else d_policy
    )
    staller = (
        make_staller(s_policy, board, seed) if isinstance(s_policy, str) else s_policy
    )

    outer = new_game(board)
    table = Table(board, leaves=classify_vertices(board).leaves)
    dominator.start(table)
    moves: list[dict] = []
    while not is_terminal(outer):
        if outer.mover is Player.DOMINATOR:
            v = dominator.take_turn()
            if table.state.selected != outer.selected + (v,):
                raise RuntimeError(
                    "policy table out of sync with the game"
                    f" (policy={table.state.selected}, game={outer.selected + (v,)})"
                )
        else:
            v = staller.choose(outer)
            if v is None:
                raise RuntimeError("adversary returned no move in a live game")
        mover = outer.mover
        outer = apply_move(outer, v)
        moves.append(
            {
                "t": outer.t,
                "mover": mover.value,
                "vertex": v,
                "covered_after": outer.covered_mask.bit_count(),
            }
        )
        if mover is Player.STALLER:
            dominator.observe_staller_move(v)
    dominator.finish()

    acct = getattr(dominator, "accounting", None)
    events = dominator.export_events() if hasattr(dominator, "export_events") else list(
        table.ledger.events
    )
    final_counters = (
        dominator.final_counters()
        if hasattr(dominator, "final_counters")
        else table.ledger.counters()
    )
    warnings = list(acct.warnings) if acct else []
    structural = bool(acct.structural_warnings) if acct else False
    trace = GameTrace(
        graph6=encode_graph6(board),
        n=board.n,
        dominator=getattr(dominator, "name", str(d_policy)),
        staller=getattr(staller, "name", str(s_policy)),
        seed=seed,
        moves=moves,
        events=events,
        final_counters=final_counters,
        accounting=acct,
        bounds=bound_verdicts(board, len(moves)),
        warnings=warnings,
        structural_warning=structural,
        reduced_n=getattr(dominator, "reduced_n", None),
    )
    return trace
