"""Adversary policies, plus a solver-backed Dominator for cross-checks.

The optimal policies query the minimax solver from the current position, so
they realize the game value against an optimal opponent and never fall back
silently: an oversized board raises a resource error up front.
"""

from __future__ import annotations

import random
from typing import Optional

from ..engine import GameState, Player, legal_moves
from ..solver import DEFAULT_MAX_CACHE, DEFAULT_MAX_VERTICES, MinimaxSolver


class RandomStaller:
    """Uniform choice among legal moves, reproducible from the seed."""

    def __init__(self, board, seed: Optional[int] = None):
        self.name = f"random({seed})"
        self._rng = random.Random(seed)

    def choose(self, state: GameState) -> Optional[int]:
        moves = sorted(legal_moves(state))
        if not moves:
            return None
        return self._rng.choice(moves)


class GreedyStaller:
    """Plays a legal move newly dominating as few vertices as possible."""

    name = "greedy"

    def __init__(self, board, seed: Optional[int] = None):
        pass

    def choose(self, state: GameState) -> Optional[int]:
        best = None
        best_gain = None
        not_covered = ~state.covered_mask
        for v in sorted(legal_moves(state)):
            if state.is_graph_game:
                gain = (state.board.nbr_mask[v] & not_covered).bit_count()
            else:
                gain = (state.board.vertex_edges[v] & not_covered).bit_count()
            if best_gain is None or gain < best_gain:
                best, best_gain = v, gain
        return best


class OptimalStaller:
    """Maximizes the game length via the exact solver (lowest-index ties)."""

    def __init__(
        self,
        board,
        seed: Optional[int] = None,
        max_vertices: int = DEFAULT_MAX_VERTICES,
        max_cache_entries: int = DEFAULT_MAX_CACHE,
    ):
        self.name = "optimal"
        self._solver = MinimaxSolver(board, max_vertices, max_cache_entries)

    def choose(self, state: GameState) -> Optional[int]:
        return self._solver.best_move_for(state.selected_mask, Player.STALLER)


class OptimalDominator:
    """Solver-backed minimizer; useful as a baseline next to the strategies."""

    def __init__(
        self,
        board,
        max_vertices: int = DEFAULT_MAX_VERTICES,
        max_cache_entries: int = DEFAULT_MAX_CACHE,
    ):
        self.name = "optimal"
        self.accounting = None
        self._solver = MinimaxSolver(board, max_vertices, max_cache_entries)
        self._table = None

    def start(self, table) -> None:
        self._table = table

    def take_turn(self) -> int:
        state = self._table.state
        move = self._solver.best_move_for(state.selected_mask, Player.DOMINATOR)
        self._table.play(move, Player.DOMINATOR)
        self._table.repaint_all()
        return move

    def observe_staller_move(self, v: int) -> None:
        self._table.repaint_all()

    def finish(self) -> None:
        pass


def make_staller(kind: str, board, seed: Optional[int] = None, **solver_limits):
    """Factory for adversary names: ``random``, ``greedy`` or ``optimal``."""
    if kind == "random":
        return RandomStaller(board, seed)
    if kind == "greedy":
        return GreedyStaller(board, seed)
    if kind == "optimal":
        return OptimalStaller(board, seed, **solver_limits)
    raise ValueError(f"unknown adversary {kind!r}")
