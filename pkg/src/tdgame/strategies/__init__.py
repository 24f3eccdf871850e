"""Dominator strategies, adversaries and the play loop."""

from __future__ import annotations

from typing import Optional

from ..graphs import Graph
from .accounting import (
    CheckResult,
    GameTrace,
    PhaseAccounting,
    PhaseSnapshot,
    general_bound,
    min_deg2_bound,
)
from .mindeg2 import MinDegreeTwoDominator
from .play import Table, bound_verdicts, play_game
from .reductions import MoveLift, reduce_duplicate_leaves
from .staller import (
    GreedyStaller,
    OptimalDominator,
    OptimalStaller,
    RandomStaller,
    make_staller,
)
from .walkplay import StrategyError


def make_dominator(kind: str, board: Graph, **kwargs):
    """Factory for Dominator policy names: ``mindeg2``, ``general``,
    ``optimal``."""
    if kind == "mindeg2":
        return MinDegreeTwoDominator(board, **kwargs)
    if kind == "general":
        from .general import GeneralDominator

        return GeneralDominator(board, **kwargs)
    if kind == "optimal":
        return OptimalDominator(board, **kwargs)
    raise ValueError(f"unknown dominator policy {kind!r}")


__all__ = [
    "CheckResult",
    "GameTrace",
    "GreedyStaller",
    "MinDegreeTwoDominator",
    "MoveLift",
    "OptimalDominator",
    "OptimalStaller",
    "PhaseAccounting",
    "PhaseSnapshot",
    "RandomStaller",
    "StrategyError",
    "Table",
    "bound_verdicts",
    "general_bound",
    "make_dominator",
    "make_staller",
    "min_deg2_bound",
    "play_game",
    "reduce_duplicate_leaves",
]
