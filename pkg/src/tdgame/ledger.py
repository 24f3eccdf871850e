"""Observer-side bookkeeping layered on top of a graph game.

Every vertex carries a paint (white or black) and at most one mark (depleted
or dependent). The ledger never chooses anything; it validates each paint and
mark against the fixed rule set and keeps an event log with counter snapshots:

* an undominated vertex must stay white (so black requires domination),
* black is permanent,
* depleted requires: never played, and no white neighbors (checked against
  paint, not raw domination, since strategies may delay painting),
* dependent requires: at most one white neighbor,
* marks are permanent and mutually exclusive,
* a depleted vertex must never be played afterwards.

Counters: ``beta`` black vertices, ``delta`` depleted, ``lambda_`` leaves
played or depleted, ``sigma`` dependent, ``nu`` undominated vertices with at
least one dependent neighbor (union semantics), ``chi = sigma - nu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .engine import GameState, Player
from .graphs import Graph


class RuleViolation(RuntimeError):
    """A paint or mark (or a play of a depleted vertex) broke the rules."""


@dataclass(frozen=True)
class Counters:
    beta: int
    delta: int
    lambda_: int
    sigma: int
    nu: int

    @property
    def chi(self) -> int:
        return self.sigma - self.nu

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.beta, self.delta, self.lambda_, self.sigma, self.nu, self.chi)


@dataclass(frozen=True)
class LedgerEvent:
    t: int                      # move count when the event was recorded
    kind: str                   # "move" | "paint" | "deplete" | "depend"
    vertex: int
    mover: Optional[str] = None  # for "move" events
    counters: Optional[tuple[int, int, int, int, int, int]] = None

    def to_json_dict(self) -> dict:
        d = {"t": self.t, "kind": self.kind, "vertex": self.vertex}
        if self.mover is not None:
            d["mover"] = self.mover
        if self.counters is not None:
            d["counters"] = list(self.counters)
        return d


class Ledger:
    """Single-writer per game; see module docstring for the rule set."""

    def __init__(self, board: Graph, leaves: Iterable[int] = ()):
        self.board = board
        self.leaf_mask = 0
        for v in leaves:
            self.leaf_mask |= 1 << v
        self.black_mask = 0
        self.depleted_mask = 0
        self.dependent_mask = 0
        self.played_mask = 0
        self.covered_mask = 0
        self.t = 0
        self.events: list[LedgerEvent] = []

    # -- queries -----------------------------------------------------------

    def is_black(self, v: int) -> bool:
        return bool(self.black_mask >> v & 1)

    def is_white(self, v: int) -> bool:
        return not self.black_mask >> v & 1

    def white_mask(self) -> int:
        return ~self.black_mask & ((1 << self.board.n) - 1)

    def white_neighbors(self, v: int) -> list[int]:
        mask = self.board.nbr_mask[v] & self.white_mask()
        return [w for w in self.board.adj[v] if mask >> w & 1]

    def white_neighbor_count(self, v: int) -> int:
        return (self.board.nbr_mask[v] & self.white_mask()).bit_count()

    def is_depleted(self, v: int) -> bool:
        return bool(self.depleted_mask >> v & 1)

    def is_dependent(self, v: int) -> bool:
        return bool(self.dependent_mask >> v & 1)

    def is_played(self, v: int) -> bool:
        return bool(self.played_mask >> v & 1)

    def can_deplete(self, v: int) -> bool:
        return (
            not self.is_played(v)
            and not self.is_depleted(v)
            and not self.is_dependent(v)
            and not self.board.nbr_mask[v] & self.white_mask()
        )

    # -- events ------------------------------------------------------------

    def _log(self, kind: str, vertex: int, mover: Optional[Player] = None) -> None:
        self.events.append(
            LedgerEvent(
                t=self.t,
                kind=kind,
                vertex=vertex,
                mover=mover.value if mover is not None else None,
                counters=self.counters().as_tuple(),
            )
        )

    def note_move(self, state_after: GameState, v: int, mover: Player) -> None:
        """Record a played move. Playing a depleted vertex is a rule breach."""
        if self.is_depleted(v):
            raise RuleViolation(f"depleted vertex {v} was played")
        self.played_mask |= 1 << v
        self.covered_mask = state_after.covered_mask
        self.t += 1
        self._log("move", v, mover)

    def paint_black(self, state: GameState, v: int) -> None:
        """Paint a dominated vertex black. No-op if already black."""
        self.covered_mask |= state.covered_mask
        if self.is_black(v):
            return
        if not self.covered_mask >> v & 1:
            raise RuleViolation(
                f"cannot paint {v} black: it is not totally dominated"
            )
        self.black_mask |= 1 << v
        self._log("paint", v)

    def paint_all_dominated(self, state: GameState) -> list[int]:
        """Paint every dominated-but-white vertex black; returns them."""
        self.covered_mask |= state.covered_mask
        todo = self.covered_mask & self.white_mask()
        painted = []
        v = 0
        while todo >> v:
            if todo >> v & 1:
                self.black_mask |= 1 << v
                self._log("paint", v)
                painted.append(v)
            v += 1
        return painted

    def mark_depleted(self, state: GameState, v: int) -> None:
        """No-op if already depleted."""
        self.covered_mask |= state.covered_mask
        if self.is_depleted(v):
            return
        if self.is_dependent(v):
            raise RuleViolation(f"cannot deplete {v}: already marked dependent")
        if self.is_played(v):
            raise RuleViolation(f"cannot deplete {v}: it has been played")
        whites = self.board.nbr_mask[v] & self.white_mask()
        if whites:
            raise RuleViolation(
                f"cannot deplete {v}: white neighbors"
                f" {[w for w in self.board.adj[v] if whites >> w & 1]}"
            )
        self.depleted_mask |= 1 << v
        self._log("deplete", v)

    def mark_dependent(self, state: GameState, v: int) -> None:
        """No-op if already dependent."""
        self.covered_mask |= state.covered_mask
        if self.is_dependent(v):
            return
        if self.is_depleted(v):
            raise RuleViolation(f"cannot mark {v} dependent: already depleted")
        count = self.white_neighbor_count(v)
        if count > 1:
            raise RuleViolation(
                f"cannot mark {v} dependent: {count} white neighbors"
            )
        self.dependent_mask |= 1 << v
        self._log("depend", v)

    # -- counters ----------------------------------------------------------

    def counters(self) -> Counters:
        full = (1 << self.board.n) - 1
        undominated = ~self.covered_mask & full
        nu = 0
        m = undominated
        while m:
            v = (m & -m).bit_length() - 1
            if self.board.nbr_mask[v] & self.dependent_mask:
                nu += 1
            m &= m - 1
        return Counters(
            beta=self.black_mask.bit_count(),
            delta=self.depleted_mask.bit_count(),
            lambda_=(self.leaf_mask & (self.played_mask | self.depleted_mask)).bit_count(),
            sigma=self.dependent_mask.bit_count(),
            nu=nu,
        )


# Spec-style functional aliases over the method API.

def paint_black(ledger: Ledger, s: GameState, v: int) -> Ledger:
    ledger.paint_black(s, v)
    return ledger


def mark_depleted(ledger: Ledger, s: GameState, v: int) -> Ledger:
    ledger.mark_depleted(s, v)
    return ledger


def mark_dependent(ledger: Ledger, s: GameState, v: int) -> Ledger:
    ledger.mark_dependent(s, v)
    return ledger


def counters(ledger: Ledger) -> Counters:
    return ledger.counters()
