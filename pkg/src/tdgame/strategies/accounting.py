"""Per-game bookkeeping shared by the Dominator strategies and the harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..ledger import Counters, LedgerEvent


@dataclass
class CheckResult:
    """Outcome of one per-phase guarantee evaluated at its checkpoint."""

    phase: int
    name: str
    passed: bool
    detail: str = ""
    severity: str = "error"

    def to_json_dict(self) -> dict:
        return {
            "phase": self.phase,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "severity": self.severity,
        }


@dataclass
class PhaseSnapshot:
    index: int
    t_start: int
    t_end: int
    counters: tuple[int, int, int, int, int, int]
    extras: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "counters": list(self.counters),
            "extras": {k: sorted(v) if isinstance(v, (set, frozenset)) else v
                       for k, v in self.extras.items()},
        }


@dataclass
class PhaseAccounting:
    """Move-type counters, phase boundaries and check results for one game."""

    strategy: str
    phase: int = 1
    t_marks: dict[int, int] = field(default_factory=dict)
    dominator_moves: dict[int, int] = field(default_factory=dict)
    M: int = 0
    r_F: int = 0
    r_P: int = 0
    a: int = 0
    b: int = 0
    m1: int = 0
    m2: int = 0
    m3: int = 0
    p: int = 0
    q: int = 0
    reaction_flag: bool = False
    separation: dict[int, frozenset[int]] = field(default_factory=dict)
    C_snapshot: Optional[frozenset[int]] = None
    nu_at_phase3: int = 0
    chi_at_phase3: int = 0
    checks: list[CheckResult] = field(default_factory=list)
    snapshots: list[PhaseSnapshot] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    best_effort: bool = False
    structural_warnings: list[str] = field(default_factory=list)

    def t_of(self, phase: int) -> int:
        return self.t_marks.get(phase, 0)

    def duration(self, phase: int) -> int:
        prev = self.t_marks.get(phase - 1, 0) if phase > 1 else 0
        return self.t_marks.get(phase, prev) - prev

    def note_dominator_move(self) -> None:
        self.dominator_moves[self.phase] = self.dominator_moves.get(self.phase, 0) + 1

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(
            CheckResult(
                phase=self.phase,
                name=name,
                passed=bool(passed),
                detail=detail,
                severity="warning" if self.best_effort else "error",
            )
        )

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def failed_checks(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


@dataclass
class GameTrace:
    """A finished game: moves, ledger events, phase records and verdicts.

    Replayable: reapplying ``moves`` to the board reproduces each recorded
    covered-set size and the final counters.
    """

    graph6: str
    n: int
    dominator: str
    staller: str
    seed: Optional[int]
    moves: list[dict]
    events: list[LedgerEvent]
    final_counters: Counters
    accounting: Optional[PhaseAccounting]
    bounds: dict
    warnings: list[str] = field(default_factory=list)
    structural_warning: bool = False
    reduced_n: Optional[int] = None

    @property
    def move_count(self) -> int:
        return len(self.moves)

    @property
    def all_verdicts_pass(self) -> bool:
        return all(
            entry["pass"] for entry in self.bounds.values() if entry["applicable"]
        )

    def to_json_dict(self) -> dict:
        acct = self.accounting
        return {
            "schema": "tdgame-trace/1",
            "board_graph6": self.graph6,
            "n": self.n,
            "reduced_n": self.reduced_n,
            "dominator": self.dominator,
            "staller": self.staller,
            "seed": self.seed,
            "moves": self.moves,
            "events": [e.to_json_dict() for e in self.events],
            "final_counters": list(self.final_counters.as_tuple()),
            "phases": [s.to_json_dict() for s in acct.snapshots] if acct else [],
            "checks": [c.to_json_dict() for c in acct.checks] if acct else [],
            "move_type_counts": {
                k: getattr(acct, k)
                for k in ("M", "r_F", "r_P", "a", "b", "m1", "m2", "m3", "p", "q")
            }
            if acct
            else {},
            "bounds": self.bounds,
            "warnings": self.warnings,
            "structural_warning": self.structural_warning,
        }


def general_bound(n: int) -> int:
    """Largest move count allowed on an n-vertex board without isolated
    vertices or edges."""
    return 3 * n // 4


def min_deg2_bound(n: int) -> int:
    """Largest move count allowed when every vertex has degree >= 2."""
    return (5 * n + 5) // 7
