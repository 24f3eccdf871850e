"""Paired-move sequences built on walk and branch-configuration detection.

Both Dominator strategies fight the midgame with the same toolbox: find a
structure (long walk, short circuit, terminal walk, high-degree white branch
point), play a prescribed vertex, and react to the adversary's reply with a
second prescribed move plus paints and marks. This module holds that shared
machinery as a mixin; the concrete strategies wire it into their phases.

A sequence is at most four moves (D, S, D, S). Its prescribed marks run when
it closes, after a catch-up repaint, so the rule gates see final colors. If a
prescribed move has become illegal (the adversary covered its targets), the
sequence closes early with whatever marks are still valid, and the turn falls
through to a fresh structure scan; accounting shortfalls surface through the
phase checks rather than crashes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..detectors import (
    DetectorError,
    Phase3Configuration,
    Walk,
    find_phase3_configuration,
    find_walk,
)
from ..engine import Player


class StrategyError(RuntimeError):
    """A phase's promised structure is missing while its end condition is
    unmet; indicates a precondition breach (or a bug), never random chance."""


#: close-mark kinds: ("deplete", v) named with fallback, ("deplete_opt", v)
#: silent skip, ("deplete_first", (v, w, ...)) first markable of the tuple,
#: ("depend", v), ("fallback", None) lex-least depletable vertex.
Mark = tuple[str, object]


@dataclass
class Pending:
    kind: str
    stage: str  # "reply" | "dmove" | "final"
    immediate: bool
    walk: Optional[Walk] = None
    config: Optional[Phase3Configuration] = None
    second_move: Optional[int] = None
    alternates: tuple[int, ...] = ()
    close_marks: list[Mark] = field(default_factory=list)


class WalkPhaseMixin:
    """Requires ``self.table``, ``self.acct``, ``self.pending`` and
    ``self._hard`` (raise on structural surprises vs. warn and play on)."""

    # -- small helpers -----------------------------------------------------

    def _fail(self, message: str) -> None:
        if self._hard:
            raise StrategyError(message)
        self.acct.warn(message)

    def _play(self, v: int, repaint: bool) -> int:
        self.table.play(v, Player.DOMINATOR)
        self.acct.note_dominator_move()
        if repaint:
            self.table.repaint_all()
        return v

    def _deplete_named(self, v: int) -> None:
        led = self.table.ledger
        if led.is_depleted(v):
            return
        if led.can_deplete(v):
            self.table.deplete(v)
            return
        self._deplete_fallback(f"deplete target {v} unavailable")

    def _deplete_fallback(self, reason: str) -> None:
        led = self.table.ledger
        for x in range(self.table.board.n):
            if led.can_deplete(x):
                self.table.deplete(x)
                self.acct.warn(f"{reason}; depleted {x} instead")
                return
        self.acct.warn(f"{reason}; no depletable vertex exists")

    def _deplete_optional(self, v: int) -> None:
        if self.table.ledger.can_deplete(v):
            self.table.deplete(v)

    def _depend_named(self, v: int) -> None:
        led = self.table.ledger
        if led.is_dependent(v):
            return
        if led.is_depleted(v) or led.white_neighbor_count(v) > 1:
            self.acct.warn(f"dependent mark on {v} unavailable")
            return
        self.table.depend(v)

    def _exec_marks(self, marks: list[Mark]) -> None:
        for kind, arg in marks:
            if kind == "deplete":
                self._deplete_named(arg)
            elif kind == "deplete_opt":
                self._deplete_optional(arg)
            elif kind == "deplete_first":
                for v in arg:
                    if self.table.ledger.can_deplete(v):
                        self.table.deplete(v)
                        break
                else:
                    self._deplete_fallback(
                        f"none of {arg} depletable"
                    )
            elif kind == "depend":
                self._depend_named(arg)
            elif kind == "fallback":
                self._deplete_fallback("sequence without a named mark")
            else:  # pragma: no cover - plan construction bug
                raise AssertionError(kind)

    def _close_sequence(self) -> None:
        pending = self.pending
        self.pending = None
        self.table.repaint_all()
        if pending is not None:
            self._exec_marks(pending.close_marks)

    def _fresh_whites(self, vertices: tuple[int, ...]) -> int:
        led = self.table.ledger
        return sum(1 for x in vertices if led.is_white(x))

    # -- structure scans ----------------------------------------------------

    def scan_walk_structures(self):
        """Long-walk phase scan: 6-walk, then 2-circuit, then terminal walk."""
        state, led = self.table.state, self.table.ledger
        walk = find_walk(state, led, 6, "walk")
        if walk is not None:
            return ("walk6", walk)
        walk = find_walk(state, led, 2, "circuit")
        if walk is not None:
            return ("circuit2", walk)
        walk = find_walk(state, led, 2, "terminal")
        if walk is not None:
            return ("terminal", walk)
        return None

    def scan_branch_structures(self):
        """Short-walk phase scan: terminal walk, branch config, 5-circuit."""
        state, led = self.table.state, self.table.ledger
        walk = find_walk(state, led, 2, "terminal")
        if walk is not None:
            return ("terminal", walk)
        try:
            cfg = find_phase3_configuration(state, led)
        except DetectorError as exc:
            self._fail(f"branch configuration binding failed: {exc}")
            cfg = None
        if cfg is not None:
            return ("config", cfg)
        walk = find_walk(state, led, 5, "walk")
        if walk is not None:
            if not self.table.board.has_edge(walk.v[4], walk.w[0]):
                self._fail(f"5-walk {walk} fails to close into a circuit")
            return ("circuit5", walk)
        return None

    # -- sequence starts -----------------------------------------------------

    def start_walk_sequence(self, found) -> int:
        """Play the opening move for a long-walk phase structure."""
        kind, walk = found
        if kind == "walk6":
            move = self._play(walk.v[0], repaint=False)
            self.pending = Pending(kind="walk6", stage="reply", immediate=False, walk=walk)
            return move
        # 2-circuit and terminal walk: one prescribed move, explicit paints,
        # one depletion; the reply just closes the pair.
        move = self._play(walk.v[0], repaint=False)
        self.table.paint(walk.w[0])
        self.table.paint(walk.w[1])
        self._deplete_named(walk.v[1])
        self.pending = Pending(kind="pair", stage="final", immediate=False)
        return move

    def start_branch_sequence(self, found) -> int:
        """Play the opening move for a short-walk phase structure."""
        kind, payload = found
        if kind == "terminal":
            walk = payload
            move = self._play(walk.v[0], repaint=True)
            self.table.paint(walk.w[0])
            self.table.paint(walk.w[1])
            self._deplete_named(walk.v[1])
            self.pending = Pending(kind="pair", stage="final", immediate=True)
            return move
        if kind == "circuit5":
            walk = payload
            move = self._play(walk.v[0], repaint=True)
            self.pending = Pending(kind="circ5", stage="reply", immediate=True, walk=walk)
            return move
        cfg: Phase3Configuration = payload
        openers = {
            "both_adjacent_w3": cfg.v1,
            "fig1_a_is_u": cfg.x2,
            "fig2_a_is_w3": cfg.x2,
            "distinct_y": cfg.v3,
            "fig3_a_is_y": cfg.v1,
        }
        move = self._play(openers[cfg.case], repaint=True)
        self.pending = Pending(
            kind="cfg_" + cfg.case, stage="reply", immediate=True, config=cfg
        )
        return move

    # -- adversary replies ----------------------------------------------------

    def plan_observe(self, v: int) -> None:
        """Advance the pending sequence on the adversary's move ``v``."""
        pending = self.pending
        assert pending is not None
        if pending.immediate:
            self.table.repaint_all()
        if pending.stage == "final":
            self._close_sequence()
            return
        assert pending.stage == "reply"
        handler = getattr(self, "_reply_" + pending.kind)
        handler(pending, v)
        if pending.stage == "close_now":
            self._close_sequence()
        # otherwise stage moved to "dmove": our next turn plays the follow-up

    def plan_dominator_move(self) -> Optional[int]:
        """Play the sequence's second prescribed move; None if it fell apart
        (marks are still executed and the caller picks a fresh move)."""
        pending = self.pending
        assert pending is not None and pending.stage == "dmove"
        for cand in (pending.second_move, *pending.alternates):
            if cand is not None and self.table.is_legal(cand):
                move = self._play(cand, repaint=pending.immediate)
                pending.stage = "final"
                return move
        self.acct.warn(
            f"sequence {pending.kind}: follow-up {pending.second_move} illegal"
        )
        self._close_sequence()
        return None

    # -- per-structure reply tables --------------------------------------------

    def _reply_walk6(self, pending: Pending, x: int) -> None:
        w, v = pending.walk.w, pending.walk.v
        board = self.table.board
        if board.has_edge(x, w[2]):
            pending.second_move = v[3]
            pending.close_marks = [("deplete", v[2])]
        elif board.has_edge(x, w[3]):
            pending.second_move = v[4]
            pending.close_marks = [("fallback", None)]
        else:
            pending.second_move = v[2]
            pending.close_marks = [("deplete", v[1])]
        pending.stage = "dmove"

    def _reply_circ5(self, pending: Pending, x: int) -> None:
        v = pending.walk.v
        if x == v[1]:
            pending.second_move = v[3]
            pending.close_marks = [("deplete", v[2]), ("deplete", v[4])]
            pending.stage = "dmove"
        elif x == v[2]:
            pending.close_marks = [("deplete", v[1])]
            pending.stage = "close_now"
        elif x == v[3]:
            pending.close_marks = [("deplete", v[4])]
            pending.stage = "close_now"
        else:
            pending.second_move = v[2]
            pending.close_marks = [("deplete", v[1])]
            pending.stage = "dmove"

    def _reply_cfg_both_adjacent_w3(self, pending: Pending, z: int) -> None:
        cfg = pending.config
        board = self.table.board
        if z == cfg.v2:
            pending.close_marks = [
                ("depend", cfg.x1),
                ("depend", cfg.x2),
                ("depend", cfg.v3),
            ]
            pending.stage = "close_now"
            return
        marks: list[Mark] = []
        if board.has_edge(z, cfg.w2):
            marks.append(("deplete", cfg.v2))
        if board.has_edge(z, cfg.w3):
            marks.append(("deplete", cfg.v3))
        if marks:
            pending.close_marks = marks
            pending.stage = "close_now"
            return
        pending.second_move = cfg.x2
        pending.close_marks = [("deplete", cfg.v3), ("deplete", cfg.v2)]
        pending.stage = "dmove"

    def _reply_cfg_fig1_a_is_u(self, pending: Pending, z: int) -> None:
        cfg = pending.config
        board = self.table.board
        if z == cfg.x1:
            pending.close_marks = [
                ("depend", cfg.v1),
                ("depend", cfg.v2),
                ("depend", cfg.v3),
                ("depend", cfg.z),
            ]
            pending.stage = "close_now"
            return
        if board.has_edge(z, cfg.u):
            pending.close_marks = [("deplete_first", (cfg.v2, cfg.z))]
            pending.stage = "close_now"
            return
        # play v1 or v3, preferring the one whose white witness is untouched
        first, second = cfg.v1, cfg.v3
        if self._fresh_whites((cfg.w3,)) > self._fresh_whites((cfg.w1,)):
            first, second = cfg.v3, cfg.v1
        pending.second_move = first
        pending.alternates = (second,)
        pending.close_marks = [("deplete", cfg.v2), ("deplete", cfg.z)]
        pending.stage = "dmove"

    def _reply_cfg_fig2_a_is_w3(self, pending: Pending, z: int) -> None:
        cfg = pending.config
        board = self.table.board
        if board.has_edge(z, cfg.u):
            if z != cfg.v2:
                pending.close_marks = [("deplete", cfg.v2)]
                pending.stage = "close_now"
            else:
                pending.second_move = cfg.x1
                pending.close_marks = [
                    ("deplete", cfg.v1),
                    ("deplete", cfg.v3),
                    ("deplete", cfg.z),
                ]
                pending.stage = "dmove"
            return
        if board.has_edge(z, cfg.w3):
            if z != cfg.z:
                pending.close_marks = [("deplete", cfg.z)]
                pending.stage = "close_now"
            else:
                pending.second_move = cfg.v1
                pending.close_marks = [
                    ("deplete", cfg.v2),
                    ("deplete", cfg.v3),
                    ("deplete_opt", cfg.x1),
                ]
                pending.stage = "dmove"
            return
        pending.second_move = cfg.v3
        pending.close_marks = [("deplete", cfg.v2), ("deplete", cfg.z)]
        pending.stage = "dmove"

    def _reply_cfg_distinct_y(self, pending: Pending, z: int) -> None:
        cfg = pending.config
        fresh1 = self._fresh_whites((cfg.w1, cfg.y1))
        fresh2 = self._fresh_whites((cfg.w2, cfg.y2))
        if fresh1 >= fresh2:
            pending.second_move, pending.alternates = cfg.x1, (cfg.x2,)
            pending.close_marks = [("deplete", cfg.v1), ("deplete_opt", cfg.v2)]
        else:
            pending.second_move, pending.alternates = cfg.x2, (cfg.x1,)
            pending.close_marks = [("deplete", cfg.v2), ("deplete_opt", cfg.v1)]
        pending.stage = "dmove"

    def _reply_cfg_fig3_a_is_y(self, pending: Pending, z: int) -> None:
        cfg = pending.config
        board = self.table.board
        if z == cfg.x1:
            pending.close_marks = [
                ("depend", cfg.v2),
                ("depend", cfg.v3),
                ("depend", cfg.x2),
                ("depend", cfg.x3),
            ]
            self.acct.separation.setdefault(
                cfg.u, frozenset((cfg.v1, cfg.v2, cfg.v3))
            )
            self.acct.separation.setdefault(
                cfg.y, frozenset((cfg.x1, cfg.x2, cfg.x3))
            )
            pending.stage = "close_now"
            return
        if board.has_edge(z, cfg.y):
            pending.close_marks = [("deplete", cfg.x1)]
            pending.stage = "close_now"
            return
        if self._fresh_whites((cfg.w2,)) >= self._fresh_whites((cfg.w3,)):
            pending.second_move, pending.alternates = cfg.x2, (cfg.x3,)
        else:
            pending.second_move, pending.alternates = cfg.x3, (cfg.x2,)
        pending.close_marks = [("deplete", cfg.x1)]
        pending.stage = "dmove"
