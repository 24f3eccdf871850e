"""Four-phase Dominator strategy for boards with minimum degree two.

Phase 1 plays out of a largest white-separable set, painting the witness
triple black each turn, until no unplayed vertex keeps three white neighbors.
Phase 2 burns down 6-walks, 2-circuits and terminal walks in paired-move
sequences; phase 3 handles terminal walks, high-degree white branch points
and 5-circuits. By then every vertex with two white neighbors sits in a 3- or
4-circuit and phase 4 answers each adversary move in kind (opposite circuit
vertex, or another single-white vertex) until the board is dominated.

Every phase boundary records its guaranteed inequalities as check results;
with minimum degree two these are hard guarantees, so failures are errors,
not warnings.
"""

from __future__ import annotations

from typing import Optional

from ..detectors import find_circuit_through, max_white_separable_set, single_white_vertices
from ..engine import Player, legal_moves
from ..graphs import Graph
from ..ledger import Counters
from .accounting import PhaseAccounting, PhaseSnapshot
from .walkplay import StrategyError, WalkPhaseMixin


class MinDegreeTwoDominator(WalkPhaseMixin):
    name = "mindeg2"

    def __init__(self, board: Graph, hard_checks: bool = True):
        if board.n == 0 or board.min_degree() < 2:
            raise ValueError("this strategy requires minimum degree >= 2")
        self.board = board
        self._hard = hard_checks

    # -- lifecycle ----------------------------------------------------------

    def start(self, table) -> None:
        self.table = table
        self.acct = PhaseAccounting(strategy=self.name)
        self.pending = None
        self.phase = 1
        self._found = None
        self._counters_at: dict[int, Counters] = {0: table.ledger.counters()}
        self._p4_reaction: Optional[tuple] = None
        self._p4_arbitrary_used = False
        self._p4_containment_ok = True
        cert = max_white_separable_set(table.state, table.ledger)
        self.acct.M = cert.size
        # Live copy of the certificate: the separation shrinks by at most one
        # member per move as long as adversary paints are charged to the
        # mover's own triple where possible.
        self._p1_members: list[int] = list(cert.members)
        self._p1_triples: dict[int, set[int]] = {
            v: set(t) for v, t in cert.triples.items()
        }

    def take_turn(self) -> int:
        if self.pending is not None:
            assert self.pending.stage == "dmove", "unexpected pending stage on our turn"
            move = self.plan_dominator_move()
            if move is not None:
                return move
        for _ in range(4 * self.board.n + 8):
            self._advance_phases()
            move = self._phase_move()
            if move is not None:
                return move
        raise StrategyError("turn loop made no progress")

    def observe_staller_move(self, v: int) -> None:
        self.table.play(v, Player.STALLER)
        if self.pending is not None:
            self.plan_observe(v)
            return
        if self.phase == 1:
            self._phase1_observe(v)
        elif self.phase == 4:
            self._phase4_observe(v)
        else:
            self._fail("adversary moved in a walk phase without a live sequence")

    def finish(self) -> None:
        # The final move closes whatever sequence was open: catch the colors
        # up (everything is dominated now) and run any prescribed marks.
        self.table.repaint_all()
        if self.pending is not None:
            self._close_sequence()
        if self._p4_reaction is not None and self._p4_reaction[0] == "circuit":
            walk = self._p4_reaction[1]
            if walk.k == 4:
                self._exec_marks([("deplete", walk.v[1]), ("deplete", walk.v[3])])
            else:
                self._exec_marks([("deplete", walk.v[2])])
            self._p4_reaction = None
        while self.phase <= 4:
            self._close_phase(self.phase, by_game_end=True)
            self.phase += 1
            self.acct.phase = min(self.phase, 4)

    def export_events(self):
        return list(self.table.ledger.events)

    def final_counters(self) -> Counters:
        return self.table.ledger.counters()

    @property
    def accounting(self) -> PhaseAccounting:
        return self.acct

    # -- phase control --------------------------------------------------------

    def _advance_phases(self) -> None:
        while True:
            if self.phase == 1:
                if not self._phase1_over():
                    return
                self._close_phase(1)
                self.phase = self.acct.phase = 2
                self.table.repaint_all()  # catch-up paint entering the walk phase
                continue
            if self.phase == 2:
                self.table.repaint_all()
                self._found = self.scan_walk_structures()
                if self._found is not None:
                    return
                self._close_phase(2)
                self.phase = self.acct.phase = 3
                continue
            if self.phase == 3:
                self.table.repaint_all()
                self._found = self.scan_branch_structures()
                if self._found is not None:
                    return
                self._close_phase(3)
                self.phase = self.acct.phase = 4
                continue
            return

    def _phase1_over(self) -> bool:
        st, led = self.table.state, self.table.ledger
        white = led.white_mask()
        for v in range(self.board.n):
            if st.selected_mask >> v & 1:
                continue
            if (self.board.nbr_mask[v] & white).bit_count() >= 3:
                return False
        return True

    def _phase_move(self) -> Optional[int]:
        if self.phase == 1:
            return self._phase1_move()
        if self.phase in (2, 3):
            found, self._found = self._found, None
            if found is None:
                raise StrategyError(f"phase {self.phase}: structure vanished")
            if self.phase == 2:
                return self.start_walk_sequence(found)
            return self.start_branch_sequence(found)
        return self._phase4_move()

    # -- phase 1 ---------------------------------------------------------------

    def _phase1_move(self) -> Optional[int]:
        if not self._p1_members:
            # The live certificate ran dry but some vertex still holds three
            # whites: rebuild and continue (the duration floor is already
            # banked against the game-start certificate).
            cert = max_white_separable_set(self.table.state, self.table.ledger)
            if cert.size == 0:
                raise StrategyError("phase 1 active but no separable vertex found")
            self._p1_members = list(cert.members)
            self._p1_triples = {v: set(t) for v, t in cert.triples.items()}
        for v in self._p1_members:
            if self.table.is_legal(v):
                triple = self._p1_triples.pop(v)
                self._p1_members.remove(v)
                move = self._play(v, repaint=False)
                for x in sorted(triple):
                    self.table.paint(x)
                return move
        # Every certified vertex already has a fully dominated neighborhood;
        # catch the colors up (their triples are paintable) and re-evaluate.
        self.acct.warn("phase 1: separable vertices unplayable, syncing colors")
        v = self._p1_members.pop(0)
        for x in sorted(self._p1_triples.pop(v)):
            if self.table.ledger.is_white(x):
                self.table.paint(x)
        return None

    def _phase1_observe(self, z: int) -> None:
        """Paint one neighbor of the adversary's vertex, charging the paint
        to z's own witness triple when z sits in the live certificate, and
        patching any other member whose triple the paint touched."""
        led = self.table.ledger
        if z in self._p1_triples:
            triple = self._p1_triples.pop(z)
            self._p1_members.remove(z)
            whites = sorted(x for x in triple if led.is_white(x))
            if whites:
                self.table.paint(whites[0])
                return
            self.acct.warn(f"phase 1: triple of {z} already painted")
        w = None
        for x in sorted(self.table.board.adj[z]):
            if led.is_white(x):
                w = x
                break
        if w is None:
            return
        self.table.paint(w)
        owner = next((m for m, t in self._p1_triples.items() if w in t), None)
        if owner is None:
            return
        used = set().union(*self._p1_triples.values())
        for r in sorted(self.table.board.adj[owner]):
            if led.is_white(r) and r not in used:
                self._p1_triples[owner].discard(w)
                self._p1_triples[owner].add(r)
                return
        self._p1_members.remove(owner)
        del self._p1_triples[owner]

    # -- phase 4 ---------------------------------------------------------------

    def _phase4_move(self) -> Optional[int]:
        if self._p4_reaction is not None:
            reaction, self._p4_reaction = self._p4_reaction, None
            if reaction[0] == "circuit":
                move = self._p4_circuit_reply(reaction[1])
                if move is not None:
                    self._p4_check_containment()
                    return move
        move = self._p4_fresh_move()
        if move is not None:
            self._p4_check_containment()
        return move

    def _p4_fresh_move(self) -> Optional[int]:
        led = self.table.ledger
        for u in single_white_vertices(led):
            if self.table.is_legal(u):
                move = self._play(u, repaint=False)
                self._p4_single_white_play(u)
                return move
        for u in range(self.board.n):
            if led.white_neighbor_count(u) == 2 and self.table.is_legal(u):
                move = self._play(u, repaint=False)
                if self._p4_arbitrary_used:
                    self.acct.warn("second unpaired endgame move")
                self._p4_arbitrary_used = True
                return move
        for u in sorted(legal_moves(self.table.state)):
            self.acct.warn(f"endgame fallback move {u}")
            return self._play(u, repaint=False)
        return None

    def _p4_single_white_play(self, u: int) -> None:
        """Bookkeeping after either player plays a single-white vertex: paint
        its white, then either bank the dependent-neighbor discount or mark a
        fresh depletion next to the painted vertex."""
        led = self.table.ledger
        if self.acct.C_snapshot is not None and u not in self.acct.C_snapshot:
            self.acct.warn(f"single-white vertex {u} outside the endgame snapshot")
        self.acct.b += 1
        ws = led.white_neighbors(u)
        if len(ws) != 1:
            self.acct.warn(f"endgame vertex {u} has {len(ws)} whites, expected 1")
            return
        w = ws[0]
        self.table.paint(w)
        others = sorted(set(self.board.adj[w]) - {u})
        if any(led.is_dependent(x) for x in others):
            return
        for x in others:
            if led.can_deplete(x):
                self.table.deplete(x)
                return
        self.acct.warn(f"endgame: nothing to mark after painting {w}")

    def _p4_observe(self, v: int) -> None:  # pragma: no cover - alias
        self._phase4_observe(v)

    def _phase4_observe(self, v: int) -> None:
        led = self.table.ledger
        wc = led.white_neighbor_count(v)
        if wc == 1:
            self._p4_single_white_play(v)
            self._p4_reaction = ("single", None)
        elif wc == 2:
            walk = find_circuit_through(self.table.state, led, v, (3, 4))
            if walk is None:
                self._fail(
                    f"endgame: {v} has two whites but sits in no 3- or 4-circuit"
                )
                self._p4_reaction = ("single", None)
            else:
                self.acct.a += 1
                self._p4_reaction = ("circuit", walk)
        else:
            self._fail(f"endgame: adversary played {v} with {wc} white neighbors")
            self._p4_reaction = ("single", None)
        self._p4_check_containment()

    def _p4_circuit_reply(self, walk) -> Optional[int]:
        w, v = walk.w, walk.v
        if walk.k == 4:
            target, marks = v[2], [("deplete", v[1]), ("deplete", v[3])]
        else:
            target, marks = v[1], [("deplete", v[2])]
        move = None
        if self.table.is_legal(target):
            move = self._play(target, repaint=False)
        else:
            self.acct.warn(f"endgame circuit reply {target} illegal")
        led = self.table.ledger
        for x in w:
            if led.is_white(x) and self.table.state.covered_mask >> x & 1:
                self.table.paint(x)
        self._exec_marks(marks)
        return move

    def _p4_check_containment(self) -> None:
        if not self._p4_containment_ok or self.acct.C_snapshot is None:
            return
        now = frozenset(single_white_vertices(self.table.ledger))
        if not now <= self.acct.C_snapshot:
            self._p4_containment_ok = False

    # -- phase closes ------------------------------------------------------------

    def _close_phase(self, phase: int, by_game_end: bool = False) -> None:
        t = self.table.state.t
        self.acct.t_marks[phase] = t
        led = self.table.ledger
        acct = self.acct
        prev_t = acct.t_marks.get(phase - 1, 0)
        duration = t - prev_t
        extras: dict = {}
        if phase == 1:
            c = led.counters()
            acct.check("phase1_black_growth", 2 * c.beta >= 4 * duration,
                       f"beta={c.beta} T1={duration}")
            # The duration floor presumes the phase ran to its own end
            # condition; a game that finishes first satisfies every bound
            # that the floor ultimately feeds.
            acct.check("phase1_lasts_past_separation",
                       duration >= acct.M or (by_game_end and duration == t),
                       f"T1={duration} M={acct.M} game_over={by_game_end}")
            acct.check("phase1_no_dependents", c.sigma == 0, f"sigma={c.sigma}")
            self._counters_at[1] = c
            extras = {"M": acct.M}
        elif phase == 2:
            c = led.counters()
            c1 = self._counters_at[1]
            acct.check("phase2_black_growth",
                       2 * (c.beta - c1.beta) >= 3 * duration,
                       f"dbeta={c.beta - c1.beta} T2={duration}")
            acct.check("phase2_depletion_rate", 4 * c.delta >= duration,
                       f"delta={c.delta} T2={duration}")
            acct.check("phase2_no_dependents", c.sigma == 0, f"sigma={c.sigma}")
            self._counters_at[2] = c
        elif phase == 3:
            c = led.counters()
            c2 = self._counters_at[2]
            acct.check("phase3_black_growth",
                       2 * (c.beta - c2.beta) >= 3 * duration,
                       f"dbeta={c.beta - c2.beta} T3={duration}")
            acct.check("phase3_unplayable_growth",
                       4 * (c.delta - c2.delta) + c.chi >= duration,
                       f"ddelta={c.delta - c2.delta} chi={c.chi} T3={duration}")
            acct.check("phase3_magnet_bound", 2 * c.nu <= c.chi + acct.M,
                       f"nu={c.nu} chi={c.chi} M={acct.M}")
            acct.check("phase3_all_dominated_black",
                       led.covered_mask & led.white_mask() == 0, "")
            bad = [
                v for v in range(self.board.n)
                if led.white_neighbor_count(v) == 2
                and find_circuit_through(self.table.state, led, v, (3, 4)) is None
            ]
            acct.check("phase3_two_whites_in_circuits", not bad,
                       f"out of circuits: {bad}")
            self._phase3_closing_marks()
            c_post = led.counters()
            acct.check("phase3_magnets_below_chi", c_post.nu <= c_post.chi,
                       f"nu={c_post.nu} chi={c_post.chi}")
            acct.nu_at_phase3 = c_post.nu
            acct.chi_at_phase3 = c_post.chi
            acct.C_snapshot = frozenset(single_white_vertices(led))
            self._counters_at[3] = c_post
            extras = {"C": acct.C_snapshot}
        elif phase == 4:
            c = led.counters()
            c3 = self._counters_at.get(3, self._counters_at.get(2, self._counters_at.get(1, self._counters_at[0])))
            acct.check("phase4_duration", duration <= 2 * acct.a + acct.b + 1,
                       f"T4={duration} a={acct.a} b={acct.b}")
            acct.check("phase4_black_growth",
                       c.beta - c3.beta >= 3 * acct.a + acct.b,
                       f"dbeta={c.beta - c3.beta} a={acct.a} b={acct.b}")
            acct.check("phase4_depletion_growth",
                       c.delta - c3.delta >= acct.a + acct.b - acct.nu_at_phase3,
                       f"ddelta={c.delta - c3.delta} a={acct.a} b={acct.b}"
                       f" nu3={acct.nu_at_phase3}")
            acct.check("phase4_no_new_dependents", c.sigma == c3.sigma,
                       f"sigma={c.sigma} was {c3.sigma}")
            acct.check("phase4_single_white_containment", self._p4_containment_ok, "")
            t1 = acct.t_of(1)
            t2, t3 = acct.t_of(2), acct.t_of(3)
            total = t
            acct.check(
                "black_sum",
                4 * t1 + 3 * (t2 - t1) + 3 * (t3 - t2) + 6 * acct.a + 2 * acct.b
                <= 2 * c.beta <= 2 * self.board.n,
                f"beta={c.beta}",
            )
            acct.check(
                "played_plus_unplayable",
                total + c.delta + acct.chi_at_phase3 <= self.board.n,
                f"T={total} delta={c.delta} chi3={acct.chi_at_phase3}"
                f" n={self.board.n}",
            )
            self._counters_at[4] = c
        acct.snapshots.append(
            PhaseSnapshot(
                index=phase,
                t_start=prev_t,
                t_end=t,
                counters=led.counters().as_tuple(),
                extras=extras,
            )
        )

    def _phase3_closing_marks(self) -> None:
        """Spread the dependent mark across every unmarked second neighbor of
        an undominated white next to an existing dependent vertex."""
        led = self.table.ledger
        st = self.table.state
        changed = True
        while changed:
            changed = False
            for v in range(self.board.n):
                if not led.is_dependent(v):
                    continue
                for w in self.board.adj[v]:
                    if st.covered_mask >> w & 1 or not led.is_white(w):
                        continue
                    for x in self.board.adj[w]:
                        if x == v or led.is_dependent(x) or led.is_depleted(x):
                            continue
                        if led.white_neighbor_count(x) > 1:
                            self.acct.warn(
                                f"closing marks: {x} keeps two whites"
                            )
                            continue
                        self.table.depend(x)
                        changed = True
