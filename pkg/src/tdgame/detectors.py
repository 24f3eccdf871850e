"""Structure searches that drive the Dominator strategies.

All searches are pure functions of (game state, ledger colors) and return
lexicographically least witnesses, so runs are reproducible.

A k-walk is a vertex sequence w1 v1 w2 v2 ... wk vk where the w's are
pairwise distinct whites, the v's are pairwise distinct, each wi is adjacent
to vi, and each vi is adjacent to w(i+1). The two lists may overlap each
other (only each list on its own is duplicate-free); odd cycles rely on such
overlaps. A k-circuit additionally has vk adjacent to w1, and a terminal
walk is a 2-walk whose v2 has no white neighbor besides w2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .engine import GameState
from .graphs import Graph
from .ledger import Ledger


class DetectorError(RuntimeError):
    """A search's structural assumptions failed (stale phase preconditions)."""


# -- walks -------------------------------------------------------------------

@dataclass(frozen=True)
class Walk:
    w: tuple[int, ...]
    v: tuple[int, ...]
    kind: str  # "walk" | "circuit" | "terminal"

    @property
    def k(self) -> int:
        return len(self.w)


def walk_violations(board: Graph, white_mask: int, walk: Walk) -> list[str]:
    """Empty list iff the walk satisfies every condition of its kind."""
    problems = []
    k = walk.k
    if len(walk.v) != k:
        problems.append("w and v have different lengths")
        return problems
    if len(set(walk.w)) != k:
        problems.append("repeated w vertex")
    if len(set(walk.v)) != k:
        problems.append("repeated v vertex")
    for i in range(k):
        if not white_mask >> walk.w[i] & 1:
            problems.append(f"w{i + 1}={walk.w[i]} is not white")
        if not board.has_edge(walk.w[i], walk.v[i]):
            problems.append(f"w{i + 1} not adjacent to v{i + 1}")
        if i + 1 < k and not board.has_edge(walk.v[i], walk.w[i + 1]):
            problems.append(f"v{i + 1} not adjacent to w{i + 2}")
    if walk.kind == "circuit" and not board.has_edge(walk.v[-1], walk.w[0]):
        problems.append("circuit does not close")
    if walk.kind == "terminal":
        if k != 2:
            problems.append("terminal walk must have k=2")
        else:
            v2, w2 = walk.v[1], walk.w[1]
            whites = [x for x in board.adj[v2] if white_mask >> x & 1]
            if whites != [w2]:
                problems.append(f"v2={v2} has white neighbors {whites}, not just w2")
    return problems


def find_walk(
    state: GameState, ledger: Ledger, k: int, mode: str = "walk"
) -> Optional[Walk]:
    """Lexicographically least walk in (w1, v1, w2, v2, ...) order, or None."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if mode not in ("walk", "circuit", "terminal"):
        raise ValueError(f"unknown walk mode {mode!r}")
    if mode == "terminal" and k != 2:
        raise ValueError("terminal walks have k=2")
    board: Graph = state.board
    white = ledger.white_mask()
    adj = board.adj
    w: list[int] = []
    v: list[int] = []

    def white_sorted(candidates) -> list[int]:
        return sorted(x for x in candidates if white >> x & 1)

    def choose_v(i: int) -> bool:
        last = i == k - 1
        for x in sorted(adj[w[i]]):
            if x in v:
                continue
            if last:
                if mode == "circuit" and not board.has_edge(x, w[0]):
                    continue
                if mode == "terminal":
                    whites_of_x = white_sorted(adj[x])
                    if whites_of_x != [w[1]]:
                        continue
                v.append(x)
                return True
            # a middle v needs a white continuation; prune dead branches
            if not board.nbr_mask[x] & white:
                continue
            v.append(x)
            if choose_w(i + 1):
                return True
            v.pop()
        return False

    def choose_w(i: int) -> bool:
        pool = range(board.n) if i == 0 else adj[v[i - 1]]
        for x in white_sorted(pool):
            if x in w:
                continue
            w.append(x)
            if choose_v(i):
                return True
            w.pop()
        return False

    if choose_w(0):
        return Walk(w=tuple(w), v=tuple(v), kind=mode)
    return None


def find_circuit_through(
    state: GameState, ledger: Ledger, vertex: int, sizes: tuple[int, ...] = (3, 4)
) -> Optional[Walk]:
    """Smallest (then lex-least) circuit having ``vertex`` in the v1 slot.

    Only sensible when ``vertex`` has exactly two white neighbors: those two
    must serve as w1 and w2 of any circuit through it.
    """
    board: Graph = state.board
    white = ledger.white_mask()
    whites_of = sorted(x for x in board.adj[vertex] if white >> x & 1)
    if len(whites_of) != 2:
        return None
    for k in sorted(sizes):
        for w1, w2 in ((whites_of[0], whites_of[1]), (whites_of[1], whites_of[0])):
            w = [w1, w2]
            v = [vertex]

            def choose_v(i: int) -> bool:
                last = i == k - 1
                for x in sorted(board.adj[w[i]]):
                    if x in v:
                        continue
                    if last:
                        if not board.has_edge(x, w[0]):
                            continue
                        v.append(x)
                        return True
                    if not board.nbr_mask[x] & white:
                        continue
                    v.append(x)
                    if choose_w(i + 1):
                        return True
                    v.pop()
                return False

            def choose_w(i: int) -> bool:
                for x in sorted(board.adj[v[i - 1]]):
                    if not white >> x & 1 or x in w:
                        continue
                    w.append(x)
                    if choose_v(i):
                        return True
                    w.pop()
                return False

            if choose_v(1):
                return Walk(w=tuple(w), v=tuple(v), kind="circuit")
    return None


def single_white_vertices(ledger: Ledger) -> list[int]:
    """Vertices with exactly one white neighbor."""
    return [
        v
        for v in range(ledger.board.n)
        if ledger.white_neighbor_count(v) == 1
    ]


# -- white-separable sets ------------------------------------------------------

@dataclass(frozen=True)
class SeparationCertificate:
    """A set of unplayed vertices with pairwise-disjoint white triples picked
    from their neighborhoods; ``size`` realizes the separation number."""

    members: tuple[int, ...]
    triples: dict[int, frozenset[int]]

    @property
    def size(self) -> int:
        return len(self.members)

    def violations(self, state: GameState, ledger: Ledger) -> list[str]:
        problems = []
        seen: set[int] = set()
        white = ledger.white_mask()
        for v in self.members:
            triple = self.triples.get(v)
            if triple is None or len(triple) != 3:
                problems.append(f"member {v} lacks a 3-element triple")
                continue
            if state.selected_mask >> v & 1:
                problems.append(f"member {v} was played")
            for x in triple:
                if x not in state.board.adj[v]:
                    problems.append(f"{x} not a neighbor of {v}")
                if not white >> x & 1:
                    problems.append(f"triple vertex {x} is not white")
                if x in seen:
                    problems.append(f"triple vertex {x} reused")
                seen.add(x)
        return problems


def _max_flow(capacity: dict[int, dict[int, int]], source: int, sink: int) -> int:
    """Edmonds-Karp on a small residual dict; mutates ``capacity``."""
    flow = 0
    while True:
        parent: dict[int, int] = {source: source}
        q = deque([source])
        while q and sink not in parent:
            u = q.popleft()
            for w, cap in capacity.get(u, {}).items():
                if cap > 0 and w not in parent:
                    parent[w] = u
                    q.append(w)
        if sink not in parent:
            return flow
        # unit bottlenecks only in this network
        v = sink
        while v != source:
            u = parent[v]
            capacity[u][v] -= 1
            capacity.setdefault(v, {}).setdefault(u, 0)
            capacity[v][u] += 1
            v = u
        flow += 1


def max_white_separable_set(state: GameState, ledger: Ledger) -> SeparationCertificate:
    """Maximum-size set of unplayed vertices owning disjoint white triples.

    Feasible sets form a matroid (disjoint-representatives structure), so
    greedy augmentation in index order with a flow feasibility test returns a
    maximum set; tests cross-check against subset brute force.
    """
    board: Graph = state.board
    white = ledger.white_mask()
    candidates = [
        v
        for v in range(board.n)
        if not state.selected_mask >> v & 1
        and (board.nbr_mask[v] & white).bit_count() >= 3
    ]
    chosen: list[int] = []

    def feasible(members: list[int]) -> Optional[dict[int, dict[int, int]]]:
        source, sink = -1, -2
        cap: dict[int, dict[int, int]] = {source: {}}
        whites_used: set[int] = set()
        for v in members:
            cap[source][2 * v] = 3
            cap[2 * v] = {}
            for x in board.adj[v]:
                if white >> x & 1:
                    cap[2 * v][2 * x + 1] = 1
                    whites_used.add(x)
        for x in whites_used:
            cap[2 * x + 1] = {sink: 1}
        if _max_flow(cap, source, sink) == 3 * len(members):
            return cap
        return None

    residual = feasible([])
    for v in candidates:
        attempt = feasible(chosen + [v])
        if attempt is not None:
            chosen.append(v)
            residual = attempt
    triples: dict[int, frozenset[int]] = {}
    assert residual is not None
    for v in chosen:
        got = [
            (node - 1) // 2
            for node, cap in residual.get(2 * v, {}).items()
            if node >= 0 and node % 2 == 1 and cap == 0
        ]
        triples[v] = frozenset(got)
    return SeparationCertificate(members=tuple(chosen), triples=triples)


# -- the high-degree branch configuration ---------------------------------------

@dataclass(frozen=True)
class Phase3Configuration:
    """A white vertex ``u`` of degree >= 3 whose neighbors v1, v2, v3 carry
    distinct extra whites w1, w2, w3, plus the second neighbors x1 of w1 and
    x2 of w2, classified into the case the strategy's move table handles.

    Cases: ``both_adjacent_w3`` (x1 and x2 adjacent to w3), ``fig1_a_is_u``,
    ``fig2_a_is_w3`` (after symmetry relabels, the chained witness a always
    lands on w3), ``distinct_y``, ``fig3_a_is_y``.
    """

    case: str
    u: int
    v1: int
    v2: int
    v3: int
    w1: int
    w2: int
    w3: int
    x1: int
    x2: int
    y: Optional[int] = None
    z: Optional[int] = None
    a: Optional[int] = None
    y1: Optional[int] = None
    y2: Optional[int] = None
    x3: Optional[int] = None


def phase3_trigger_vertex(state: GameState, ledger: Ledger) -> Optional[int]:
    """Least white vertex of degree >= 3 sitting in a 2-walk, if any."""
    board: Graph = state.board
    white = ledger.white_mask()
    for u in range(board.n):
        if not white >> u & 1 or board.degree(u) < 3:
            continue
        for v in board.adj[u]:
            if board.nbr_mask[v] & white & ~(1 << u):
                return u
    return None


def find_phase3_configuration(
    state: GameState, ledger: Ledger
) -> Optional[Phase3Configuration]:
    """Bind the full branch configuration around the trigger vertex.

    Requires the caller to have ruled out 2-circuits, 6-walks and terminal
    walks first; raises :class:`DetectorError` when the bindings contradict
    those preconditions (e.g. a witness chain escaping {w1, w3, u}).
    """
    board: Graph = state.board
    white = ledger.white_mask()

    def whites_of(v: int, exclude: tuple[int, ...] = ()) -> list[int]:
        return sorted(
            x
            for x in board.adj[v]
            if white >> x & 1 and x not in exclude
        )

    u = phase3_trigger_vertex(state, ledger)
    if u is None:
        return None
    nbrs = sorted(board.adj[u])
    v1 = next(v for v in nbrs if whites_of(v, (u,)))
    others = [v for v in nbrs if v != v1][:2]
    if len(others) < 2:
        raise DetectorError(f"trigger {u} has fewer than three neighbors")
    v2, v3 = others
    vs = [v1, v2, v3]
    ws = []
    for v in vs:
        cands = whites_of(v, (u,))
        if not cands:
            raise DetectorError(
                f"neighbor {v} of trigger {u} has no extra white"
                " (a terminal walk should have been handled first)"
            )
        ws.append(cands[0])
    if len(set(ws)) != 3:
        raise DetectorError(
            f"extra whites {ws} around trigger {u} collide (2-circuit present)"
        )
    w1, w2, w3 = ws

    second = {
        i: sorted(set(board.adj[ws[i]]) - {vs[i]}) for i in range(3)
    }
    pick = None
    for i, j in ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)):
        if not second[i] or not second[j]:
            continue
        xi = second[i][0]
        rest = [x for x in second[j] if x != xi]
        if rest:
            pick = (i, j, xi, rest[0])
            break
    if pick is None:
        raise DetectorError(
            f"second neighbors of {ws} are a single shared vertex"
            " (white-degree cap violated)"
        )
    i, j, x1, x2 = pick
    kk = 3 - i - j
    v1, v2, v3 = vs[i], vs[j], vs[kk]
    w1, w2, w3 = ws[i], ws[j], ws[kk]
    if x1 in board.adj[u] or x2 in board.adj[u]:
        raise DetectorError(
            f"second neighbor {x1}/{x2} adjacent to trigger {u}"
            " (white-degree cap violated)"
        )

    def relabel_13(c1, c2, c3, cv1, cv2, cv3):
        # swap the roles of (w1, v1) and (w3, v3)
        return (c3, c2, c1), (cv3, cv2, cv1)

    x1w3 = board.has_edge(x1, w3)
    x2w3 = board.has_edge(x2, w3)
    if x1w3 and x2w3:
        return Phase3Configuration(
            "both_adjacent_w3", u, v1, v2, v3, w1, w2, w3, x1, x2
        )
    if x2w3 and not x1w3:
        x1, x2 = x2, x1
        w1, w2 = w2, w1
        v1, v2 = v2, v1
        x1w3 = True
    if x1w3:
        ys = whites_of(x2, (w2,))
        if not ys:
            raise DetectorError(
                f"{x2} has no white beyond {w2} (terminal walk missed)"
            )
        y = ys[0]
        if y == w1:
            # x2 adjacent to w1: after swapping the 1 and 3 roles both x's
            # are adjacent to the new w3
            (w1, w2, w3), (v1, v2, v3) = relabel_13(w1, w2, w3, v1, v2, v3)
            return Phase3Configuration(
                "both_adjacent_w3", u, v1, v2, v3, w1, w2, w3, x1, x2
            )
        zs = [x for x in sorted(board.adj[y]) if x != x2]
        zs = [x for x in zs if x not in (v1, v2, v3, x1, x2)]
        if not zs:
            raise DetectorError(f"witness {y} has no usable second neighbor")
        z = zs[0]
        az = whites_of(z, (y,))
        if not az:
            raise DetectorError(f"{z} has no white beyond {y} (terminal walk missed)")
        a = az[0]
        if a == u:
            return Phase3Configuration(
                "fig1_a_is_u", u, v1, v2, v3, w1, w2, w3, x1, x2, y=y, z=z, a=a
            )
        if a == w3:
            return Phase3Configuration(
                "fig2_a_is_w3", u, v1, v2, v3, w1, w2, w3, x1, x2, y=y, z=z, a=a
            )
        if a == w1:
            (w1, w2, w3), (v1, v2, v3) = relabel_13(w1, w2, w3, v1, v2, v3)
            return Phase3Configuration(
                "fig2_a_is_w3", u, v1, v2, v3, w1, w2, w3, x1, x2, y=y, z=z, a=w3
            )
        raise DetectorError(
            f"witness chain ends at {a}, outside {{w1, w3, u}} (6-walk missed)"
        )

    # neither x1 nor x2 adjacent to w3
    y1s = whites_of(x1, (w1,))
    y2s = whites_of(x2, (w2,))
    if not y1s or not y2s:
        raise DetectorError("x witness lacks a second white (terminal walk missed)")
    y1, y2 = y1s[0], y2s[0]
    if y1 != y2:
        return Phase3Configuration(
            "distinct_y", u, v1, v2, v3, w1, w2, w3, x1, x2, y1=y1, y2=y2
        )
    y = y1
    x3s = [x for x in sorted(board.adj[w3]) if x != v3]
    if not x3s:
        raise DetectorError(f"{w3} has no second neighbor")
    x3 = x3s[0]
    if x3 in (x1, x2):
        raise DetectorError(f"{w3} second neighbor collides with x1/x2")
    a3 = whites_of(x3, (w3,))
    if not a3:
        raise DetectorError(f"{x3} has no white beyond {w3} (terminal walk missed)")
    a = a3[0]
    if a == u:
        raise DetectorError("witness chain closed on u (2-circuit missed)")
    if a == y:
        return Phase3Configuration(
            "fig3_a_is_y", u, v1, v2, v3, w1, w2, w3, x1, x2, y=y, x3=x3, a=a
        )
    if a == w1:
        # x3 doubles as the x1 of a Fig-2 layout after swapping roles 1 and 3
        return Phase3Configuration(
            "fig2_a_is_w3",
            u, v3, v2, v1, w3, w2, w1,
            x1=x3, x2=x2, y=y, z=x1, a=w1,
        )
    if a == w2:
        return Phase3Configuration(
            "fig2_a_is_w3",
            u, v3, v1, v2, w3, w1, w2,
            x1=x3, x2=x1, y=y, z=x2, a=w2,
        )
    raise DetectorError(
        f"witness chain ends at {a}, outside {{w1, w2, y}} (6-walk missed)"
    )
