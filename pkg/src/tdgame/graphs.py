"""Board representations: simple graphs, hypergraphs, and vertex structure.

Vertices are 0-indexed integers. Graphs are immutable once built, so boards
can be shared freely between games, solvers and worker threads. Neighborhoods
are kept both as frozensets (for iteration) and as integer bitmasks (for the
solver and the game engine hot paths).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class GraphParseError(ValueError):
    """Raised on malformed graph6 or edge-list input; carries a byte offset."""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class Graph:
    """Undirected simple graph: symmetric, irreflexive adjacency."""

    __slots__ = ("n", "adj", "nbr_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self.nbr_mask: tuple[int, ...] = tuple(
            sum(1 << w for w in s) for s in self.adj
        )

    # -- basic queries ----------------------------------------------------

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(len(s) for s in self.adj)

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def components(self) -> list[frozenset[int]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = {start}
            seen[start] = True
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.add(w)
                        stack.append(w)
            out.append(frozenset(comp))
        return out

    def isolated_edges(self) -> list[frozenset[int]]:
        """Components that are a single edge (two mutually adjacent leaves)."""
        return [c for c in self.components() if len(c) == 2]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """New graph with vertex i renamed to perm[i]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def adjacency_bitmask(self) -> int:
        """Upper-triangle edge bitmask in column order (j>i, bit index of
        pair (i, j) is j*(j-1)/2 + i), matching the graph6 bit order."""
        mask = 0
        for u, v in self.edges():
            i, j = (u, v) if u < v else (v, u)
            mask |= 1 << (j * (j - 1) // 2 + i)
        return mask

    @staticmethod
    def from_adjacency_bitmask(n: int, mask: int) -> "Graph":
        edges = []
        idx = 0
        for j in range(1, n):
            for i in range(j):
                if mask >> idx & 1:
                    edges.append((i, j))
                idx += 1
        return Graph(n, edges)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


class Hypergraph:
    """Vertex set 0..n-1 plus a multiset of hyperedges (repeats allowed)."""

    __slots__ = ("n", "edges", "edge_mask", "vertex_edges")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        self.edges: tuple[frozenset[int], ...] = tuple(
            frozenset(e) for e in edges
        )
        for i, e in enumerate(self.edges):
            for v in e:
                if not (0 <= v < n):
                    raise ValueError(f"edge {i} contains out-of-range vertex {v}")
        self.edge_mask: tuple[int, ...] = tuple(
            sum(1 << v for v in e) for e in self.edges
        )
        vertex_edges = [0] * n
        for i, e in enumerate(self.edges):
            for v in e:
                vertex_edges[v] |= 1 << i
        self.vertex_edges: tuple[int, ...] = tuple(vertex_edges)

    def edge_count(self) -> int:
        return len(self.edges)

    def has_empty_edge(self) -> bool:
        return any(not e for e in self.edges)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and sorted(self.edge_mask) == sorted(other.edge_mask)
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.edge_mask))))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={len(self.edges)})"


def disjoint_hypergraph_union(parts: Sequence[Hypergraph]) -> Hypergraph:
    """Disjoint copies side by side; part i is offset by the sizes before it."""
    offset = 0
    n = 0
    edges: list[list[int]] = []
    for h in parts:
        edges.extend([v + offset for v in e] for e in h.edges)
        offset += h.n
        n += h.n
    return Hypergraph(n, edges)


# -- graph6 codec ----------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_parse_order(data: bytes) -> tuple[int, int]:
    """Return (n, index of first adjacency byte)."""
    if not data:
        raise GraphParseError("empty graph6 string", 0)
    b0 = data[0]
    if b0 == 126:  # multi-byte vertex count
        if len(data) >= 4 and data[1] != 126:
            vals = [data[i] - 63 for i in (1, 2, 3)]
            for i, x in enumerate(vals):
                if not 0 <= x <= 63:
                    raise GraphParseError("invalid order byte", i + 1)
            return (vals[0] << 12) | (vals[1] << 6) | vals[2], 4
        if len(data) >= 8 and data[1] == 126:
            vals = [data[i] - 63 for i in range(2, 8)]
            for i, x in enumerate(vals):
                if not 0 <= x <= 63:
                    raise GraphParseError("invalid order byte", i + 2)
            n = 0
            for x in vals:
                n = (n << 6) | x
            return n, 8
        raise GraphParseError("truncated multi-byte vertex count", len(data))
    if not 63 <= b0 <= 125:
        raise GraphParseError(f"invalid length header byte {b0!r}", 0)
    return b0 - 63, 1


def parse_graph6(text: str) -> Graph:
    """Decode one header-free or ``>>graph6<<``-prefixed graph6 string."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    data = s.encode("ascii", errors="replace")
    n, start = _g6_parse_order(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - start != nbytes:
        raise GraphParseError(
            f"expected {nbytes} adjacency bytes for n={n}, got {len(data) - start}",
            start,
        )
    bits = 0
    for k in range(nbytes):
        b = data[start + k]
        if not 63 <= b <= 126:
            raise GraphParseError(f"byte {b!r} outside graph6 range", start + k)
        bits = (bits << 6) | (b - 63)
    pad = nbytes * 6 - nbits
    if pad and bits & ((1 << pad) - 1):
        raise GraphParseError("nonzero padding bits", start + nbytes - 1)
    bits >>= pad
    # bits now holds the column-order upper triangle, most significant first
    edges = []
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if pos >= 0 and bits >> pos & 1:
                edges.append((i, j))
            pos -= 1
    return Graph(n, edges)


def encode_graph6(g: Graph) -> str:
    """Header-free graph6 encoding."""
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    else:
        head = [126, 126] + [(n >> (6 * k) & 63) + 63 for k in range(5, -1, -1)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        body.append(val + 63)
    return bytes(head + body).decode("ascii")


# -- edge-list text format --------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """One ``u v`` pair per line; an optional leading line with a single
    integer fixes the vertex count (otherwise max index + 1 is used).
    Blank lines and ``#`` comments are skipped."""
    edges: list[tuple[int, int]] = []
    declared_n: Optional[int] = None
    max_seen = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1 and declared_n is None and not edges:
            declared_n = int(parts[0])
            continue
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    n = declared_n if declared_n is not None else max_seen + 1
    return Graph(max(n, 0), edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- generators --------------------------------------------------------------

def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(k: int) -> Graph:
    """Center 0 joined to k leaves."""
    if k < 1:
        raise ValueError("star needs k >= 1")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    """Components placed side by side; part i is offset by the total size of
    the parts before it, so component identity is stable in traces."""
    edges: list[tuple[int, int]] = []
    offset = 0
    for g in parts:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)


def random_graph(n: int, edge_prob: float, seed: int) -> Graph:
    if n < 1:
        raise ValueError("random graph needs n >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must be in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_prob
    ]
    return Graph(n, edges)


def random_min_deg2(n: int, edge_prob: float, seed: int) -> Graph:
    """Random graph augmented with extra edges until minimum degree >= 2."""
    if n < 3:
        raise ValueError("minimum degree 2 needs n >= 3")
    rng = random.Random(seed)
    adj = {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_prob
    }
    deg = [0] * n
    for i, j in adj:
        deg[i] += 1
        deg[j] += 1
    for v in range(n):
        while deg[v] < 2:
            choices = [
                w
                for w in range(n)
                if w != v and (min(v, w), max(v, w)) not in adj
            ]
            w = rng.choice(choices)
            adj.add((min(v, w), max(v, w)))
            deg[v] += 1
            deg[w] += 1
    return Graph(n, sorted(adj))


def generate(spec: str) -> Graph:
    """Build a board from a small text spec, e.g. ``cycle 7``,
    ``random_min_deg2 30 0.15 7`` or ``path 4 + path 4`` (disjoint union)."""
    parts = [p.strip() for p in spec.split("+")]
    graphs = []
    for part in parts:
        tokens = part.split()
        if not tokens:
            raise ValueError(f"empty generator component in {spec!r}")
        kind, args = tokens[0], tokens[1:]
        if kind == "path":
            graphs.append(path_graph(int(args[0])))
        elif kind == "cycle":
            graphs.append(cycle_graph(int(args[0])))
        elif kind == "star":
            graphs.append(star_graph(int(args[0])))
        elif kind == "complete":
            graphs.append(complete_graph(int(args[0])))
        elif kind == "random":
            graphs.append(random_graph(int(args[0]), float(args[1]), int(args[2])))
        elif kind == "random_min_deg2":
            graphs.append(
                random_min_deg2(int(args[0]), float(args[1]), int(args[2]))
            )
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
    return graphs[0] if len(graphs) == 1 else disjoint_union(graphs)


# -- vertex classification ----------------------------------------------------

@dataclass(frozen=True)
class VertexClassification:
    """Partition of the vertices into leaves, parents, grandparents and the
    rest, plus the leaf typing used by the leafy-graph strategy.

    A leaf is a degree-1 vertex and its parent is its unique neighbor. A leaf
    is type B when its parent is adjacent to another parent, type A otherwise.
    For a type-A leaf whose parent has exactly two neighbors, the parent's
    other neighbor is the grandparent of both the leaf and the parent.

    The four sets are made disjoint with priority leaf > parent > grandparent;
    grandparent_of entries that point into leaves/parents are kept in the map
    but excluded from ``grandparents`` (such boards are structurally odd and
    are reported by :func:`structural_violations`).
    """

    leaves: frozenset[int]
    parents: frozenset[int]
    grandparents: frozenset[int]
    rest: frozenset[int]
    leaf_type: dict[int, str]
    parent_of: dict[int, int]
    grandparent_of: dict[int, int]


def classify_vertices(g: Graph) -> VertexClassification:
    leaves = frozenset(v for v in range(g.n) if g.degree(v) == 1)
    parent_of = {leaf: next(iter(g.adj[leaf])) for leaf in leaves}
    raw_parents = frozenset(parent_of.values())
    parents = raw_parents - leaves
    leaf_type: dict[int, str] = {}
    for leaf in leaves:
        p = parent_of[leaf]
        leaf_type[leaf] = (
            "B" if any(w in raw_parents and w != leaf for w in g.adj[p]) else "A"
        )
    grandparent_of: dict[int, int] = {}
    for leaf in leaves:
        p = parent_of[leaf]
        if leaf_type[leaf] == "A" and g.degree(p) == 2:
            gp = next(iter(g.adj[p] - {leaf}))
            grandparent_of[leaf] = gp
            grandparent_of[p] = gp
    grandparents = frozenset(grandparent_of.values()) - leaves - parents
    rest = frozenset(range(g.n)) - leaves - parents - grandparents
    return VertexClassification(
        leaves=leaves,
        parents=parents,
        grandparents=grandparents,
        rest=rest,
        leaf_type=leaf_type,
        parent_of=parent_of,
        grandparent_of=grandparent_of,
    )


def structural_violations(g: Graph, vc: Optional[VertexClassification] = None) -> list[str]:
    """Ways the board departs from the shape the leafy-graph strategy's
    per-phase guarantees assume. A nonempty result switches that strategy to
    best-effort mode (phase checks downgraded to warnings)."""
    if vc is None:
        vc = classify_vertices(g)
    issues: list[str] = []
    for comp in g.isolated_edges():
        issues.append(f"isolated edge {sorted(comp)}")
    by_parent: dict[int, list[int]] = {}
    for leaf, p in vc.parent_of.items():
        by_parent.setdefault(p, []).append(leaf)
    for p, ls in sorted(by_parent.items()):
        if len(ls) > 1:
            issues.append(f"parent {p} has {len(ls)} leaves")
    for leaf in sorted(vc.leaves):
        if vc.leaf_type[leaf] != "A":
            continue
        p = vc.parent_of[leaf]
        if g.degree(p) != 2:
            issues.append(
                f"type-A leaf {leaf}: parent {p} has degree {g.degree(p)}"
            )
        elif vc.grandparent_of[leaf] in vc.leaves | vc.parents:
            issues.append(
                f"type-A leaf {leaf}: grandparent {vc.grandparent_of[leaf]}"
                " is itself a leaf or parent"
            )
    # A parent adjacent to another parent should live in a component made of
    # parents and leaves only; anything else breaks the pairing the strategy
    # relies on for type-B leaves.
    comps = {v: i for i, c in enumerate(g.components()) for v in c}
    comp_sets = g.components()
    flagged: set[int] = set()
    for leaf in sorted(vc.leaves):
        if vc.leaf_type[leaf] == "B":
            ci = comps[vc.parent_of[leaf]]
            if ci in flagged:
                continue
            comp = comp_sets[ci]
            if not comp <= (vc.leaves | vc.parents):
                flagged.add(ci)
                issues.append(
                    f"type-B cluster component {sorted(comp)} contains"
                    " non-parent, non-leaf vertices"
                )
    return issues


def open_neighborhood_hypergraph(g: Graph) -> Hypergraph:
    """One hyperedge N(x) per vertex x. Requires no isolated vertices, since
    an empty hyperedge could never be hit."""
    isolated = g.isolated_vertices()
    if isolated:
        raise ValueError(f"graph has isolated vertices {isolated}")
    return Hypergraph(g.n, [g.adj[x] for x in range(g.n)])
