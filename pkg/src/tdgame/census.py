"""Exhaustive small-graph enumeration with isomorphism dedup.

Canonical forms take the minimum adjacency bitmask over vertex orderings that
respect iterated neighbor-degree refinement classes. The refinement is an
isomorphism invariant, so restricting to class-preserving orderings keeps
the form canonical while shrinking the search from n! to the product of the
class sizes' factorials (only very symmetric graphs stay expensive, and desk
sizes keep even those cheap).

Enumerations build size n from size n-1 by vertex (or leaf) augmentation,
which reaches every isomorphism class.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .graphs import Graph


def refinement_classes(g: Graph) -> list[list[int]]:
    """Vertex classes under iterated neighbor-color refinement, ordered by
    class invariant (stable across isomorphic relabelings)."""
    colors: list = [g.degree(v) for v in range(g.n)]
    for _ in range(g.n):
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in g.adj[v])))
            for v in range(g.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new_colors = [palette[s] for s in sigs]
        if new_colors == colors:
            break
        colors = new_colors
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    return [classes[c] for c in sorted(classes)]


def canonical_bitmask(g: Graph) -> int:
    """Isomorphism-invariant adjacency bitmask (see module docstring)."""
    if g.n <= 1:
        return 0
    edges = list(g.edges())
    if not edges:
        return 0
    classes = refinement_classes(g)
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        position = {}
        pos = 0
        for part in parts:
            for v in part:
                position[v] = pos
                pos += 1
        mask = 0
        for u, v in edges:
            i, j = position[u], position[v]
            if i > j:
                i, j = j, i
            mask |= 1 << (j * (j - 1) // 2 + i)
        if best is None or mask < best:
            best = mask
    return best


def canonical_form(g: Graph) -> Graph:
    return Graph.from_adjacency_bitmask(g.n, canonical_bitmask(g))


_GRAPH_CACHE: dict[int, list[Graph]] = {}
_TREE_CACHE: dict[int, list[Graph]] = {}


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """All graphs on exactly n vertices, one per isomorphism class."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n in _GRAPH_CACHE:
        return _GRAPH_CACHE[n]
    if n <= 1:
        reps = [Graph(n)]
    else:
        seen: set[int] = set()
        reps = []
        for g in nonisomorphic_graphs(n - 1):
            base = list(g.edges())
            for subset in range(1 << (n - 1)):
                edges = base + [
                    (i, n - 1) for i in range(n - 1) if subset >> i & 1
                ]
                key = canonical_bitmask(Graph(n, edges))
                if key not in seen:
                    seen.add(key)
                    reps.append(Graph.from_adjacency_bitmask(n, key))
    _GRAPH_CACHE[n] = reps
    return reps


def nonisomorphic_trees(n: int) -> list[Graph]:
    """All trees on exactly n vertices, one per isomorphism class, built by
    leaf augmentation (every tree arises from a smaller one plus a leaf)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n in _TREE_CACHE:
        return _TREE_CACHE[n]
    if n == 1:
        reps = [Graph(1)]
    elif n == 2:
        reps = [Graph(2, [(0, 1)])]
    else:
        seen: set[int] = set()
        reps = []
        for t in nonisomorphic_trees(n - 1):
            base = list(t.edges())
            for attach in range(n - 1):
                key = canonical_bitmask(Graph(n, base + [(attach, n - 1)]))
                if key not in seen:
                    seen.add(key)
                    reps.append(Graph.from_adjacency_bitmask(n, key))
    _TREE_CACHE[n] = reps
    return reps


def valid_boards(n: int, min_degree: int = 1, allow_isolated_edges: bool = False) -> Iterator[Graph]:
    """Isomorphism-class representatives that make legal boards: no isolated
    vertices, optionally no single-edge components, optional degree floor."""
    for g in nonisomorphic_graphs(n):
        if g.min_degree() < max(1, min_degree):
            continue
        if not allow_isolated_edges and g.isolated_edges():
            continue
        yield g


def all_labeled_masks(n: int) -> Iterator[int]:
    """Every adjacency bitmask on n labeled vertices (no dedup)."""
    return iter(range(1 << (n * (n - 1) // 2)))
