"""Board preprocessing for the leafy-graph strategy.

When a vertex owns several leaves, at most one of them can ever be played
(after the first, the rest would add nothing), so the game is unchanged if
the extra leaves are dropped and any adversary move on a dropped leaf is read
as a move on the surviving sibling. ``reduce_duplicate_leaves`` performs the
removal and returns the translation table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graphs import Graph, classify_vertices


@dataclass(frozen=True)
class MoveLift:
    """Vertex translation between an original board and its reduced form.

    ``to_reduced`` maps every original vertex to a reduced one; a removed
    leaf maps to the surviving sibling under the same parent. ``to_original``
    sends reduced ids back to the original labels that survived.
    """

    original: Graph
    reduced: Graph
    to_reduced: dict[int, int]
    to_original: tuple[int, ...]
    removed: dict[int, int] = field(default_factory=dict)

    @property
    def is_identity(self) -> bool:
        return not self.removed

    def lift_event_vertex(self, reduced_vertex: int) -> int:
        return self.to_original[reduced_vertex]


def reduce_duplicate_leaves(g: Graph) -> tuple[Graph, MoveLift]:
    """Drop all but the lowest-index leaf of every multi-leaf parent.

    Runs to a fixed point (a star collapses to a single edge in one pass and
    stays there). The reduced graph is relabeled to contiguous ids; the lift
    composes across passes.
    """
    to_reduced = {v: v for v in range(g.n)}
    removed: set[int] = set()
    current = g
    while True:
        vc = classify_vertices(current)
        by_parent: dict[int, list[int]] = {}
        for leaf, parent in vc.parent_of.items():
            by_parent.setdefault(parent, []).append(leaf)
        drop: dict[int, int] = {}
        for parent, leaves in by_parent.items():
            leaves.sort()
            for extra in leaves[1:]:
                drop[extra] = leaves[0]
        if not drop:
            break
        keep = [v for v in range(current.n) if v not in drop]
        new_id = {old: i for i, old in enumerate(keep)}
        edges = [
            (new_id[u], new_id[v])
            for u, v in current.edges()
            if u not in drop and v not in drop
        ]
        current = Graph(len(keep), edges)
        # compose: original -> old ids -> new ids (dropped leaves reroute first)
        for orig in to_reduced:
            old = to_reduced[orig]
            if old in drop:
                removed.add(orig)
                old = drop[old]
            to_reduced[orig] = new_id[old]
    to_original_list = [0] * current.n
    for orig, red in to_reduced.items():
        if orig not in removed:
            to_original_list[red] = orig
    removed_final = {
        orig: to_original_list[to_reduced[orig]] for orig in removed
    }
    return current, MoveLift(
        original=g,
        reduced=current,
        to_reduced=dict(to_reduced),
        to_original=tuple(to_original_list),
        removed=removed_final,
    )
