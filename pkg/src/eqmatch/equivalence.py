"""Static structural-equivalence partitioning and interchange counting.

Two vertices are structurally equivalent when their neighborhoods coincide
once the pair itself is excluded: every third vertex sees them identically
in every channel, any edges between the two are mutual with equal
multiplicity, and (when present) their labels and self-loops agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .graphs import MultiplexGraph, Problem, is_subgraph_isomorphism

_SELF = object()  # sentinel for self-loop keys in neighbor signatures


@dataclass(frozen=True)
class Partition:
    """Disjoint equivalence classes covering ``0..n-1``.

    Classes are sorted by smallest member for determinism; ``class_of[v]``
    is the index of the class containing ``v``.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @staticmethod
    def from_groups(groups: list[list[int]], n: int) -> "Partition":
        classes = tuple(tuple(sorted(g)) for g in sorted(groups, key=min))
        class_of = [-1] * n
        for i, cls in enumerate(classes):
            for v in cls:
                class_of[v] = i
        if -1 in class_of:
            raise ValueError("groups do not cover the vertex set")
        return Partition(classes, tuple(class_of))

    @staticmethod
    def trivial(n: int) -> "Partition":
        """All-singleton partition."""
        return Partition(tuple((v,) for v in range(n)), tuple(range(n)))

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.classes]

    def same_class(self, v: int, w: int) -> bool:
        return self.class_of[v] == self.class_of[w]


def structurally_equivalent(g: MultiplexGraph, v: int, w: int) -> bool:
    """Decide whether ``v`` and ``w`` can be swapped without changing ``g``."""
    g._check_vertex(v)
    g._check_vertex(w)
    if v == w:
        return True
    if g.label(v) != g.label(w):
        return False
    # Any edges between the pair must be mutual with equal multiplicity,
    # and self-loops must agree (a swap would otherwise alter the graph).
    if g.edge(v, w) != g.edge(w, v):
        return False
    if g.edge(v, v) != g.edge(w, w):
        return False
    skip = (v, w)
    for a, b in ((v, w), (w, v)):
        for u, mult in g.out[a].items():
            if u in skip:
                continue
            if g.edge(b, u) != mult:
                return False
        for u, mult in g.inn[a].items():
            if u in skip:
                continue
            if g.edge(u, b) != mult:
                return False
    return True


def _signature(g: MultiplexGraph, v: int):
    out_sig = frozenset((_SELF if u == v else u, m) for u, m in g.out[v].items())
    in_sig = frozenset((_SELF if u == v else u, m) for u, m in g.inn[v].items())
    return (g.label(v), out_sig, in_sig)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def find_equivalence_classes(g: MultiplexGraph) -> Partition:
    """Compute the maximal structural-equivalence partition of ``g``.

    Non-adjacent equivalent vertices share an exact neighbor signature, so a
    hash pass groups them in near-linear time; equivalent vertices that are
    adjacent to each other (mutual-edge pairs) are caught by testing each
    edge pairwise. The result is independent of visit order.
    """
    n = g.vertex_count
    uf = _UnionFind(n)
    by_sig: dict[object, int] = {}
    for v in range(n):
        sig = _signature(g, v)
        if sig in by_sig:
            uf.union(by_sig[sig], v)
        else:
            by_sig[sig] = v
    for v in range(n):
        for w in g.out[v]:
            if w != v and uf.find(v) != uf.find(w) and structurally_equivalent(g, v, w):
                uf.union(v, w)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(uf.find(v), []).append(v)
    return Partition.from_groups(list(groups.values()), n)


def count_factorial_lower_bound(p: Partition) -> int:
    """Exact product of factorials of the class sizes (an isomorphism-count floor)."""
    result = 1
    for cls in p.classes:
        result *= factorial(len(cls))
    return result


def count_tewe(problem: Problem, mapping: dict[int, int],
               template_partition: Partition, world_partition: Partition) -> int:
    """Count isomorphisms reachable from ``mapping`` by template/world swaps.

    With template classes ``C_i`` and world classes ``D_j``, the count is
    ``prod_i |C_i|! * prod_j prod_i binom(|D_j| - sum_{k<i} |C_{k,j}|, |C_{i,j}|)``
    where ``C_{i,j}`` collects the members of ``C_i`` mapped into ``D_j``.
    """
    if not is_subgraph_isomorphism(problem, mapping):
        raise ValueError("mapping is not a subgraph isomorphism")
    tp, wp = template_partition, world_partition
    incidence: dict[tuple[int, int], int] = {}
    for v, img in mapping.items():
        key = (tp.class_of[v], wp.class_of[img])
        incidence[key] = incidence.get(key, 0) + 1
    result = 1
    for cls in tp.classes:
        result *= factorial(len(cls))
    for j, dcls in enumerate(wp.classes):
        taken = 0
        for i in range(len(tp.classes)):
            k = incidence.get((i, j), 0)
            if k:
                result *= comb(len(dcls) - taken, k)
                taken += k
    return result
