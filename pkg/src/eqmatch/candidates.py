"""Candidate sets, the materialized candidate structure, node covers, and
the dynamic equivalence relations defined on them.

The materialized :class:`CandidateStructure` builds the full pair-node graph
and is intended for small instances (tests, DOT dumps); the search core
answers the same equivalence queries implicitly from adjacency.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, MultiplexGraph, Problem, dominates
from .equivalence import structurally_equivalent

MatchPairs = list[tuple[int, int]]


def init_candidates(problem: Problem) -> list[set[int]]:
    """Initial candidate sets by per-channel degree dominance and label equality.

    Sound prefilter: a world vertex survives for template vertex ``u`` only
    if it has at least u's in- and out-degree in every channel (counting
    multiplicity) and carries u's label when u is labeled. An empty set is a
    legal result and signals unsatisfiability downstream.
    """
    t, w = problem.template, problem.world
    k = t.channels
    def degs(g: MultiplexGraph, v: int) -> tuple[list[int], list[int]]:
        ins, outs = [0] * k, [0] * k
        for tup in g.inn[v].values():
            for i, m in enumerate(tup):
                ins[i] += m
        for tup in g.out[v].values():
            for i, m in enumerate(tup):
                outs[i] += m
        return ins, outs

    wdegs = [degs(w, c) for c in range(w.vertex_count)]
    csets: list[set[int]] = []
    for u in range(t.vertex_count):
        tin, tout = degs(t, u)
        lbl = t.label(u)
        cs = set()
        for c in range(w.vertex_count):
            if lbl is not None and w.label(c) != lbl:
                continue
            cin, cout = wdegs[c]
            if all(ci >= ti for ci, ti in zip(cin, tin)) and \
               all(co >= to for co, to in zip(cout, tout)):
                cs.add(c)
        csets.append(cs)
    return csets


def joinable(problem: Problem, u: int, c: int, match: MatchPairs) -> bool:
    """True iff assigning ``u -> c`` violates no edge constraint from ``match``.

    Every template edge between ``u`` and a matched vertex must be supported
    (per-channel multiplicity dominance) by the corresponding world edge.
    Pairs of ``match`` whose template vertex is ``u`` itself are skipped.
    """
    t, w = problem.template, problem.world
    for v, img in match:
        if v == u:
            continue
        req = t.edge(v, u)
        if req is not None and not dominates(w.edge(img, c), req):
            return False
        req = t.edge(u, v)
        if req is not None and not dominates(w.edge(c, img), req):
            return False
    return True


def joinable_sets(problem: Problem, csets: list[set[int]],
                  match: MatchPairs) -> list[set[int]]:
    """Reduce every candidate set to the vertices joinable to ``match``."""
    return [{c for c in cs if joinable(problem, u, c, match)}
            for u, cs in enumerate(csets)]


@dataclass
class CandidateStructure:
    """The pair-node graph over (template vertex, candidate) pairs.

    There is an edge ``(u1,c1) -> (u2,c2)`` exactly when the template has an
    edge ``u1 -> u2`` and the world edge ``c1 -> c2`` dominates it in every
    positive channel.
    """

    problem: Problem
    csets: list[set[int]]
    nodes: list[tuple[int, int]]
    index: dict[tuple[int, int], int]
    pair_graph: Graph

    def candidate_equivalent(self, u: int, c1: int, c2: int) -> bool:
        """Candidate equivalence of ``c1, c2`` with respect to ``u``.

        Both outside ``C[u]`` counts as equivalent; both inside requires the
        pair nodes ``(u,c1)`` and ``(u,c2)`` to be structurally equivalent
        within the pair-node graph.
        """
        in1, in2 = c1 in self.csets[u], c2 in self.csets[u]
        if in1 != in2:
            return False
        if not in1:
            return True
        if c1 == c2:
            return True
        return structurally_equivalent(
            self.pair_graph, self.index[(u, c1)], self.index[(u, c2)])

    def fully_candidate_equivalent(self, c1: int, c2: int) -> bool:
        """Candidate equivalence with respect to every template vertex."""
        return all(self.candidate_equivalent(u, c1, c2)
                   for u in range(self.problem.template.vertex_count))


def build_candidate_structure(problem: Problem,
                              csets: list[set[int]]) -> CandidateStructure:
    """Materialize the pair-node graph for the given candidate sets."""
    t, w = problem.template, problem.world
    nodes = [(u, c) for u in range(t.vertex_count) for c in sorted(csets[u])]
    index = {node: i for i, node in enumerate(nodes)}
    pg = Graph(len(nodes))
    for i, (u1, c1) in enumerate(nodes):
        for u2, req in t.out[u1].items():
            for c2 in csets[u2]:
                if dominates(w.edge(c1, c2), req):
                    j = index[(u2, c2)]
                    pg.add_edge(i, j)
    return CandidateStructure(problem, [set(cs) for cs in csets], nodes, index, pg)


def candidate_equivalent(structure: CandidateStructure, u: int,
                         c1: int, c2: int) -> bool:
    return structure.candidate_equivalent(u, c1, c2)


def fully_candidate_equivalent(structure: CandidateStructure,
                               c1: int, c2: int) -> bool:
    return structure.fully_candidate_equivalent(c1, c2)


def greedy_node_cover(t: MultiplexGraph) -> tuple[int, ...]:
    """Greedy node cover: repeatedly take the vertex covering the most
    uncovered edges (ties to the lowest index) until no edges remain."""
    edges: set[tuple[int, int]] = {(u, v) for u in range(t.vertex_count)
                                   for v in t.out[u]}
    cover: list[int] = []
    while edges:
        incident = [0] * t.vertex_count
        for u, v in edges:
            incident[u] += 1
            if v != u:
                incident[v] += 1
        best = max(range(t.vertex_count), key=lambda v: (incident[v], -v))
        cover.append(best)
        edges = {(u, v) for (u, v) in edges if u != best and v != best}
    return tuple(sorted(cover))


def is_node_cover(t: MultiplexGraph, cover) -> bool:
    """True iff removing ``cover`` and incident edges leaves ``t`` edgeless."""
    cs = set(cover)
    return all(u in cs or v in cs
               for u in range(t.vertex_count) for v in t.out[u])


def node_cover_equivalent(csets: list[set[int]], cover, match: MatchPairs,
                          w1: int, w2: int) -> bool:
    """Node-cover equivalence: identical candidate membership outside the cover.

    ``csets`` must already be reduced to the vertices joinable to ``match``,
    and ``match`` must assign every cover vertex (contract error otherwise).
    """
    matched = {v for v, _ in match}
    missing = set(cover) - matched
    if missing:
        raise ValueError(f"node cover vertices {sorted(missing)} are not matched")
    cs = set(cover)
    return all((w1 in csets[u]) == (w2 in csets[u])
               for u in range(len(csets)) if u not in cs)
