"""Synthetic instance generators shared by the test suite and scripts.

Random problems optionally "plant" the template into the world under a
random injection so that satisfiable instances are common; the fixed
fixtures (three-vertex fan in a seven-vertex world, covered path, star
families) exercise every equivalence mode with hand-checkable counts.
"""

from __future__ import annotations

import random

from .graphs import Graph, MultiplexGraph, Problem


def toy_problem() -> Problem:
    """Three-vertex fan template in a seven-vertex world.

    Template 0->1, 0->2; world vertex 0 points at 1..4 and vertex 3 points
    at 4..6 (directed). Exactly 18 subgraph isomorphisms.
    """
    t = Graph(3)
    t.add_edge(0, 1)
    t.add_edge(0, 2)
    w = Graph(7)
    for v in (1, 2, 3, 4):
        w.add_edge(0, v)
    for v in (4, 5, 6):
        w.add_edge(3, v)
    return Problem(t, w)


def cover_problem() -> Problem:
    """Undirected path template whose greedy node cover is its two interior
    hubs; the world is two fused fans plus decoy edges so that non-cover
    candidates split into several membership regions."""
    t = Graph(5)
    for a, b in ((0, 1), (1, 2), (2, 3), (3, 4)):
        t.add_edge(a, b)
        t.add_edge(b, a)
    w = Graph(9)
    und = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (4, 6),
           (5, 6), (0, 7)]
    for a, b in und:
        w.add_edge(a, b)
        w.add_edge(b, a)
    return Problem(t, w, directed=False)


def star_problem(template_leaves: int, world_leaves: int,
                 channels: int = 1) -> Problem:
    """Out-star template (hub 0) inside a larger out-star world."""
    t = MultiplexGraph(template_leaves + 1, channels)
    for v in range(1, template_leaves + 1):
        t.add_edge(0, v, channel=1)
    w = MultiplexGraph(world_leaves + 1, channels)
    for v in range(1, world_leaves + 1):
        w.add_edge(0, v, channel=1)
    return Problem(t, w)


def huge_count_problem() -> Problem:
    """45-leaf star in a 60-leaf star: 60!/15! > 10^50 isomorphisms."""
    return star_problem(45, 60)


def random_multiplex_graph(rng: random.Random, n: int, channels: int,
                           edge_prob: float = 0.3,
                           max_multiplicity: int = 2,
                           self_loops: bool = False,
                           directed: bool = True) -> MultiplexGraph:
    """Erdos-Renyi-style multiplex graph with random multiplicities.

    Undirected graphs are stored as symmetric directed edges."""
    g = MultiplexGraph(n, channels)
    for u in range(n):
        for v in range(n):
            if u == v and not self_loops:
                continue
            if not directed and v < u:
                continue
            for ch in range(1, channels + 1):
                if rng.random() < edge_prob:
                    mult = rng.randint(1, max_multiplicity)
                    g.add_edge(u, v, ch, mult)
                    if not directed and v != u:
                        g.add_edge(v, u, ch, mult)
    return g


def random_problem(rng: random.Random,
                   template_size: tuple[int, int] = (3, 6),
                   world_size: tuple[int, int] = (6, 12),
                   channels: tuple[int, ...] = (1, 2, 3),
                   edge_prob: float = 0.3,
                   planted: bool = True,
                   self_loops: bool = False,
                   directed: bool = True) -> Problem:
    """Random multiplex instance; with ``planted`` the template is embedded
    into the world under a random injection, so most instances are
    satisfiable without being trivial."""
    nt = rng.randint(*template_size)
    nw = rng.randint(*world_size)
    k = rng.choice(channels)
    t = random_multiplex_graph(rng, nt, k, edge_prob,
                               self_loops=self_loops, directed=directed)
    w = random_multiplex_graph(rng, nw, k, edge_prob,
                               self_loops=self_loops, directed=directed)
    if planted:
        image = rng.sample(range(nw), nt)
        for u in range(nt):
            for v, mult in t.out[u].items():
                have = w.edge(image[u], image[v]) or (0,) * k
                for ch, need in enumerate(mult, start=1):
                    gap = need - have[ch - 1]
                    if gap > 0:
                        w.add_edge(image[u], image[v], ch, gap)
    return Problem(t, w, directed=directed)
