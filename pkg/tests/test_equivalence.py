"""Structural equivalence, partitions, and interchange counting."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from eqmatch.equivalence import (Partition, count_factorial_lower_bound,
                                 count_tewe, find_equivalence_classes,
                                 structurally_equivalent)
from eqmatch.graphs import Graph, MultiplexGraph, Problem
from eqmatch.synth import random_multiplex_graph, random_problem, toy_problem

from oracles import (brute_force_solutions, naive_structural_partition,
                     orbit_count)


def undirected(n, pairs):
    g = Graph(n)
    for a, b in pairs:
        g.add_edge(a, b)
        g.add_edge(b, a)
    return g


class TestStructurallyEquivalent:
    def test_twins_with_shared_neighbor(self):
        g = undirected(3, [(0, 2), (1, 2)])
        assert structurally_equivalent(g, 0, 1)
        assert not structurally_equivalent(g, 0, 2)

    def test_mutual_edge_pair(self):
        # An edge between the pair is fine when it is mutual.
        g = undirected(3, [(0, 1), (0, 2), (1, 2)])
        assert structurally_equivalent(g, 0, 1)

    def test_one_way_edge_between_pair(self):
        g = Graph(2)
        g.add_edge(0, 1)
        assert not structurally_equivalent(g, 0, 1)

    def test_self_loop_must_agree(self):
        g = Graph(2)
        g.add_edge(0, 0)
        assert not structurally_equivalent(g, 0, 1)
        g.add_edge(1, 1)
        assert structurally_equivalent(g, 0, 1)

    def test_labels_must_agree(self):
        g = Graph(2, labels=["x", "y"])
        assert not structurally_equivalent(g, 0, 1)

    def test_multiplicities_must_agree(self):
        g = MultiplexGraph(3, 1)
        g.add_edge(0, 2, 1, 2)
        g.add_edge(1, 2, 1, 1)
        assert not structurally_equivalent(g, 0, 1)

    def test_reflexive(self):
        g = Graph(1)
        assert structurally_equivalent(g, 0, 0)

    def test_bounds(self):
        with pytest.raises(IndexError):
            structurally_equivalent(Graph(1), 0, 1)


class TestPartition:
    def test_trivial(self):
        p = Partition.trivial(3)
        assert p.classes == ((0,), (1,), (2,))
        assert not p.same_class(0, 1)

    def test_from_groups_sorted_and_covering(self):
        p = Partition.from_groups([[2, 1], [0]], 3)
        assert p.classes == ((0,), (1, 2))
        assert p.class_of == (0, 1, 1)
        with pytest.raises(ValueError):
            Partition.from_groups([[0]], 2)

    def test_to_json(self):
        assert Partition.trivial(2).to_json() == [[0], [1]]


class TestFindEquivalenceClasses:
    def test_toy_world(self):
        w = toy_problem().world
        p = find_equivalence_classes(w)
        assert (1, 2) in p.classes  # sink leaves of the first fan
        assert (5, 6) in p.classes  # sink leaves of the second fan
        assert p.class_of[0] != p.class_of[3]  # hubs differ

    def test_matches_naive_oracle_randomized(self, rng):
        for _ in range(120):
            n = rng.randint(1, 40)
            g = random_multiplex_graph(
                rng, n, rng.choice([1, 2]),
                edge_prob=rng.choice([0.03, 0.1, 0.3]),
                self_loops=rng.random() < 0.3,
                directed=rng.random() < 0.5)
            got = sorted(tuple(c) for c in find_equivalence_classes(g).classes)
            want = sorted(tuple(sorted(grp))
                          for grp in naive_structural_partition(g))
            assert got == want

    def test_empty_graph(self):
        assert find_equivalence_classes(Graph(0)).classes == ()


class TestCountFactorialLowerBound:
    def test_planted_pairs_fixture(self):
        # Eleven mutually-equivalent pairs hanging off one hub.
        g = Graph(23)
        for i in range(11):
            a, b = 2 * i, 2 * i + 1
            g.add_edge(a, b)
            g.add_edge(b, a)
            g.add_edge(22, a)
            g.add_edge(22, b)
        p = find_equivalence_classes(g)
        assert sorted(len(c) for c in p.classes) == [1] + [2] * 11
        assert count_factorial_lower_bound(p) == 2 ** 11 == 2048

    def test_trivial_partition(self):
        assert count_factorial_lower_bound(Partition.trivial(5)) == 1


class TestCountTewe:
    def test_rejects_non_isomorphism(self):
        p = toy_problem()
        tp = Partition.trivial(3)
        wp = Partition.trivial(7)
        with pytest.raises(ValueError):
            count_tewe(p, {0: 1, 1: 2, 2: 3}, tp, wp)

    def test_trivial_partitions_count_one(self):
        p = toy_problem()
        assert count_tewe(p, {0: 0, 1: 1, 2: 2},
                          Partition.trivial(3), Partition.trivial(7)) == 1

    def test_toy_tewe_class(self):
        p = toy_problem()
        tp = find_equivalence_classes(p.template)  # classes {0}, {1,2}
        wp = find_equivalence_classes(p.world)
        # 1 and 2 fill the world class {1,2}: 2! * C(2,2) = 2.
        assert count_tewe(p, {0: 0, 1: 1, 2: 2}, tp, wp) == 2
        # 1 and 3 straddle classes {1,2} and {3}: 2! * C(2,1) * C(1,1) = 4.
        assert count_tewe(p, {0: 0, 1: 1, 2: 3}, tp, wp) == 4

    def test_matches_orbit_oracle_randomized(self, rng):
        done = 0
        while done < 80:
            p = random_problem(rng, template_size=(3, 5), world_size=(5, 9))
            sols = brute_force_solutions(p)
            if not sols:
                continue
            f = rng.choice(sols)
            tp = find_equivalence_classes(p.template)
            wp = find_equivalence_classes(p.world)
            got = count_tewe(p, f, tp, wp)
            want = orbit_count(p, f, [list(c) for c in tp.classes],
                               [list(c) for c in wp.classes])
            assert got == want
            done += 1


@st.composite
def graphs(draw):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    n = draw(st.integers(min_value=0, max_value=24))
    rng = random.Random(seed)
    return random_multiplex_graph(rng, n, draw(st.integers(1, 2)),
                                  edge_prob=draw(st.sampled_from([0.05, 0.2, 0.5])),
                                  self_loops=draw(st.booleans()))


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_partition_members_pairwise_equivalent(g):
    p = find_equivalence_classes(g)
    for cls in p.classes:
        for v in cls:
            assert structurally_equivalent(g, cls[0], v)
