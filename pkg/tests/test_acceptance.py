"""Acceptance gate: nine end-to-end criteria, one test each.

Each test prints an ``ACCEPTANCE n: PASS`` line on the terminal when its
criterion holds (pytest reports the failure otherwise), so a ``pytest -v``
run doubles as the acceptance report.
"""

import random
import time
from math import factorial

import pytest

from eqmatch.candidates import (build_candidate_structure, greedy_node_cover,
                                init_candidates)
from eqmatch.equivalence import (count_factorial_lower_bound, count_tewe,
                                 find_equivalence_classes,
                                 structurally_equivalent)
from eqmatch.graphs import Graph
from eqmatch.search import (ALL_MODES, Mode, apply_filters,
                            expand_solution_class, solve)
from eqmatch.synth import (huge_count_problem, random_multiplex_graph,
                           random_problem, star_problem, toy_problem)

from oracles import (brute_force_count, brute_force_solutions,
                     naive_structural_partition, orbit_count, verify_mapping)

EXPECTED_TOY = {Mode.NE: 18, Mode.TE: 9, Mode.WE: 10, Mode.TEWE: 6,
                Mode.CE: 5, Mode.FE: 2, Mode.NC: 2}


@pytest.fixture
def announce(capsys):
    def _announce(n, message):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: PASS — {message}")
    return _announce


def random_instance(rng, i, **overrides):
    kwargs = dict(template_size=(3, 6), world_size=(6, 12),
                  channels=(1, 2, 3),
                  edge_prob=rng.choice([0.15, 0.25, 0.35, 0.5]),
                  directed=i % 2 == 0, planted=i % 5 != 4)
    kwargs.update(overrides)
    return random_problem(rng, **kwargs)


def test_criterion_1_toy_golden(announce):
    start = time.monotonic()
    p = toy_problem()
    for mode in ALL_MODES:
        report, _ = solve(p, mode, collect=False)
        assert report.status == "completed"
        assert report.representatives == EXPECTED_TOY[mode], mode
        assert report.total == 18, mode
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    announce(1, f"toy counts NE=18 TE=9 WE=10 TEWE=6 CE=5 FE=2 NC=2, "
                f"total 18 in every mode ({elapsed:.2f}s)")


def test_criterion_2_oracle_equivalence(announce):
    rng = random.Random(0xAC2)
    start = time.monotonic()
    instances = 500
    for i in range(instances):
        p = random_instance(rng, i)
        expect = brute_force_count(p)
        for mode in ALL_MODES:
            report, _ = solve(p, mode, timeout=60, collect=False)
            assert report.status == "completed", (i, mode)
            assert report.total == expect, (i, mode, report.total, expect)
    elapsed = time.monotonic() - start
    assert elapsed < 300
    announce(2, f"{instances} random instances x 7 modes equal the "
                f"brute-force count ({elapsed:.1f}s)")


def test_criterion_3_counting_propositions(announce):
    rng = random.Random(0xAC3)
    done = 0
    while done < 200:
        p = random_instance(rng, done)
        sols = brute_force_solutions(p)
        if not sols:
            continue
        f = rng.choice(sols)
        tp = find_equivalence_classes(p.template)
        wp = find_equivalence_classes(p.world)
        tgroups = [list(c) for c in tp.classes]
        wgroups = [list(c) for c in wp.classes]
        assert count_tewe(p, f, tp, wp) == orbit_count(p, f, tgroups, wgroups)
        # The factorial bound counts template-side swaps only.
        assert count_factorial_lower_bound(tp) == \
            orbit_count(p, f, tgroups, [[c] for c in range(p.world.vertex_count)])
        done += 1
    # Eleven planted equivalent pairs on a hub reproduce 2^11 = 2048.
    g = Graph(23)
    for i in range(11):
        a, b = 2 * i, 2 * i + 1
        g.add_edge(a, b)
        g.add_edge(b, a)
        g.add_edge(22, a)
        g.add_edge(22, b)
    assert count_factorial_lower_bound(find_equivalence_classes(g)) == 2048
    announce(3, "count_tewe and count_factorial_lower_bound match orbit "
                "enumeration on 200 instances; planted-pairs fixture gives 2^11")


def test_criterion_4_hierarchy(announce):
    rng = random.Random(0xAC4)
    done = 0
    pairs = 0
    while done < 200:
        p = random_instance(rng, done, self_loops=False)
        sols = brute_force_solutions(p)
        if not sols:
            continue
        f = rng.choice(sols)
        cover = greedy_node_cover(p.template)
        match = [(u, f[u]) for u in cover]
        csets = apply_filters(match, init_candidates(p), p)
        used = {c for _, c in match}
        structure = build_candidate_structure(p, csets)
        from eqmatch.candidates import node_cover_equivalent
        nw = p.world.vertex_count
        nt = p.template.vertex_count
        for w1 in range(nw):
            for w2 in range(w1 + 1, nw):
                if w1 in used or w2 in used:
                    continue
                s_eq = structurally_equivalent(p.world, w1, w2)
                nm_eq = node_cover_equivalent(csets, cover, match, w1, w2)
                c_eq = structure.fully_candidate_equivalent(w1, w2)
                ct_eq = all(structure.candidate_equivalent(u, w1, w2)
                            for u in range(nt))
                assert not s_eq or nm_eq, "~s must imply ~N,M"
                assert nm_eq == c_eq, "~N,M must coincide with ~c"
                assert not c_eq or ct_eq, "~c must imply ~c,t"
                pairs += 1
        done += 1
    announce(4, f"equivalence hierarchy holds on 200 instances "
                f"({pairs} world pairs, zero violations)")


def test_criterion_5_interchange_soundness(announce):
    rng = random.Random(0xAC5)
    checked = 0
    for i in range(60):
        p = random_instance(rng, i, template_size=(3, 5), world_size=(5, 9))
        expect = {tuple(sorted(f.items())) for f in brute_force_solutions(p)}
        if len(expect) > 400:
            continue
        for mode in ALL_MODES:
            _, classes = solve(p, mode)
            seen = set()
            for sc in classes:
                expanded = 0
                for f in expand_solution_class(sc):
                    expanded += 1
                    key = tuple(sorted(f.items()))
                    assert key not in seen, (i, mode, "classes overlap")
                    seen.add(key)
                    assert verify_mapping(p, f), (i, mode)
                assert expanded == sc.count, (i, mode)
                checked += 1
            assert seen == expect, (i, mode)
    announce(5, f"{checked} solution classes expand exactly, disjointly, "
                f"and verify independently")


def test_criterion_6_partition_correctness(announce):
    rng = random.Random(0xAC6)
    start = time.monotonic()
    for i in range(500):
        n = rng.randint(1, 64)
        g = random_multiplex_graph(
            rng, n, rng.choice([1, 2]),
            edge_prob=rng.choice([0.02, 0.05, 0.1, 0.3]),
            self_loops=rng.random() < 0.3,
            directed=rng.random() < 0.5)
        got = sorted(tuple(c) for c in find_equivalence_classes(g).classes)
        want = sorted(tuple(sorted(grp))
                      for grp in naive_structural_partition(g))
        assert got == want, i
    announce(6, f"find_equivalence_classes equals the naive pairwise "
                f"partition on 500 graphs ({time.monotonic() - start:.1f}s)")


def test_criterion_7_compression_benefit(announce):
    for leaves, fanout in ((8, 16), (9, 20), (10, 24)):
        p = star_problem(leaves, fanout)
        fe, _ = solve(p, Mode.FE, collect=False)
        ne_rate = solve(p, Mode.NE, timeout=0.2, collect=False)[0]
        assert fe.status == "completed"
        assert float(fe.compression_rate) <= 1e-3, (leaves, fanout)
        # NE classes are singletons, so its rate is identically 1 even on
        # the partial enumeration.
        assert float(ne_rate.compression_rate) == 1.0
    announce(7, "star/fan instances: FE compression rate <= 1e-3, NE rate = 1")


def test_criterion_8_big_count(announce):
    p = huge_count_problem()
    expect = factorial(60) // factorial(15)
    assert expect > 10 ** 50
    for mode in (Mode.WE, Mode.FE):
        report, _ = solve(p, mode, collect=False)
        assert report.status == "completed"
        assert str(report.total) == str(expect), mode
    announce(8, f"60!/15! ({len(str(expect))} digits) counted exactly in "
                f"WE and FE modes")


def test_criterion_9_timeout_contract(announce):
    p = star_problem(9, 26)
    complete, _ = solve(p, Mode.FE, collect=False)
    for limit in (0.05, 0.2, 0.6):
        start = time.monotonic()
        report, _ = solve(p, Mode.NE, timeout=limit, collect=False)
        elapsed = time.monotonic() - start
        assert report.status == "timed_out", limit
        assert elapsed <= limit + 0.5, limit
        assert report.total <= complete.total
    totals = [solve(p, Mode.NE, timeout=t, collect=False)[0].total
              for t in (0.05, 0.2, 0.6)]
    assert totals == sorted(totals)
    announce(9, "timeouts honored within t + 0.5s with monotone partial counts")
