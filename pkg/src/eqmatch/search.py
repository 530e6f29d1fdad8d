"""Equivalence-aware recursive tree search over template-in-world matching.

Seven search modes share one recursion. They differ in how candidates for
the current template vertex are grouped into interchangeable cells and in
how an emitted representative is weighted:

* ``ne``   -- plain enumeration, every solution is its own class.
* ``te``   -- template structural equivalence; sibling branches of an
  exhausted assignment are pruned for equivalent template vertices.
* ``we``   -- one representative per static world class.
* ``tewe`` -- both of the above; pruning removes whole world classes.
* ``ce``   -- candidate equivalence recomputed per assignment, usable only
  when a cell's members are candidates of no other unmatched vertex
  (blocked cells fall back to static world classes, which are always safe).
* ``fe``   -- full candidate equivalence (with respect to every template
  vertex), always usable.
* ``nc``   -- candidate-equivalence search until a greedy node cover of the
  template is fully matched, then membership-vector grouping.

Candidate sets kept during search include already-used world vertices (a
used vertex stays listed while it remains joinable); this lets recomputed
cells report the full interchange class, with multipliers discounting the
members consumed by earlier assignments.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, permutations
from math import prod

from .graphs import MultiplexGraph, Problem, dominates
from .equivalence import Partition, count_tewe, find_equivalence_classes
from .candidates import greedy_node_cover, init_candidates


class Mode(str, Enum):
    NE = "ne"
    TE = "te"
    WE = "we"
    TEWE = "tewe"
    CE = "ce"
    FE = "fe"
    NC = "nc"


ALL_MODES = tuple(Mode)

_NOT_CANDIDATE = 0  # token for "outside this vertex's candidate set"


@dataclass(frozen=True)
class Slot:
    """One assignment step of a solution class.

    ``template_class`` is the full template equivalence class for modes that
    interchange template vertices, otherwise the singleton ``(vertex,)``.
    ``members`` is the world interchange class at assignment time (including
    members already used by earlier slots); ``multiplier`` counts the
    members that were still available.
    """

    template_vertex: int
    template_class: tuple[int, ...]
    world_vertex: int
    members: tuple[int, ...]
    multiplier: int


@dataclass(frozen=True)
class SolutionClass:
    """A representative solution plus the interchanges it stands for."""

    mode: Mode
    slots: tuple[Slot, ...]
    count: int

    def mapping(self) -> dict[int, int]:
        return {s.template_vertex: s.world_vertex for s in self.slots}

    def to_json(self) -> dict:
        return {
            "assignments": [[s.template_vertex, list(s.members)] for s in self.slots],
            "count": str(self.count),
        }


@dataclass
class SearchReport:
    """Per-run statistics; counts are lower bounds unless status is completed."""

    representatives: int
    total: int
    wall_time_s: float
    status: str  # "completed" | "timed_out"

    @property
    def compression_rate(self) -> Fraction | None:
        if self.total == 0:
            return None
        return Fraction(self.representatives, self.total)

    def to_json(self) -> dict:
        rate = self.compression_rate
        return {
            "representatives": self.representatives,
            "total": str(self.total),
            "compression_rate": None if rate is None else float(rate),
            "wall_time_s": self.wall_time_s,
            "status": self.status,
        }


class _Stop(Exception):
    pass


def _template_neighbor_profile(t: MultiplexGraph):
    """For each vertex: [(neighbor, out requirement, in requirement)] plus
    the self-loop requirement, aggregating both edge directions."""
    profiles = []
    selfs = []
    for u in range(t.vertex_count):
        nbrs = set(t.out[u]) | set(t.inn[u])
        nbrs.discard(u)
        profiles.append(tuple((u2, t.edge(u, u2), t.edge(u2, u))
                              for u2 in sorted(nbrs)))
        selfs.append(t.edge(u, u))
    return profiles, selfs


class _Searcher:
    def __init__(self, problem: Problem, mode: Mode, timeout: float,
                 max_solutions: int | None, on_class, collect: bool):
        if timeout <= 0:
            raise ValueError("timeout must be positive")
        self.problem = problem
        self.t = problem.template
        self.w = problem.world
        self.nt = self.t.vertex_count
        self.mode = mode
        self.deadline = time.monotonic() + timeout
        self.max_solutions = max_solutions
        self.on_class = on_class
        self.collect = collect

        self.tnbrs, self.tself = _template_neighbor_profile(self.t)
        self.tp = (find_equivalence_classes(self.t)
                   if mode in (Mode.TE, Mode.TEWE) else Partition.trivial(self.nt))
        self.wp = (find_equivalence_classes(self.w)
                   if mode in (Mode.WE, Mode.TEWE, Mode.CE)
                   else Partition.trivial(self.w.vertex_count))
        self.cover: frozenset[int] = (frozenset(greedy_node_cover(self.t))
                                      if mode == Mode.NC else frozenset())

        self.match: list[tuple[int, int]] = []
        self.assigned: dict[int, int] = {}
        self.used: set[int] = set()
        self.slots: list[Slot] = []
        self.representatives = 0
        self.total = 0
        self.classes: list[SolutionClass] = []
        self.status = "completed"

    # -- filtering ---------------------------------------------------------

    def _apply_filters(self, jcands: list[set[int]]) -> list[set[int]]:
        """Joinability plus arc-consistency fixpoint.

        Matched vertices collapse to their assignment; unmatched vertices
        keep used-but-joinable candidates (they still belong to interchange
        classes, discounted by the multipliers)."""
        w = self.w
        jc: list[set[int]] = []
        for u, cs in enumerate(jcands):
            if u in self.assigned:
                jc.append({self.assigned[u]})
                continue
            keep = set()
            selfreq = self.tself[u]
            for c in cs:
                if selfreq is not None and not dominates(w.edge(c, c), selfreq):
                    continue
                if self._joinable(u, c):
                    keep.add(c)
            jc.append(keep)
        changed = True
        while changed:
            changed = False
            for u in range(self.nt):
                if not jc[u]:
                    continue
                drop = [c for c in jc[u] if not self._supported(u, c, jc)]
                if drop:
                    jc[u] -= set(drop)
                    changed = True
        return jc

    def _joinable(self, u: int, c: int) -> bool:
        t, w = self.t, self.w
        for v, img in self.match:
            if v == u:
                continue
            req = t.edge(v, u)
            if req is not None and not dominates(w.edge(img, c), req):
                return False
            req = t.edge(u, v)
            if req is not None and not dominates(w.edge(c, img), req):
                return False
        return True

    def _supported(self, u: int, c: int, jc: list[set[int]]) -> bool:
        w = self.w
        for u2, req_out, req_in in self.tnbrs[u]:
            if req_out is not None and \
               not any(dominates(w.edge(c, c2), req_out) for c2 in jc[u2]):
                return False
            if req_in is not None and \
               not any(dominates(w.edge(c2, c), req_in) for c2 in jc[u2]):
                return False
        return True

    # -- vertex ordering ---------------------------------------------------

    def _next_vertex(self, jc: list[set[int]]) -> int:
        used = self.used
        def key(u: int):
            tier = 0
            if self.mode == Mode.NC:
                tier = 0 if u in self.cover else 1
            return (tier, len(jc[u] - used), -self.t.degree(u), u)
        return min((u for u in range(self.nt) if u not in self.assigned), key=key)

    # -- dynamic equivalence ----------------------------------------------

    def _sig(self, uprime: int, c: int, jc: list[set[int]]):
        w = self.w
        parts = []
        for u2, req_out, req_in in self.tnbrs[uprime]:
            if req_out is not None:
                parts.append(frozenset(
                    c2 for c2 in jc[u2] if dominates(w.edge(c, c2), req_out)))
            if req_in is not None:
                parts.append(frozenset(
                    c2 for c2 in jc[u2] if dominates(w.edge(c2, c), req_in)))
        return tuple(parts)

    def _pair_equivalent(self, uprime: int, c1: int, c2: int,
                         jc: list[set[int]]) -> bool:
        """Literal pair-node structural equivalence, for templates with
        self-loops where the signature shortcut does not apply."""
        w = self.w
        pair = {(uprime, c1), (uprime, c2)}
        nbrs = list(self.tnbrs[uprime])
        selfreq = self.tself[uprime]
        if selfreq is not None:
            nbrs = nbrs + [(uprime, selfreq, selfreq)]
        for u2, req_out, req_in in nbrs:
            for c3 in jc[u2]:
                if (u2, c3) in pair:
                    continue
                if req_out is not None and \
                   dominates(w.edge(c1, c3), req_out) != dominates(w.edge(c2, c3), req_out):
                    return False
                if req_in is not None and \
                   dominates(w.edge(c3, c1), req_in) != dominates(w.edge(c3, c2), req_in):
                    return False
        if selfreq is not None:
            if dominates(w.edge(c1, c2), selfreq) != dominates(w.edge(c2, c1), selfreq):
                return False
            if dominates(w.edge(c1, c1), selfreq) != dominates(w.edge(c2, c2), selfreq):
                return False
        return True

    def _labels_wrt(self, uprime: int, universe, jc: list[set[int]]) -> dict[int, object]:
        """Equivalence-class labels, with respect to ``uprime``, for every
        candidate in ``universe`` (which must lie inside ``jc[uprime]``)."""
        if self.tself[uprime] is None:
            return {c: (1, self._sig(uprime, c, jc)) for c in universe}
        reps: list[int] = []
        labels: dict[int, object] = {}
        for c in sorted(universe):
            for i, r in enumerate(reps):
                if self._pair_equivalent(uprime, r, c, jc):
                    labels[c] = (2, i)
                    break
            else:
                labels[c] = (2, len(reps))
                reps.append(c)
        return labels

    def _ce_cells(self, u: int, jc: list[set[int]]) -> list[list[int]]:
        labels = self._labels_wrt(u, jc[u], jc)
        dyn: dict[object, list[int]] = {}
        for c in jc[u]:
            dyn.setdefault(labels[c], []).append(c)
        others = [u2 for u2 in range(self.nt)
                  if u2 != u and u2 not in self.assigned]
        cells: list[list[int]] = []
        fallback: dict[int, list[int]] = {}
        for members in dyn.values():
            blocked = any(c in jc[u2] for u2 in others for c in members)
            if not blocked:
                cells.append(sorted(members))
            else:
                for c in members:
                    fallback.setdefault(self.wp.class_of[c], []).append(c)
        cells.extend(sorted(g) for g in fallback.values())
        return cells

    def _fe_cells(self, u: int, jc: list[set[int]]) -> list[list[int]]:
        universe = sorted(jc[u])
        tokens: dict[int, list[object]] = {c: [] for c in universe}
        memo: dict[object, dict[int, object]] = {}
        frozen = [frozenset(s) for s in jc]
        # Matched vertices are fixed points; only unmatched vertices can
        # distinguish candidates that remain interchangeable.
        for uprime in (v for v in range(self.nt) if v not in self.assigned):
            inside = [c for c in universe if c in jc[uprime]]
            profile = (self.tnbrs[uprime], self.tself[uprime], frozen[uprime],
                       tuple(frozen[u2] for u2, _, _ in self.tnbrs[uprime]))
            if profile in memo:
                labels = memo[profile]
            else:
                labels = self._labels_wrt(uprime, inside, jc)
                memo[profile] = labels
            for c in universe:
                tokens[c].append(labels.get(c, _NOT_CANDIDATE)
                                 if c in jc[uprime] else _NOT_CANDIDATE)
        groups: dict[object, list[int]] = {}
        for c in universe:
            groups.setdefault(tuple(tokens[c]), []).append(c)
        return [sorted(g) for g in groups.values()]

    def _nc_cells(self, u: int, jc: list[set[int]]) -> list[list[int]]:
        noncover = [v for v in range(self.nt)
                    if v not in self.cover and v not in self.assigned]
        groups: dict[frozenset[int], list[int]] = {}
        for c in jc[u]:
            vec = frozenset(v for v in noncover if c in jc[v])
            groups.setdefault(vec, []).append(c)
        return [sorted(g) for g in groups.values()]

    # -- branch generation -------------------------------------------------

    def _generate(self, u: int, jc: list[set[int]]):
        """Entries (representative, members, multiplier) for branching on ``u``."""
        mode = self.mode
        used = self.used
        if mode in (Mode.NE, Mode.TE):
            return [(c, (c,), 1) for c in sorted(jc[u] - used)]
        if mode in (Mode.WE, Mode.TEWE):
            cells_by_class: dict[int, tuple[int, ...]] = {}
            for c in jc[u]:
                idx = self.wp.class_of[c]
                if idx not in cells_by_class:
                    cells_by_class[idx] = self.wp.classes[idx]
            cells = list(cells_by_class.values())
        elif mode == Mode.CE:
            cells = self._ce_cells(u, jc)
        elif mode == Mode.FE:
            cells = self._fe_cells(u, jc)
        else:  # NC
            if self.cover <= set(self.assigned):
                cells = self._nc_cells(u, jc)
            else:
                cells = self._ce_cells(u, jc)
        entries = []
        for members in cells:
            avail = [c for c in members if c in jc[u] and c not in used]
            if not avail:
                continue
            entries.append((min(avail), tuple(sorted(members)),
                            len(members) - sum(1 for c in members if c in used)))
        entries.sort(key=lambda e: e[0])
        return entries

    def _te_prune(self, u: int, rep: int, jc: list[set[int]]) -> None:
        if self.mode == Mode.TEWE:
            removal = set(self.wp.classes[self.wp.class_of[rep]])
        else:
            removal = {rep}
        for u2 in self.tp.classes[self.tp.class_of[u]]:
            if u2 != u and u2 not in self.assigned:
                jc[u2] -= removal

    # -- recursion ---------------------------------------------------------

    def _emit(self) -> None:
        mode = self.mode
        if mode in (Mode.NE, Mode.TE, Mode.WE, Mode.TEWE):
            count = count_tewe(self.problem, dict(self.assigned), self.tp, self.wp)
        else:
            count = prod(s.multiplier for s in self.slots)
        sc = SolutionClass(mode, tuple(self.slots), count)
        self.representatives += 1
        self.total += count
        if self.on_class is not None:
            self.on_class(sc)
        if self.collect:
            self.classes.append(sc)
        if self.max_solutions is not None and self.representatives >= self.max_solutions:
            raise _Stop()

    def _recurse(self, jcands: list[set[int]]) -> None:
        if time.monotonic() >= self.deadline:
            raise _Stop()
        if len(self.match) == self.nt:
            self._emit()
            return
        jc = self._apply_filters(jcands)
        used = self.used
        for u in range(self.nt):
            if u not in self.assigned and not (jc[u] - used):
                return
        u = self._next_vertex(jc)
        tclass = self.tp.classes[self.tp.class_of[u]]
        for rep, members, mult in self._generate(u, jc):
            self.match.append((u, rep))
            self.assigned[u] = rep
            self.used.add(rep)
            self.slots.append(Slot(u, tclass, rep, members, mult))
            self._recurse(jc)
            self.slots.pop()
            self.used.discard(rep)
            del self.assigned[u]
            self.match.pop()
            if self.mode in (Mode.TE, Mode.TEWE):
                self._te_prune(u, rep, jc)

    def run(self) -> SearchReport:
        start = time.monotonic()
        try:
            if self.nt == 0:
                # The empty map is the unique isomorphism from an empty template.
                self._emit()
            elif self.nt <= self.w.vertex_count:
                self._recurse(init_candidates(self.problem))
        except _Stop:
            self.status = "timed_out"
        return SearchReport(self.representatives, self.total,
                            time.monotonic() - start, self.status)


def solve(problem: Problem, mode: Mode | str, timeout: float = 600.0,
          max_solutions: int | None = None, on_class=None,
          collect: bool = True) -> tuple[SearchReport, list[SolutionClass]]:
    """Enumerate the solution space of ``problem`` under ``mode``.

    Returns the report and the emitted solution classes (empty when
    ``collect`` is false; ``on_class`` streams them either way). When the
    run completes, ``total`` is the exact number of subgraph isomorphisms
    and the classes are disjoint and jointly exhaustive; after a timeout or
    a ``max_solutions`` stop the counts are lower bounds.
    """
    searcher = _Searcher(problem, Mode(mode), timeout, max_solutions,
                         on_class, collect)
    report = searcher.run()
    return report, searcher.classes


def apply_filters(match, csets: list[set[int]], problem: Problem) -> list[set[int]]:
    """Reduced candidate sets: joinable to ``match``, used vertices removed,
    then an arc-consistency fixpoint over template edges."""
    searcher = _Searcher(problem, Mode.NE, timeout=1.0, max_solutions=None,
                         on_class=None, collect=False)
    searcher.match = list(match)
    searcher.assigned = dict(match)
    searcher.used = {wv for _, wv in match}
    jc = searcher._apply_filters([set(cs) for cs in csets])
    out = []
    for u, cs in enumerate(jc):
        if u in searcher.assigned:
            out.append({searcher.assigned[u]})
        else:
            out.append(cs - searcher.used)
    return out


def next_template_vertex(problem: Problem, csets: list[set[int]], matched,
                         mode: Mode | str = Mode.NE, cover=()) -> int:
    """The branching vertex: (node-cover tier,) smallest candidate set,
    ties by max template degree, then lowest index."""
    mode = Mode(mode)
    t = problem.template
    matched = set(matched)
    cover = set(cover)
    def key(u: int):
        tier = (0 if u in cover else 1) if mode == Mode.NC else 0
        return (tier, len(csets[u]), -t.degree(u), u)
    choices = [u for u in range(t.vertex_count) if u not in matched]
    if not choices:
        raise ValueError("no unmatched template vertex")
    return min(choices, key=key)


def expansion_count_of(sc: SolutionClass) -> int:
    """Recompute the exact expansion count of ``sc`` from its slots.

    For all modes but ``tewe`` this is the product of slot multipliers,
    times ``prod |C_i|!`` over template classes when template vertices are
    interchanged. With both equivalences active the factors interact (two
    same-class template vertices may land in one world class), so the count
    follows the per-class binomial product over the slot incidence instead.
    """
    from math import comb, factorial

    if sc.mode != Mode.TEWE:
        result = prod(s.multiplier for s in sc.slots)
        if sc.mode == Mode.TE:
            for tcls in {s.template_class for s in sc.slots}:
                result *= factorial(len(tcls))
        return result
    tclasses = []
    for s in sc.slots:
        if s.template_class not in tclasses:
            tclasses.append(s.template_class)
    incidence: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    wclasses: dict[tuple[int, ...], None] = {}
    for s in sc.slots:
        wclasses.setdefault(s.members, None)
        key = (s.template_class, s.members)
        incidence[key] = incidence.get(key, 0) + 1
    result = prod(factorial(len(t)) for t in tclasses)
    for wcls in wclasses:
        taken = 0
        for tcls in tclasses:
            k = incidence.get((tcls, wcls), 0)
            if k:
                result *= comb(len(wcls) - taken, k)
                taken += k
    return result


def expand_solution_class(sc: SolutionClass):
    """Yield every full mapping represented by ``sc`` (each exactly once)."""
    if sc.mode in (Mode.CE, Mode.FE, Mode.NC):
        yield from _expand_slotwise(sc.slots)
    else:
        yield from _expand_orbit(sc.slots)


def _expand_slotwise(slots, chosen=None, index=0):
    chosen = chosen or {}
    if index == len(slots):
        yield dict(chosen)
        return
    s = slots[index]
    for c in s.members:
        if c not in chosen.values():
            chosen[s.template_vertex] = c
            yield from _expand_slotwise(slots, chosen, index + 1)
            del chosen[s.template_vertex]


def _expand_orbit(slots):
    """Expansion for the static modes: all maps preserving the per
    (template class, world class) incidence counts of the representative."""
    tclasses: dict[tuple[int, ...], list[Slot]] = {}
    for s in slots:
        tclasses.setdefault(s.template_class, []).append(s)
    order = list(tclasses.items())

    def rec(i: int, taken: frozenset[int], images: list[tuple[tuple[int, ...], list[int]]]):
        if i == len(order):
            # assign members of each template class to its image set in all orders
            def assign(j: int, acc: dict[int, int]):
                if j == len(images):
                    yield dict(acc)
                    return
                tcls, img = images[j]
                for perm in permutations(img):
                    for v, c in zip(tcls, perm):
                        acc[v] = c
                    yield from assign(j + 1, acc)
                    for v in tcls:
                        del acc[v]
            yield from assign(0, {})
            return
        tcls, cls_slots = order[i]
        # group this class's slots by world class
        wcells: dict[tuple[int, ...], int] = {}
        for s in cls_slots:
            wcells[s.members] = wcells.get(s.members, 0) + 1
        cells = list(wcells.items())

        def choose(k: int, taken2: frozenset[int], picked: list[int]):
            if k == len(cells):
                yield from rec(i + 1, taken2, images + [(tcls, picked)])
                return
            members, need = cells[k]
            avail = [c for c in members if c not in taken2]
            for subset in combinations(avail, need):
                yield from choose(k + 1, taken2 | frozenset(subset),
                                  picked + list(subset))
        yield from choose(0, taken, [])

    yield from rec(0, frozenset(), [])
