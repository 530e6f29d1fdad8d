"""Compact solution-class reporting.

Transforms a :class:`~eqmatch.search.SolutionClass` into the world subgraph
its expansions inhabit (``induce_subgraph``), collapses like-colored
vertices into supernodes (``compress``), summarizes candidate-set
intersections after a node cover is matched (``venn_summary``), and exports
either subgraph as DOT text.

A world vertex can appear in several slots' interchange classes; it is
colored by the first such slot, and the full slot list is kept as a merge
log so no membership information is lost.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import MultiplexGraph, dominates
from .search import SolutionClass

_PALETTE = ("lightblue", "lightsalmon", "palegreen", "gold", "plum",
            "lightgray", "khaki", "lightpink", "aquamarine", "wheat")


@dataclass(frozen=True)
class ColoredSubgraph:
    """Solution-induced world subgraph; color = index of the serving slot."""

    directed: bool
    vertices: tuple[int, ...]
    color_of: dict[int, int]
    color_labels: dict[int, str]
    edges: tuple[tuple[int, int], ...]
    merge_log: dict[int, tuple[int, ...]]  # vertex -> all slots listing it

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "colors": {str(v): self.color_of[v] for v in self.vertices},
            "color_labels": {str(k): v for k, v in self.color_labels.items()},
            "edges": [list(e) for e in self.edges],
            "merge_log": {str(v): list(s) for v, s in self.merge_log.items()},
        }


@dataclass(frozen=True)
class CompressedSubgraph:
    """One supernode per color, labeled with the number of joined vertices."""

    directed: bool
    supernodes: tuple[tuple[int, str, int], ...]  # (color id, label, size)
    edges: tuple[tuple[int, int], ...]            # color-id pairs, deduplicated

    def to_json(self) -> dict:
        return {
            "supernodes": [{"color": c, "label": lbl, "size": sz}
                           for c, lbl, sz in self.supernodes],
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class VennSummary:
    """Sizes of the nonempty candidate-membership regions (Def-style node
    cover equivalence classes) across non-cover template vertices."""

    regions: tuple[tuple[tuple[int, ...], int], ...]  # (template vertices, size)

    def to_json(self) -> list[dict]:
        return [{"members": list(ms), "size": sz} for ms, sz in self.regions]


def induce_subgraph(world: MultiplexGraph, sc: SolutionClass,
                    template: MultiplexGraph | None = None,
                    directed: bool = True) -> ColoredSubgraph:
    """World subgraph spanned by all expansions of ``sc``.

    Participants are the union of slot members. An edge participates when
    both endpoints do and the template has a matching (dominated) edge
    between the endpoints' colors; without the template every edge among
    participants is kept.
    """
    color_of: dict[int, int] = {}
    merge: dict[int, list[int]] = {}
    labels: dict[int, str] = {}
    for i, slot in enumerate(sc.slots):
        labels[i] = str(slot.template_vertex)
        for c in slot.members:
            color_of.setdefault(c, i)
            merge.setdefault(c, []).append(i)
    vertices = tuple(sorted(color_of))
    edges: list[tuple[int, int]] = []
    for a in vertices:
        for b, mult in world.out[a].items():
            if b not in color_of:
                continue
            if template is not None:
                t1 = sc.slots[color_of[a]].template_vertex
                t2 = sc.slots[color_of[b]].template_vertex
                req = template.edge(t1, t2)
                if req is None or not dominates(mult, req):
                    continue
            edges.append((a, b))
    return ColoredSubgraph(directed, vertices, color_of, labels,
                           tuple(sorted(edges)),
                           {v: tuple(s) for v, s in merge.items()})


def compress(csg: ColoredSubgraph) -> CompressedSubgraph:
    """Join like-colored vertices into supernodes with size labels."""
    sizes: dict[int, int] = {}
    for v in csg.vertices:
        color = csg.color_of[v]
        sizes[color] = sizes.get(color, 0) + 1
    supernodes = tuple((c, csg.color_labels.get(c, str(c)), sizes[c])
                       for c in sorted(sizes))
    edges: set[tuple[int, int]] = set()
    for a, b in csg.edges:
        e = (csg.color_of[a], csg.color_of[b])
        if not csg.directed:
            e = (min(e), max(e))
        edges.add(e)
    return CompressedSubgraph(csg.directed, supernodes, tuple(sorted(edges)))


def venn_summary(csets: list[set[int]], cover, match) -> VennSummary:
    """Group candidate world vertices by their membership pattern across
    non-cover template vertices.

    ``csets`` must already be reduced to joinable candidates and ``match``
    must assign every cover vertex (contract error otherwise).
    """
    matched = {u for u, _ in match}
    missing = set(cover) - matched
    if missing:
        raise ValueError(f"node cover vertices {sorted(missing)} are not matched")
    noncover = [u for u in range(len(csets)) if u not in set(cover)]
    regions: dict[tuple[int, ...], int] = {}
    universe = set().union(*(csets[u] for u in noncover)) if noncover else set()
    for c in sorted(universe):
        pattern = tuple(u for u in noncover if c in csets[u])
        regions[pattern] = regions.get(pattern, 0) + 1
    return VennSummary(tuple(sorted(regions.items())))


def export_dot(g: ColoredSubgraph | CompressedSubgraph) -> str:
    """Render either subgraph as DOT; colors become fill attributes and
    supernode sizes become labels."""
    kind = "digraph" if g.directed else "graph"
    arrow = "->" if g.directed else "--"
    lines: list[str] = []
    if isinstance(g, ColoredSubgraph):
        for v in g.vertices:
            color = _PALETTE[g.color_of[v] % len(_PALETTE)]
            lines.append(f'  {v} [label="{v}", style=filled, fillcolor={color}];')
        for a, b in g.edges:
            lines.append(f"  {a} {arrow} {b};")
    else:
        for c, label, size in g.supernodes:
            fill = _PALETTE[c % len(_PALETTE)]
            lines.append(f'  s{c} [label="{size}", style=filled, fillcolor={fill}];')
        for a, b in g.edges:
            lines.append(f"  s{a} {arrow} s{b};")
    if not lines:
        return f"{kind} G {{ }}"
    return f"{kind} G {{\n" + "\n".join(lines) + "\n}\n"
