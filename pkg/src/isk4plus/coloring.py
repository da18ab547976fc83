"""Recursive proper coloring driven by the structural decomposition.

The recursion colors small graphs directly, splits disconnected graphs,
and otherwise looks for an induced K4,4.  Without one it removes a
minimum-degree vertex and extends greedily on the way back; with one it
grows the complete multipartite set M and recurses across the clique
cutset that M induces, merging the two side colorings on the cutset.
The output is a proper coloring for every input graph; on graphs that do
contain an induced K4 subdivision on >= 5 vertices the cutset step can
fail, in which case the step is recorded in the trace and the
minimum-degree branch is taken instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from . import detect, structure
from .graph import (Coloring, Graph, bit_list, coloring_from_map, components,
                    induced_subgraph)

# known Ramsey numbers R(4, k); used only to size the K_{s,s} search when
# the biclique-then-extract route is requested
RAMSEY_R4 = {2: 4, 3: 9, 4: 18, 5: 25}


class ColoringBudgetError(RuntimeError):
    """A detector budget ran out while coloring; carries the partial trace."""

    def __init__(self, message: str, trace: "TraceNode | None" = None):
        super().__init__(message)
        self.trace = trace


@dataclass
class TraceNode:
    """One step of the coloring recursion."""

    kind: str  # base | component-split | low-degree | structural-split |
               # multipartite-direct
    palette: int = 0
    vertex: int | None = None
    clique: tuple[int, ...] = ()
    component: tuple[int, ...] = ()
    part_count: int = 0
    fallback: str | None = None
    children: list["TraceNode"] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind, "palette": self.palette}
        if self.vertex is not None:
            out["vertex"] = self.vertex
        if self.clique:
            out["clique"] = list(self.clique)
        if self.component:
            out["component"] = list(self.component)
        if self.part_count:
            out["part_count"] = self.part_count
        if self.fallback is not None:
            out["fallback"] = self.fallback
        out["children"] = [c.to_json_dict() for c in self.children]
        return out

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class ColorOptions:
    """Tuning knobs for color_isk4plus_free.

    k defaults to the exact clique number; base_size to k.  part_size is a
    hook for a smaller biclique core, but only 4 is implemented.
    """

    k: int | None = None
    base_size: int | None = None
    via_ramsey: bool = False
    part_size: int = 4
    detector_budget: int | None = None


def greedy_extend(G: Graph, partial: Mapping[int, int], v: int,
                  palette: int) -> Coloring:
    """Extend a proper coloring of G - v by giving v the smallest palette
    color missing from its neighborhood."""
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range")
    used = 0
    row = G.adj[v]
    while row:
        b = row & -row
        row ^= b
        u = b.bit_length() - 1
        if u not in partial:
            raise ValueError(f"neighbor {u} is uncolored")
        used |= 1 << partial[u]
    c = 0
    while (used >> c) & 1:
        c += 1
    if c >= palette:
        raise ValueError(
            f"all {palette} palette colors blocked at vertex {v}")
    full = dict(partial)
    full[v] = c
    return coloring_from_map(G.n, full)


def merge_on_clique(c1: Mapping[int, int], c2: Mapping[int, int],
                    clique) -> dict[int, int]:
    """Combine colorings of two graph pieces that overlap in a clique.

    Relabels c2's colors by the permutation that makes it agree with c1 on
    the clique (both restrictions must be injective), extending the
    permutation to the remaining colors smallest-first.  With an empty
    clique this is plain concatenation.
    """
    kverts = sorted(clique) if not isinstance(clique, int) \
        else bit_list(clique)
    pi: dict[int, int] = {}
    seen1 = set()
    for x in kverts:
        a, b = c1[x], c2[x]
        if a in seen1 or (b in pi and pi[b] != a):
            raise ValueError("colorings are not injective on the clique")
        seen1.add(a)
        pi[b] = a
    taken = set(pi.values())
    for b in sorted(set(c2.values())):
        if b in pi:
            continue
        c = 0
        while c in taken:
            c += 1
        pi[b] = c
        taken.add(c)
    merged = dict(c1)
    for x, b in c2.items():
        merged[x] = pi[b]
    return merged


def verify_proper(G: Graph, coloring) -> tuple[int, int] | None:
    """None if no edge is monochromatic, else the smallest violating edge."""
    if isinstance(coloring, Coloring):
        colors = coloring.colors
        if len(colors) != G.n:
            raise ValueError("coloring size does not match the graph")
    else:
        colors = []
        for v in range(G.n):
            if v not in coloring:
                raise ValueError(f"vertex {v} is uncolored")
            colors.append(coloring[v])
    for u in range(G.n):
        row = G.adj[u] >> (u + 1) << (u + 1)
        cu = colors[u]
        while row:
            b = row & -row
            row ^= b
            v = b.bit_length() - 1
            if colors[v] == cu:
                return (u, v)
    return None


def color_isk4plus_free(G: Graph, opts: ColorOptions | None = None
                        ) -> tuple[Coloring, TraceNode]:
    """Color G by the structural recursion; always returns a proper coloring.

    The trace records one node per recursion step.  Steps where the clique
    cutset derived from M was not actually a clique carry a fallback tag;
    such steps never occur when G has no induced K4 subdivision on >= 5
    vertices.
    """
    opts = opts or ColorOptions()
    if opts.part_size != 4:
        raise NotImplementedError("only part_size=4 is supported")
    k = opts.k if opts.k is not None else detect.clique_number(G)
    if opts.via_ramsey and k not in RAMSEY_R4:
        raise ValueError(
            f"the biclique-then-extract route needs a clique bound in "
            f"{sorted(RAMSEY_R4)}, got {k}")
    base = opts.base_size if opts.base_size is not None else max(k, 1)
    colors, trace = _color_rec(G, tuple(range(G.n)), base, k, opts)
    coloring = coloring_from_map(G.n, colors)
    bad = verify_proper(G, coloring)
    if bad is not None:
        raise AssertionError(f"internal error: improper edge {bad}")
    return coloring, trace


def _palette_of(colors: dict[int, int]) -> int:
    return 1 + max(colors.values()) if colors else 0


def _find_seed(H: Graph, k: int, opts: ColorOptions):
    """Locate an induced K4,4 in H, directly or via K_{s,s} + extraction."""
    if not opts.via_ramsey:
        return detect.find_induced_biclique(H, 4, budget=opts.detector_budget)
    s = RAMSEY_R4[k]
    if H.n < 2 * s:
        return None
    sub = detect.find_biclique_subgraph(H, s)
    if sub is None:
        return None
    try:
        return detect.ramsey_extract_k44(H, sub, k)
    except detect.CliquePreconditionError:
        # the promised clique bound was wrong; fall back to degeneracy
        return None


def _color_rec(H: Graph, vmap: tuple[int, ...], base: int, k: int,
               opts: ColorOptions) -> tuple[dict[int, int], TraceNode]:
    n = H.n
    if n <= base:
        colors = {vmap[i]: i for i in range(n)}
        return colors, TraceNode("base", palette=n)

    comps = components(H)
    if len(comps) > 1:
        merged: dict[int, int] = {}
        node = TraceNode("component-split")
        for comp in comps:
            sub, smap = induced_subgraph(H, comp)
            child_colors, child_node = _color_rec(
                sub, tuple(vmap[i] for i in smap), base, k, opts)
            node.children.append(child_node)
            merged = merge_on_clique(merged, child_colors, ())
        node.palette = _palette_of(merged)
        return merged, node

    try:
        seed = _find_seed(H, k, opts)
    except detect.SearchBudgetExceeded as exc:
        raise ColoringBudgetError(str(exc), TraceNode("low-degree")) from exc

    if seed is not None:
        M = structure.grow_maximal_multipartite(H, seed)
        if M.members == H.vertex_mask:
            colors: dict[int, int] = {}
            for idx, part in enumerate(M.parts):
                for v in bit_list(part):
                    colors[vmap[v]] = idx
            return colors, TraceNode("multipartite-direct",
                                     palette=len(M.parts),
                                     part_count=len(M.parts))
        try:
            split = structure.find_structural_cutset(H, M)
        except structure.NotACliqueError as exc:
            return _low_degree_step(
                H, vmap, base, k, opts,
                fallback=f"cutset not a clique at {exc.pair}")
        # members and outside are both nonempty here, so a split exists
        assert split is not None
        c1, n1 = _color_rec(split.g1,
                            tuple(vmap[i] for i in split.map1),
                            base, k, opts)
        c2, n2 = _color_rec(split.g2,
                            tuple(vmap[i] for i in split.map2),
                            base, k, opts)
        merged = merge_on_clique(
            c1, c2, [vmap[v] for v in bit_list(split.clique)])
        node = TraceNode(
            "structural-split",
            palette=_palette_of(merged),
            clique=tuple(vmap[v] for v in bit_list(split.clique)),
            component=tuple(vmap[v] for v in bit_list(split.component)),
            children=[n1, n2])
        return merged, node

    return _low_degree_step(H, vmap, base, k, opts, fallback=None)


def _low_degree_step(H: Graph, vmap: tuple[int, ...], base: int, k: int,
                     opts: ColorOptions, fallback: str | None
                     ) -> tuple[dict[int, int], TraceNode]:
    degs = [H.adj[v].bit_count() for v in range(H.n)]
    v = min(range(H.n), key=lambda u: (degs[u], u))
    sub, smap = induced_subgraph(H, H.vertex_mask & ~(1 << v))
    child_colors, child_node = _color_rec(
        sub, tuple(vmap[i] for i in smap), base, k, opts)
    palette = max(_palette_of(child_colors), degs[v] + 1)
    # greedy_extend works in H's own index space; lift the result back
    hpartial = {orig: child_colors[vmap[orig]] for orig in smap}
    extended = greedy_extend(H, hpartial, v, palette)
    colors = {vmap[i]: extended.colors[i] for i in range(H.n)}
    node = TraceNode("low-degree", palette=_palette_of(colors),
                     vertex=vmap[v], fallback=fallback,
                     children=[child_node])
    return colors, node


def coloring_to_lines(c: Coloring) -> str:
    """Plain "vertex color" lines, one vertex per line."""
    return "\n".join(f"{v} {col}" for v, col in enumerate(c.colors))


def coloring_to_json(c: Coloring, trace: TraceNode) -> str:
    doc = {
        "palette": c.palette_size,
        "colors": list(c.colors),
        "trace": trace.to_json_dict(),
    }
    return json.dumps(doc, separators=(",", ":"))
