"""Greedy extension, clique merge, and the recursive coloring."""

import random
from itertools import combinations

import pytest

from isk4plus import detect
from isk4plus.coloring import (ColorOptions, ColoringBudgetError,
                               color_isk4plus_free, coloring_to_json,
                               greedy_extend, merge_on_clique, verify_proper)
from isk4plus.detect import chromatic_number_exact, find_isk4plus
from isk4plus.graph import Coloring, graph_from_edges
from isk4plus.harness import (complete_graph, cycle_graph, gnp_graph,
                              k4_plus_graph, planted_structured_graph,
                              planted_k44_graph)

K44_EDGES = [(u, v) for u in range(4) for v in range(4, 8)]


# ---------------------------------------------------------------------------
# greedy extension

def test_greedy_star_center():
    g = graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])
    out = greedy_extend(g, {1: 0, 2: 0, 3: 0}, 0, palette=2)
    assert out.colors[0] == 1
    assert verify_proper(g, out) is None


def test_greedy_k4_last_vertex():
    g = complete_graph(4)
    out = greedy_extend(g, {0: 0, 1: 1, 2: 2}, 3, palette=4)
    assert out.colors[3] == 3


def test_greedy_isolated():
    g = graph_from_edges(1, [])
    assert greedy_extend(g, {}, 0, palette=1).colors == (0,)


def test_greedy_blocked_palette_raises():
    g = complete_graph(3)
    with pytest.raises(ValueError, match="blocked"):
        greedy_extend(g, {0: 0, 1: 1}, 2, palette=2)


def test_greedy_missing_neighbor_color():
    g = complete_graph(3)
    with pytest.raises(ValueError, match="uncolored"):
        greedy_extend(g, {0: 0}, 2, palette=3)


# ---------------------------------------------------------------------------
# merge

def test_merge_two_triangles_sharing_edge():
    c1 = {0: 0, 1: 1, 2: 2}
    c2 = {0: 1, 1: 0, 3: 2}
    merged = merge_on_clique(c1, c2, [0, 1])
    assert merged == {0: 0, 1: 1, 2: 2, 3: 2}
    g = graph_from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    assert verify_proper(g, merged) is None


def test_merge_empty_clique_concatenates():
    merged = merge_on_clique({0: 0, 1: 1}, {2: 0, 3: 1}, [])
    assert merged == {0: 0, 1: 1, 2: 0, 3: 1}


def test_merge_single_shared_vertex():
    merged = merge_on_clique({0: 2, 1: 0}, {0: 0, 2: 1}, [0])
    assert merged[0] == 2
    assert merged[2] != 2


def test_merge_palette_bound_and_permutation():
    rng = random.Random(9)
    for _ in range(40):
        k = rng.randint(0, 3)
        shared = list(range(k))
        c1 = {v: v for v in shared}
        c2 = {v: k - 1 - v for v in shared}
        extra1 = {10 + i: rng.randint(0, 4) for i in range(3)}
        extra2 = {20 + i: rng.randint(0, 4) for i in range(3)}
        c1.update(extra1)
        c2.update(extra2)
        merged = merge_on_clique(c1, c2, shared)
        p1 = 1 + max(c1.values(), default=-1)
        p2 = 1 + max(c2.values(), default=-1)
        assert 1 + max(merged.values(), default=-1) <= max(p1, p2)
        # restriction to the first piece is untouched
        for v in c1:
            assert merged[v] == c1[v]
        # restriction to the second piece is a single injective relabeling
        pi = {}
        for v in c2:
            if v in c1:
                continue
            assert pi.setdefault(c2[v], merged[v]) == merged[v]
        for v in shared:
            assert pi.setdefault(c2[v], c1[v]) == merged[v]
        assert len(set(pi.values())) == len(pi)


def test_merge_rejects_non_injective():
    with pytest.raises(ValueError, match="injective"):
        merge_on_clique({0: 0, 1: 0}, {0: 0, 1: 1}, [0, 1])
    with pytest.raises(ValueError, match="injective"):
        merge_on_clique({0: 0, 1: 1}, {0: 2, 1: 2}, [0, 1])


# ---------------------------------------------------------------------------
# verify_proper

def test_verify_proper_examples():
    g = complete_graph(4)
    assert verify_proper(g, Coloring((0, 1, 2, 3))) is None
    assert verify_proper(g, Coloring((0, 0, 1, 2))) == (0, 1)
    empty = graph_from_edges(3, [])
    assert verify_proper(empty, Coloring((0, 0, 0))) is None
    with pytest.raises(ValueError, match="uncolored"):
        verify_proper(g, {0: 1, 1: 0, 2: 2})


# ---------------------------------------------------------------------------
# the recursion

def test_color_k44_multipartite_direct():
    g = graph_from_edges(8, K44_EDGES)
    col, trace = color_isk4plus_free(g)
    assert col.palette_size == 2
    assert trace.kind == "multipartite-direct"
    assert verify_proper(g, col) is None


def test_color_two_k4s_sharing_vertex():
    edges = list(combinations(range(4), 2)) + \
        [(u, v) for u, v in combinations(range(3, 7), 2)]
    g = graph_from_edges(7, edges)
    assert not find_isk4plus(g).found
    col, trace = color_isk4plus_free(g)
    assert col.palette_size == 4 == chromatic_number_exact(g)
    assert verify_proper(g, col) is None
    assert all(n.fallback is None for n in trace.walk())


def test_color_k44_pendant_structural_split():
    g = graph_from_edges(9, K44_EDGES + [(8, 0)])
    col, trace = color_isk4plus_free(g)
    assert col.palette_size == 2 == chromatic_number_exact(g)
    kinds = [n.kind for n in trace.walk()]
    assert kinds[0] == "structural-split"
    assert trace.clique == (0,)
    assert trace.component == (8,)
    assert verify_proper(g, col) is None


def test_color_disconnected_components():
    edges = list(combinations(range(4), 2)) + [(5, 6)]
    g = graph_from_edges(7, edges)
    col, trace = color_isk4plus_free(g)
    assert trace.kind == "component-split"
    assert len(trace.children) == 3
    assert col.palette_size == 4
    assert verify_proper(g, col) is None


def test_color_base_case():
    g = complete_graph(3)
    col, trace = color_isk4plus_free(g)
    assert trace.kind == "base"
    assert col.palette_size == 3


def test_color_empty_and_singleton():
    col, trace = color_isk4plus_free(graph_from_edges(0, []))
    assert col.colors == ()
    col, _ = color_isk4plus_free(graph_from_edges(1, []))
    assert col.colors == (0,)


def test_color_proper_on_arbitrary_random_graphs():
    rng = random.Random(101)
    for _ in range(300):
        g = gnp_graph(rng.randint(0, 15), rng.choice([0.15, 0.4, 0.7]), rng)
        col, trace = color_isk4plus_free(g)
        assert verify_proper(g, col) is None
        assert col.palette_size >= chromatic_number_exact(g) or g.n == 0


def test_color_planted_structures_proper():
    rng = random.Random(103)
    for kind in ("clean", "claim1", "claim2", "claim3"):
        for _ in range(15):
            g = planted_structured_graph(rng, kind)
            col, trace = color_isk4plus_free(g)
            assert verify_proper(g, col) is None


def test_trace_no_fallback_on_free_graphs():
    rng = random.Random(107)
    checked = 0
    for _ in range(150):
        g = gnp_graph(rng.randint(5, 12), rng.choice([0.2, 0.4]), rng)
        if detect.find_isk4plus_oracle(g) is not None:
            continue
        checked += 1
        col, trace = color_isk4plus_free(g)
        assert verify_proper(g, col) is None
        assert all(n.fallback is None for n in trace.walk())
    assert checked >= 40


def test_trace_fallback_flagged_on_adversarial():
    # a claim-3 violating graph drives the cutset into a non-clique
    g = graph_from_edges(10, K44_EDGES + [(0, 8), (8, 9), (9, 1)])
    col, trace = color_isk4plus_free(g)
    assert verify_proper(g, col) is None
    tagged = [n for n in trace.walk() if n.fallback]
    assert tagged and tagged[0].kind == "low-degree"


def test_trace_structure_consistency():
    rng = random.Random(109)
    for _ in range(40):
        g = planted_structured_graph(rng, "clean")
        col, trace = color_isk4plus_free(g)
        assert verify_proper(g, col) is None
        _check_trace(trace)


def _check_trace(node):
    if node.kind in ("base", "multipartite-direct"):
        assert not node.children
    elif node.kind == "low-degree":
        assert len(node.children) == 1
    elif node.kind == "structural-split":
        assert len(node.children) == 2
    elif node.kind == "component-split":
        assert len(node.children) >= 2
    else:
        raise AssertionError(f"unknown kind {node.kind}")
    for c in node.children:
        _check_trace(c)


def test_color_optimality_gap_report():
    rng = random.Random(113)
    gaps = []
    ratios = []
    for _ in range(80):
        g = gnp_graph(rng.randint(4, 12), 0.3, rng)
        if find_isk4plus(g).found:
            continue
        col, _ = color_isk4plus_free(g)
        chi = chromatic_number_exact(g)
        assert col.palette_size >= chi
        gaps.append(col.palette_size - chi)
        ratios.append(col.palette_size / chi)
    assert gaps
    print(f"\nISK4+-free sample: gap mean={sum(gaps) / len(gaps):.3f} "
          f"max={max(gaps)}, ratio mean={sum(ratios) / len(ratios):.3f} "
          f"max={max(ratios):.3f} over {len(gaps)} graphs")


def test_color_via_ramsey_route():
    g = graph_from_edges(8, K44_EDGES)
    col, trace = color_isk4plus_free(g, ColorOptions(k=2, via_ramsey=True))
    assert col.palette_size == 2
    assert trace.kind == "multipartite-direct"
    # pendant variant still splits structurally through the extracted core
    g = graph_from_edges(9, K44_EDGES + [(8, 0)])
    col, trace = color_isk4plus_free(g, ColorOptions(k=2, via_ramsey=True))
    assert col.palette_size == 2
    assert trace.kind == "structural-split"
    assert verify_proper(g, col) is None


def test_color_via_ramsey_requires_small_k():
    g = complete_graph(7)
    with pytest.raises(ValueError, match="clique bound"):
        color_isk4plus_free(g, ColorOptions(via_ramsey=True))


def test_color_part_size_hook_unimplemented():
    with pytest.raises(NotImplementedError):
        color_isk4plus_free(complete_graph(3), ColorOptions(part_size=3))


def test_color_budget_propagates():
    rng = random.Random(127)
    g = planted_k44_graph(16, 0.45, rng)
    with pytest.raises(ColoringBudgetError):
        color_isk4plus_free(g, ColorOptions(detector_budget=2))


def test_color_base_size_override():
    g = cycle_graph(6)
    col, trace = color_isk4plus_free(g, ColorOptions(base_size=6))
    assert trace.kind == "base"
    assert col.palette_size == 6


def test_merged_restriction_matches_children():
    g = graph_from_edges(9, K44_EDGES + [(8, 0)])
    col, trace = color_isk4plus_free(g)
    assert trace.kind == "structural-split"
    # the split side containing M keeps its colors verbatim in the merge
    sub_colors = {v: col.colors[v] for v in range(8)}
    assert len(set(sub_colors.values())) == 2


def test_coloring_json_output():
    import json
    g = k4_plus_graph()
    col, trace = color_isk4plus_free(g)
    doc = json.loads(coloring_to_json(col, trace))
    assert doc["palette"] == col.palette_size
    assert doc["colors"] == list(col.colors)
    assert doc["trace"]["kind"] == trace.kind
