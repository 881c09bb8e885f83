import random
from itertools import combinations

import pytest

from helpers import K4, dbl_k4, random_multigraph, theta3
from treecut.decomposition import TreeCutDecomposition, measure_widths, validate
from treecut.errors import InvalidInputDecomposition, MissingComponent, NotA3ECC
from treecut.graph import (
    build_graph, connected_components, max_edge_disjoint_paths, quotient, three_ecc, verify_immersion_model,
)
from treecut.solver import search_connected_piece
from treecut.tcc import (
    component_torso, glue, glue_with_report, glued_edge_adhesions, torso_immersion_model,
)


def test_torso_of_dbl_k4_is_k4():
    ct = component_torso(dbl_k4(), {1, 2, 3, 4})
    assert ct.graph == K4() and not ct.replaced


def test_torso_of_theta3_gets_replacement_edge():
    G = theta3()
    ct = component_torso(G, {1, 2})
    assert ct.graph.n == 2 and ct.graph.m == 4
    assert list(ct.replaced.values()) == [frozenset({3})]
    assert ct.edge_origin == (0, 1, 2, None)


def test_torso_of_three_edge_connected_graph_is_itself():
    G = K4()
    assert component_torso(G, G.vertices).graph == G


def test_torso_rejects_non_component():
    with pytest.raises(NotA3ECC):
        component_torso(dbl_k4(), {1, 2, 3})


def test_immersion_models():
    G = K4()
    m = torso_immersion_model(G, G.vertices)
    assert m.vertex_map == {v: v for v in G.vertices}
    assert m.edge_paths == {e: [e] for e in range(6)}
    T = theta3()
    m = torso_immersion_model(T, {1, 2})
    assert m.edge_paths[3] == [3, 4]  # 1-3 then 3-2
    ok, _ = verify_immersion_model(T, component_torso(T, {1, 2}).graph, m)
    assert ok
    D = dbl_k4()
    m = torso_immersion_model(D, {1, 2, 3, 4})
    assert all(len(p) == 1 for p in m.edge_paths.values())


def test_torsos_are_three_edge_connected_random():
    rng = random.Random(21)
    for _ in range(150):
        G = random_multigraph(rng, rng.randint(1, 10), rng.randint(0, 20))
        for A in three_ecc(G):
            ct = component_torso(G, A)
            H = ct.graph
            for x, y in combinations(H.vertices, 2):
                assert max_edge_disjoint_paths(H, x, y) >= 3
            ok, why = verify_immersion_model(G, H, torso_immersion_model(G, A))
            assert ok, why


def test_component_blocks_of_quotient_lie_in_one_component():
    rng = random.Random(4)
    for _ in range(100):
        G = random_multigraph(rng, rng.randint(2, 9), rng.randint(1, 16))
        blocks = three_ecc(G)
        Q, _ = quotient(G, blocks)
        for i, A in enumerate(blocks):
            rest = [x for x in Q.vertices if x != i + 1]
            comps = connected_components(Q, rest)
            outside = [v for v in G.vertices if v not in A]
            gcomps = connected_components(G, outside)
            for C in comps:
                union = set().union(*(blocks[x - 1] for x in C))
                assert any(union <= set(D) for D in gcomps)


def _single(ct):
    return TreeCutDecomposition((frozenset(ct.graph.vertices),), ())


def test_glue_single_component_is_unchanged():
    G = K4()
    D = TreeCutDecomposition((frozenset({1, 2, 3}), frozenset({4})), ((0, 1),))
    assert glue(G, {frozenset(G.vertices): D}) == D


def test_glue_dbl_k4():
    G = dbl_k4()
    D = TreeCutDecomposition((frozenset({1, 2, 3}), frozenset({4})), ((0, 1),))
    parts = {A: D for A in three_ecc(G)}
    out = glue(G, parts)
    assert validate(G, out) == []
    w = measure_widths(G, out)
    assert w.adhesion_width <= 3 and w.bag_width <= 3


def test_glue_theta3():
    G = theta3()
    parts = {A: _single(component_torso(G, A)) for A in three_ecc(G)}
    out, report = glue_with_report(G, parts)
    assert out.bags == (frozenset({1, 2}), frozenset({3}))
    assert len(out.tree_edges) == 1 and report.forest == [0]


def test_glue_errors():
    G = dbl_k4()
    with pytest.raises(MissingComponent):
        glue(G, {frozenset({1, 2, 3, 4}): _single(component_torso(G, {1, 2, 3, 4}))})
    bad = TreeCutDecomposition((frozenset({1}),), ())
    with pytest.raises(InvalidInputDecomposition):
        glue(G, {A: bad for A in three_ecc(G)})


def test_glue_disconnected_graph_adds_completion_edges():
    G = build_graph(5, [(1, 2), (3, 4)])
    parts = {A: _single(component_torso(G, A)) for A in three_ecc(G)}
    out, report = glue_with_report(G, parts)
    assert validate(G, out) == []
    assert len(report.completion_edges) == 2
    assert measure_widths(G, out).adhesion_width == 0


def test_glue_widths_and_forest_adhesions_random():
    rng = random.Random(8)
    for _ in range(60):
        G = random_multigraph(rng, rng.randint(1, 7), rng.randint(0, 11))
        k = rng.randint(2, 5)
        parts = {}
        for A in three_ecc(G):
            D = search_connected_piece(component_torso(G, A).graph, k + 1, k + 1)
            if D is None:
                break
            parts[A] = D
        else:
            out, report = glue_with_report(G, parts)
            assert validate(G, out) == []
            w = measure_widths(G, out)
            assert w.adhesion_width <= k and w.bag_width <= k
            for g, (adh, allowed) in glued_edge_adhesions(G, out, report).items():
                assert len(adh) <= 2 and adh <= allowed
