import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from helpers import (
    K4, bt15, cycle, dbl_k4, min_cut_oracle, multigraphs, path, random_multigraph,
    three_ecc_oracle, triple,
)
from treecut.errors import (
    BadEndpoint, BadVertex, EmptyGraph, InvalidPartition, InvalidSeparation, LoopEdge,
    MalformedModel, SameVertex,
)
from treecut.graph import (
    ImmersionModel, biconnected_blocks, boundary, build_graph, classify_separation,
    is_cactus, max_edge_disjoint_paths, quotient, three_ecc, verify_immersion_model, wall,
)
from treecut.sweep import connected_multigraphs
from treecut.tcc import torso_immersion_model


def test_build_parallel_edges_are_distinct():
    G = triple()
    assert G.n == 2 and G.m == 3
    assert G.edges == ((1, 2), (1, 2), (1, 2))


def test_build_errors():
    with pytest.raises(LoopEdge):
        build_graph(3, [(1, 1)])
    with pytest.raises(BadEndpoint):
        build_graph(3, [(1, 4)])
    with pytest.raises(EmptyGraph):
        build_graph(0, [])


def test_k4_built_from_all_pairs():
    G = K4()
    assert G.m == 6 and all(G.degree(v) == 3 for v in G.vertices)


def test_boundary_examples():
    G = K4()
    assert boundary(G, {1}) == frozenset({0, 1, 2})
    assert boundary(triple(), {1}) == frozenset({0, 1, 2})
    assert boundary(G, G.vertices) == frozenset()
    with pytest.raises(BadVertex):
        boundary(G, {9})


@given(multigraphs())
def test_boundary_symmetric(G):
    rng = random.Random(G.m)
    X = {v for v in G.vertices if rng.random() < 0.5}
    assert boundary(G, X) == boundary(G, set(G.vertices) - X)


def test_classify_separation():
    G = K4()
    assert classify_separation(G, set(), G.vertices) == (0, "thin")
    assert classify_separation(G, {1}, {2, 3, 4}) == (3, "bold")
    assert classify_separation(cycle(4), {1, 3}, {2, 4}) == (4, "bold")
    with pytest.raises(InvalidSeparation):
        classify_separation(G, {1, 2}, {2, 3, 4})
    with pytest.raises(InvalidSeparation):
        classify_separation(G, {1}, {2, 3})


def test_edge_disjoint_paths_examples():
    assert max_edge_disjoint_paths(triple(), 1, 2) == 3
    assert max_edge_disjoint_paths(path(3), 1, 3) == 1
    assert max_edge_disjoint_paths(K4(), 1, 2) == 3
    with pytest.raises(SameVertex):
        max_edge_disjoint_paths(K4(), 2, 2)


@settings(max_examples=80)
@given(multigraphs(min_n=2, max_n=6, max_m=10))
def test_edge_disjoint_paths_match_min_cut(G):
    for u, v in combinations(G.vertices, 2):
        assert max_edge_disjoint_paths(G, u, v) == min_cut_oracle(G, u, v)


def test_three_ecc_examples():
    rng = random.Random(3)
    for _ in range(5):
        T = build_graph(7, [(rng.randint(1, v - 1), v) for v in range(2, 8)])
        assert all(len(b) == 1 for b in three_ecc(T))
    assert three_ecc(K4()) == (frozenset({1, 2, 3, 4}),)
    assert three_ecc(dbl_k4()) == (frozenset({1, 2, 3, 4}), frozenset({5, 6, 7, 8}))


def test_three_ecc_matches_pairwise_oracle_exhaustively():
    for G in connected_multigraphs(5, 6):
        assert list(three_ecc(G)) == three_ecc_oracle(G)


def test_quotient_examples():
    G = K4()
    Q, alpha = quotient(G, [{v} for v in G.vertices])
    assert Q.edges == G.edges and alpha == tuple(range(6))
    Q, alpha = quotient(cycle(3), [{1, 2}, {3}])
    assert Q.n == 2 and Q.m == 2 and alpha == (1, 2)
    D = dbl_k4()
    Q, alpha = quotient(D, three_ecc(D))
    assert (Q.n, Q.m) == (2, 1) and D.edges[alpha[0]] == (4, 5)
    with pytest.raises(InvalidPartition):
        quotient(G, [{1, 2}, {2, 3, 4}])


def test_cactus_examples():
    assert is_cactus(cycle(4))
    assert not is_cactus(K4())
    D = dbl_k4()
    assert is_cactus(quotient(D, three_ecc(D))[0])
    assert is_cactus(build_graph(2, [(1, 2), (1, 2)]))
    assert not is_cactus(triple())


def test_biconnected_blocks_of_bowtie():
    G = build_graph(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)])
    blocks = sorted(sorted(v) for v, _ in biconnected_blocks(G))
    assert blocks == [[1, 2, 3], [3, 4, 5]]


def test_quotient_is_cactus_random():
    rng = random.Random(11)
    for _ in range(200):
        G = random_multigraph(rng, rng.randint(1, 10), rng.randint(0, 20))
        Q, _ = quotient(G, three_ecc(G))
        assert is_cactus(Q)
        for x, y in combinations(Q.vertices, 2):
            assert max_edge_disjoint_paths(Q, x, y) <= 2


def test_cactus_iff_no_three_edge_connected_pair():
    for G in connected_multigraphs(5, 7):
        pairs3 = any(max_edge_disjoint_paths(G, u, v) >= 3 for u, v in combinations(G.vertices, 2))
        assert is_cactus(G) == (not pairs3)


def _wall_edges_by_rule(k):
    def vid(i, j):
        return (i - 1) * 2 * k + j
    es = {(vid(i, j), vid(i, j + 1)) for i in range(1, k + 1) for j in range(1, 2 * k)}
    es |= {(vid(i, j), vid(i + 1, j)) for i in range(1, k) for j in range(1, 2 * k + 1) if i % 2 == j % 2}
    return es


def test_wall_examples():
    assert (wall(2).n, wall(2).m) == (8, 8)
    assert (wall(1).n, wall(1).m) == (2, 1)
    for k in range(1, 7):
        W = wall(k)
        assert W.n == 2 * k * k
        assert W.m == 3 * k * k - 2 * k
        assert set(W.edges) == _wall_edges_by_rule(k)
        assert max(W.degree(v) for v in W.vertices) <= 3


def test_immersion_triangle_into_c6():
    C6, T = cycle(6), cycle(3)
    # C6 edges: 0:1-2 1:2-3 2:3-4 3:4-5 4:5-6 5:6-1; triangle edges 1-2, 2-3, 3-1
    good = ImmersionModel({1: 1, 2: 3, 3: 5}, {0: [0, 1], 1: [2, 3], 2: [4, 5]})
    assert verify_immersion_model(C6, T, good) == (True, None)
    # 2-3 routed the long way round reuses edges 0 and 1
    bad = ImmersionModel({1: 1, 2: 3, 3: 5}, {0: [0, 1], 1: [1, 0, 5, 4], 2: [4, 5]})
    ok, why = verify_immersion_model(C6, T, bad)
    assert not ok and "share" in why
    with pytest.raises(MalformedModel):
        verify_immersion_model(C6, T, ImmersionModel({1: 1, 2: 3, 3: 5}, {0: [0, 2], 1: [2, 3], 2: [4, 5]}))


def test_immersion_model_of_torso_dbl_k4():
    G = dbl_k4()
    H = K4()
    m = torso_immersion_model(G, {1, 2, 3, 4})
    assert verify_immersion_model(G, H, m) == (True, None)


def test_bt15_is_a_tree():
    G = bt15()
    assert (G.n, G.m) == (15, 14) and is_cactus(G)
