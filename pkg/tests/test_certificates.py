import math
import random
from itertools import combinations

import pytest

from helpers import K4, cycle, path, random_multigraph, random_tree, triple
from treecut.certificates import (
    Bramble, OrientedSeparation, Separation, Slab, Tangle, bramble_orders, bramble_to_tangle,
    disconnects, enumerate_separations, find_tangle, in_sigma, refute_decomposition,
    verify_bramble, verify_tangle, vertex_tangle,
)
from treecut.decomposition import TreeCutDecomposition, star_decomposition
from treecut.errors import DegenerateStar, InsufficientOrders, PreconditionViolated
from treecut.graph import build_graph, three_ecc
from treecut.solver import exists_decomposition
from treecut.sweep import connected_multigraphs


def whole(G):
    return Slab.make(G.vertices, range(G.m), G.vertices)


def k4_bramble():
    return Bramble([whole(K4())])


def test_verify_bramble_examples():
    G = K4()
    assert verify_bramble(G, k4_bramble()) is None
    B = Bramble([Slab.make({1}, (), {1}), Slab.make({2}, (), {2})])
    assert verify_bramble(G, B).kind == "touching"
    C4 = cycle(4)
    v = verify_bramble(C4, Bramble([Slab.make({1, 2, 3}, {0, 1}, {1, 3})]))
    assert v is not None and "3-edge-connected" in v.message


def test_verify_bramble_rejects_empty_and_disconnected():
    G = K4()
    assert verify_bramble(G, Bramble([])) is not None
    assert verify_bramble(G, Bramble([Slab.make({1, 2, 3}, {0}, {1})])) is not None


def test_bramble_orders_examples():
    G = K4()
    o = bramble_orders(G, k4_bramble(), 5)
    assert (o.adhesion, o.bag) == (3, 4)
    o = bramble_orders(G, Bramble([Slab.make({2}, (), {2})]), 5)
    assert o.adhesion == math.inf and o.bag == 1
    o = bramble_orders(G, k4_bramble(), 3)
    assert o.adhesion is None and o.bag == 4
    assert o.at_least(3, 4) and not o.at_least(3, 5)


def test_enumerate_separations_examples():
    G = K4()
    assert enumerate_separations(G, 3) == [Separation(frozenset(), frozenset(G.vertices))]
    T = triple()
    seps = enumerate_separations(T, 4)
    assert len(seps) == 2 and Separation(frozenset({2}), frozenset({1})) in seps
    for H in (K4(), path(4), cycle(5)):
        assert len(enumerate_separations(H, 1)) == 1


def test_enumerate_separations_brute_force():
    rng = random.Random(2)
    for _ in range(40):
        G = random_multigraph(rng, rng.randint(1, 6), rng.randint(0, 9))
        a = rng.randint(1, 5)
        want = set()
        for k in range(G.n + 1):
            for A in combinations(G.vertices, k):
                A = frozenset(A)
                B = frozenset(G.vertices) - A
                if sum(1 for u, v in G.edges if (u in A) != (v in A)) < a:
                    want.add(frozenset({A, B}))
        got = {frozenset({s.side_a, s.side_b}) for s in enumerate_separations(G, a)}
        assert got == want


def test_verify_tangle_examples():
    G = K4()
    V = frozenset(G.vertices)
    T = Tangle(3, 3, frozenset({OrientedSeparation(frozenset(), V)}))
    assert verify_tangle(G, T) is None
    T = Tangle(3, 3, frozenset({OrientedSeparation(V, frozenset())}))
    assert verify_tangle(G, T).kind == "consistency"
    for a in range(1, 6):
        for H in (K4(), path(4), cycle(4)):
            assert verify_tangle(H, vertex_tangle(H, a, 1, 1)) is None


def test_verify_tangle_finds_star():
    G = K4()
    V = frozenset(G.vertices)
    T = Tangle(3, 5, frozenset({OrientedSeparation(frozenset(), V)}))
    assert verify_tangle(G, T).kind == "star"


def test_verify_tangle_incomplete():
    G = triple()
    T = Tangle(4, 1, frozenset({OrientedSeparation(frozenset(), frozenset({1, 2}))}))
    assert verify_tangle(G, T).kind == "completeness"


def test_find_tangle_examples():
    G = K4()
    T = find_tangle(G, 3, 3)
    assert T.orientation == frozenset({OrientedSeparation(frozenset(), frozenset(G.vertices))})
    assert find_tangle(G, 4, 4) is None
    rng = random.Random(9)
    for _ in range(5):
        assert find_tangle(random_tree(rng, 6), 2, 2) is None


def test_bramble_to_tangle_examples():
    G = K4()
    T = bramble_to_tangle(G, k4_bramble(), 3, 3)
    assert T.orientation == frozenset({OrientedSeparation(frozenset(), frozenset(G.vertices))})
    P = path(3)
    T = bramble_to_tangle(P, Bramble([Slab.make({2}, (), {2})]), 2, 1)
    assert verify_tangle(P, T) is None
    assert all(2 in o.to_side for o in T.orientation)
    with pytest.raises(InsufficientOrders):
        bramble_to_tangle(G, k4_bramble(), 4, 3)


def _random_bramble(rng, G):
    blocks = [b for b in three_ecc(G) if len(b) >= 2]
    if not blocks:
        return None
    A = sorted(rng.choice(blocks))
    hub = rng.choice(A)
    slabs = []
    for _ in range(rng.randint(1, 3)):
        core = {hub} | {v for v in A if rng.random() < 0.5}
        # H: the whole connected graph
        slabs.append(Slab.make(G.vertices, range(G.m), core))
    return Bramble(slabs)


def test_generated_brambles_orders_and_tangles():
    rng = random.Random(5)
    done = 0
    for _ in range(300):
        G = random_multigraph(rng, rng.randint(2, 6), rng.randint(3, 10), connected=True)
        B = _random_bramble(rng, G)
        if B is None:
            continue
        assert verify_bramble(G, B) is None
        cores = set().union(*(s.core for s in B.slabs))
        assert any(cores <= blk for blk in three_ecc(G))
        o = bramble_orders(G, B, 6)
        # disconnecting-set minimality by brute force over all edge subsets
        best = None
        for k in range(G.m + 1):
            if any(all(disconnects(G, F, s) for s in B.slabs) for F in combinations(range(G.m), k)):
                best = k
                break
        if best is None or best >= 6:
            assert o.adhesion in (None, math.inf)
        else:
            assert o.adhesion == best
        top_a = best if best is not None else 4
        for a in range(1, min(top_a, 5) + 1):
            for b in range(1, int(o.bag) + 1):
                T = bramble_to_tangle(G, B, a, b)
                assert verify_tangle(G, T) is None
                for s in T.orientation:
                    if not s.from_side or not s.to_side:
                        assert not s.from_side
        done += 1
    assert done > 100


def test_refute_decomposition_k4():
    G = K4()
    D = TreeCutDecomposition((frozenset({1, 2, 3}), frozenset({4})), ((0, 1),))
    for v in G.vertices:
        T = vertex_tangle(G, 4, 4, v)
        star = refute_decomposition(G, D, T)
        assert in_sigma(G, star, 4, 4)


def test_refute_single_node_is_degenerate():
    G = K4()
    D = TreeCutDecomposition((frozenset(G.vertices),), ())
    with pytest.raises(DegenerateStar):
        refute_decomposition(G, D, vertex_tangle(G, 3, 5, 1))


def test_refute_tree_identity():
    T = random_tree(random.Random(3), 6)
    D = TreeCutDecomposition(tuple(frozenset({v}) for v in T.vertices),
                             tuple((u - 1, v - 1) for u, v in T.edges))
    star = refute_decomposition(T, D, vertex_tangle(T, 2, 2, 1))
    assert in_sigma(T, star, 2, 2)
    assert all(len(o.to_side) >= 1 for o in star)


def test_refute_rejects_wide_decomposition():
    G = K4()
    with pytest.raises(PreconditionViolated):
        refute_decomposition(G, star_decomposition(G, {1, 2}), vertex_tangle(G, 2, 2, 1))


def test_thin_tree_edge_outside_separation_system():
    """With a = 1 a thin tree edge of order 1 is not a separation of order < a.

    The sink-star argument then has nothing to orient, and both a
    decomposition and a tangle exist.
    """
    G = path(2)
    D = exists_decomposition(G, 1, 2)
    T = find_tangle(G, 1, 2)
    assert D is not None and T is not None
    assert verify_tangle(G, T) is None
    with pytest.raises(PreconditionViolated):
        refute_decomposition(G, D, T)
    C3 = cycle(3)
    assert exists_decomposition(C3, 2, 2) is not None and find_tangle(C3, 2, 2) is not None


def test_duality_when_a_at_least_three_or_b_one():
    for G in connected_multigraphs(5, 7):
        for a in range(1, 5):
            for b in range(1, 5):
                if a < 3 and b > 1:
                    continue
                D = exists_decomposition(G, a, b)
                T = find_tangle(G, a, b)
                assert (D is None) == (T is not None), (G, a, b)
                if D is not None and a >= 3 and len(D.bags) > 1:
                    # every tree edge has order < a here, so the sink star exists
                    VT = vertex_tangle(G, a, b, 1)
                    assert verify_tangle(G, VT) is not None
                    assert in_sigma(G, refute_decomposition(G, D, VT), a, b)
