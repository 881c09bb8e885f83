"""Torsos of 3-edge-connected components and gluing their decompositions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .decomposition import TreeCutDecomposition, adhesion_of_tree_edge, validate
from .errors import InvalidInputDecomposition, MissingComponent, NotA3ECC
from .graph import (
    ImmersionModel,
    MultiGraph,
    biconnected_blocks,
    connected_components_mask,
    quotient,
    three_ecc,
)


@dataclass(frozen=True)
class ComponentTorso:
    """torso(A) on vertices 1..|A|; ``vertices[i]`` is the G-vertex of torso vertex i+1.

    ``edge_origin[e]`` is the G-edge behind torso edge e, or None for a
    replacement edge, whose component Z of G - A is ``replaced[e]``.
    """
    graph: MultiGraph
    vertices: tuple
    edge_origin: tuple
    replaced: dict = field(default_factory=dict, hash=False, compare=False)

    def to_graph_vertex(self, x: int) -> int:
        return self.vertices[x - 1]

    def from_graph_vertex(self, v: int) -> int:
        return self.vertices.index(v) + 1


def _require_block(G: MultiGraph, A: Iterable[int]) -> frozenset:
    A = frozenset(A)
    if A not in three_ecc(G):
        raise NotA3ECC(f"{sorted(A)} is not a 3-edge-connected component")
    return A


def component_torso(G: MultiGraph, A: Iterable[int]) -> ComponentTorso:
    A = _require_block(G, A)
    cache = G.__dict__.setdefault("_torso_cache", {})
    if A in cache:
        return cache[A]
    verts = tuple(sorted(A))
    idx = {v: i + 1 for i, v in enumerate(verts)}
    edges, origin = [], []
    for e, (u, v) in enumerate(G.edges):
        if u in A and v in A:
            edges.append((idx[u], idx[v]))
            origin.append(e)
    replaced = {}
    rest = G.all_mask & ~G.vmask(A)
    for zmask in connected_components_mask(G, rest):
        Z = G.vset(zmask)
        attach = sorted({x for z in Z for _, x in G.incidence[z] if x in A})
        if len(attach) == 2:
            replaced[len(edges)] = Z
            edges.append((idx[attach[0]], idx[attach[1]]))
            origin.append(None)
    out = ComponentTorso(MultiGraph(len(verts), tuple(edges)), verts, tuple(origin), replaced)
    cache[A] = out
    return out


def _path_through(G: MultiGraph, x: int, y: int, Z: frozenset) -> list:
    """Edge ids of a shortest x-y path whose internal vertices all lie in Z."""
    prev = {x: None}
    queue = deque([x])
    while queue:
        w = queue.popleft()
        for e, z in sorted(G.incidence[w]):
            if z in prev:
                continue
            if z == y and w != x:
                prev[z] = (w, e)
                queue.clear()
                break
            if z in Z:
                prev[z] = (w, e)
                queue.append(z)
    if y not in prev:
        raise NotA3ECC(f"no path from {x} to {y} through {sorted(Z)}")
    path = []
    w = y
    while prev[w] is not None:
        w, e = prev[w]
        path.append(e)
    return path[::-1]


def torso_immersion_model(G: MultiGraph, A: Iterable[int]) -> ImmersionModel:
    """Identity on A and G[A]; each replacement edge routed through its component."""
    ct = component_torso(G, A)
    vm = {i + 1: v for i, v in enumerate(ct.vertices)}
    paths = {}
    for e, (x, y) in enumerate(ct.graph.edges):
        if ct.edge_origin[e] is not None:
            paths[e] = [ct.edge_origin[e]]
        else:
            paths[e] = _path_through(G, vm[x], vm[y], ct.replaced[e])
    return ImmersionModel(vm, paths)


@dataclass
class GlueReport:
    """Diagnostics of a gluing: the 3ECC quotient and the forest used."""
    blocks: tuple
    quotient: MultiGraph
    alpha: tuple  # quotient edge -> G edge
    forest: list  # S, quotient edge ids
    rest: list  # R, quotient edge ids
    gamma: dict  # quotient edge in S -> tree edge (p, q)
    cycle_rest: dict  # quotient edge in S -> r_C (quotient edge) or None for bridges
    node_offset: dict  # block index -> first node id of its tree
    completion_edges: list

    def to_json(self) -> dict:
        return {
            "blocks": [sorted(b) for b in self.blocks],
            "quotient_edges": [list(e) for e in self.quotient.edges],
            "alpha": list(self.alpha),
            "S": self.forest,
            "R": self.rest,
            "gamma": {str(g): list(pq) for g, pq in sorted(self.gamma.items())},
            "r_C": {str(g): r for g, r in sorted(self.cycle_rest.items())},
            "completion_edges": [list(e) for e in self.completion_edges],
        }


def glue_with_report(G: MultiGraph, per_component: dict) -> tuple:
    """Glue decompositions of the component torsos into one decomposition of G.

    ``per_component`` maps each 3ECC block (frozenset of G-vertices) to a
    decomposition of its torso (torso vertex ids 1..|A|).
    """
    blocks = three_ecc(G)
    for A in blocks:
        if A not in per_component:
            raise MissingComponent(f"no decomposition for component {sorted(A)}")
        ct = component_torso(G, A)
        problems = validate(ct.graph, per_component[A])
        if problems:
            raise InvalidInputDecomposition([f"component {sorted(A)}: {p}" for p in problems])

    Q, alpha = quotient(G, blocks)
    bags, tree_edges = [], []
    offset = {}
    holder = {}  # G-vertex -> glued node id
    for i, A in enumerate(blocks):
        ct = component_torso(G, A)
        D = per_component[A]
        offset[i] = len(bags)
        for t, bag in enumerate(D.bags):
            gb = frozenset(ct.to_graph_vertex(x) for x in bag)
            for v in gb:
                holder[v] = offset[i] + t
            bags.append(gb)
        tree_edges += [(offset[i] + s, offset[i] + t) for s, t in D.tree_edges]

    # Kruskal over quotient edges sorted by endpoint pair, then id
    order = sorted(range(Q.m), key=lambda e: (min(Q.edges[e]), max(Q.edges[e]), e))
    parent = list(range(Q.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest, rest, gamma = [], [], {}
    for q in order:
        x, y = Q.edges[q]
        rx, ry = find(x), find(y)
        if rx == ry:
            rest.append(q)
            continue
        parent[rx] = ry
        forest.append(q)
        u, v = G.edges[alpha[q]]
        pq = (holder[u], holder[v])
        gamma[q] = pq
        tree_edges.append(pq)

    # pieces left over when G is disconnected
    completion = []
    roots = {}
    for i in range(len(blocks)):
        r = find(i + 1)
        if r not in roots:
            roots[r] = offset[i]
    piece_roots = list(roots.values())
    for p in piece_roots[1:]:
        completion.append((piece_roots[0], p))
    tree_edges += completion

    cycle_rest = {}
    rest_set = set(rest)
    for _, es in biconnected_blocks(Q):
        r = [q for q in es if q in rest_set]
        for q in es:
            if q in gamma:
                cycle_rest[q] = r[0] if r else None

    D = TreeCutDecomposition(tuple(bags), tuple(tree_edges))
    report = GlueReport(blocks, Q, alpha, forest, sorted(rest), gamma, cycle_rest, offset, completion)
    return D, report


def glue(G: MultiGraph, per_component: dict) -> TreeCutDecomposition:
    return glue_with_report(G, per_component)[0]


def glued_edge_adhesions(G: MultiGraph, D: TreeCutDecomposition, report: GlueReport) -> dict:
    """For each forest edge g: (adhesion of gamma(g), allowed set {alpha(g), alpha(r_C)})."""
    out = {}
    for g, pq in report.gamma.items():
        allowed = {report.alpha[g]}
        r = report.cycle_rest.get(g)
        if r is not None:
            allowed.add(report.alpha[r])
        out[g] = (adhesion_of_tree_edge(G, D, pq), frozenset(allowed))
    return out
