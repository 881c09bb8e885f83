"""Tree-cut decompositions: adhesions, torsos, 3-centers and width measures."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    InvalidDecomposition,
    InvalidModel,
    UnknownNode,
    UnknownTreeEdge,
    VertexNotInBags,
)
from .graph import ImmersionModel, MultiGraph, bits, popcount, verify_immersion_model


@dataclass(frozen=True)
class TreeCutDecomposition:
    """Tree on nodes 0..N-1 (``tree_edges``) with one bag per node."""
    bags: tuple  # tuple[frozenset[int], ...]
    tree_edges: tuple  # tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(s), int(t)) for s, t in self.tree_edges))

    @property
    def nodes(self) -> range:
        return range(len(self.bags))

    def neighbors(self, t: int) -> tuple:
        return self._adj()[t]

    def _adj(self) -> tuple:
        adj = self.__dict__.get("_adj_cache")
        if adj is None:
            lists = [[] for _ in self.bags]
            for s, t in self.tree_edges:
                lists[s].append(t)
                lists[t].append(s)
            adj = tuple(tuple(sorted(x)) for x in lists)
            self.__dict__["_adj_cache"] = adj
        return adj

    def node_of(self, v: int) -> int:
        for t, bag in enumerate(self.bags):
            if v in bag:
                return t
        raise VertexNotInBags(f"vertex {v} is in no bag")


@dataclass(frozen=True)
class WidthReport:
    wollan: int
    gprtw: int
    adhesion_width: int
    bag_width: int


def validate(G: MultiGraph, D: TreeCutDecomposition) -> list:
    """All violations of the tree / near-partition conditions (empty list if valid)."""
    out = []
    N = len(D.bags)
    if N == 0:
        return ["decomposition has no nodes"]
    edges_ok = True
    for s, t in D.tree_edges:
        if not (0 <= s < N and 0 <= t < N):
            out.append(f"tree edge {s}-{t} refers to an unknown node")
            edges_ok = False
        elif s == t:
            out.append(f"tree edge {s}-{t} is a loop")
            edges_ok = False
    if edges_ok:
        seen = {0}
        stack = [0]
        adj = D._adj()
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != N or len(D.tree_edges) != N - 1:
            out.append("tree edges do not form a tree")
    owner: dict = {}
    for t, bag in enumerate(D.bags):
        for v in sorted(bag):
            if not (1 <= v <= G.n):
                out.append(f"bag {t} holds unknown vertex {v}")
            elif v in owner:
                out.append(f"bags not disjoint: vertex {v} in bags {owner[v]} and {t}")
            else:
                owner[v] = t
    missing = [v for v in G.vertices if v not in owner]
    if missing:
        out.append(f"vertices {missing} are in no bag")
    return out


def require_valid(G, D, exc=InvalidDecomposition):
    problems = validate(G, D)
    if problems:
        raise exc(problems)


class _Rooted:
    """Decomposition rooted at node 0 with subtree vertex masks."""

    def __init__(self, G: MultiGraph, D: TreeCutDecomposition):
        self.G, self.D = G, D
        adj = D._adj()
        N = len(D.bags)
        self.bagmask = [G.vmask(b) for b in D.bags]
        self.parent = [-1] * N
        order = [0]
        seen = [False] * N
        seen[0] = True
        for x in order:
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    self.parent[y] = x
                    order.append(y)
        self.sub = list(self.bagmask)
        for x in reversed(order[1:]):
            self.sub[self.parent[x]] |= self.sub[x]

    def side(self, s: int, t: int) -> int:
        """Vertex mask of the component of T - st containing t."""
        if self.parent[t] == s:
            return self.sub[t]
        if self.parent[s] == t:
            return self.G.all_mask & ~self.sub[s]
        raise UnknownTreeEdge(f"{s}-{t} is not a tree edge")

    def branches(self, t: int) -> list:
        """Vertex masks of the components of T - t, in neighbor order."""
        return [self.side(t, s) for s in self.D._adj()[t]]


def _rooted(G, D) -> _Rooted:
    r = D.__dict__.get("_rooted")
    if r is None or not (r.G is G or r.G == G):
        r = _Rooted(G, D)
        D.__dict__["_rooted"] = r
    return r


def _check_node(D, t):
    if not (0 <= t < len(D.bags)):
        raise UnknownNode(f"node {t}")


def trace(G: MultiGraph, D: TreeCutDecomposition, u: int, v: int) -> list:
    """Node path in T from the bag of u to the bag of v."""
    s, t = D.node_of(u), D.node_of(v)
    prev = {s: None}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in D._adj()[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    return path[::-1]


def adhesion_mask(G, D, s, t) -> int:
    return G.boundary_mask(_rooted(G, D).side(s, t))


def adhesion_of_tree_edge(G: MultiGraph, D: TreeCutDecomposition, st: tuple) -> frozenset:
    s, t = st
    if (s, t) not in D.tree_edges and (t, s) not in D.tree_edges:
        raise UnknownTreeEdge(f"{s}-{t} is not a tree edge")
    return frozenset(bits(adhesion_mask(G, D, s, t)))


def node_adhesion_mask(G, D, t) -> int:
    out = 0
    for br in _rooted(G, D).branches(t):
        m = G.boundary_mask(br)
        if popcount(m) >= 3:
            out |= m
    return out


def adhesion_of_node(G: MultiGraph, D: TreeCutDecomposition, t: int) -> frozenset:
    """Union of the adhesions of bold tree edges at t."""
    _check_node(D, t)
    return frozenset(bits(node_adhesion_mask(G, D, t)))


def local_torso(G: MultiGraph, bagmask: int, branch_masks: Sequence[int]) -> tuple:
    """Torso as (vertex count, edge list, bag-vertex flags).

    Torso vertices: bag vertices ascending, then one per nonempty branch.
    """
    label = {}
    k = 0
    for i in bits(bagmask):
        k += 1
        label[i + 1] = k
    in_bag = [False] + [True] * k
    for br in branch_masks:
        if not br:
            continue
        k += 1
        in_bag.append(False)
        for i in bits(br):
            label[i + 1] = k
    edges = [(label[u], label[v]) for u, v in G.edges if label[u] != label[v]]
    return k, edges, in_bag


def torso(G: MultiGraph, D: TreeCutDecomposition, t: int) -> tuple:
    """Torso at node t as (MultiGraph, origin) where origin[i] is the vertex set
    merged into torso vertex i+1 (a singleton for bag vertices)."""
    _check_node(D, t)
    require_valid(G, D)
    r = _rooted(G, D)
    branches = r.branches(t)
    k, edges, _ = local_torso(G, r.bagmask[t], branches)
    origin = [frozenset({i + 1}) for i in bits(r.bagmask[t])]
    origin += [G.vset(b) for b in branches if b]
    return MultiGraph(k, tuple(edges)), tuple(origin)


def suppress(k: int, edges: list, in_bag: Sequence[bool], rng: random.Random | None = None) -> tuple:
    """Iteratively suppress non-bag vertices of degree <= 2.

    Returns (surviving vertex ids, remaining edges).  Without ``rng`` the
    worklist runs in ascending vertex order.
    """
    alive = set(range(1, k + 1))
    edges = list(edges)
    while True:
        deg = dict.fromkeys(alive, 0)
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        cands = [x for x in sorted(alive) if not in_bag[x] and deg[x] <= 2]
        if not cands:
            break
        x = rng.choice(cands) if rng is not None else cands[0]
        nbrs = sorted({v if u == x else u for u, v in edges if x in (u, v)})
        edges = [e for e in edges if x not in e]
        alive.discard(x)
        if len(nbrs) == 2:
            edges.append((nbrs[0], nbrs[1]))
    return sorted(alive), edges


def three_center_size(G: MultiGraph, bagmask: int, branch_masks: Sequence[int]) -> int:
    k, edges, in_bag = local_torso(G, bagmask, branch_masks)
    alive, _ = suppress(k, edges, in_bag)
    return len(alive)


def three_center(G: MultiGraph, D: TreeCutDecomposition, t: int,
                 rng: random.Random | None = None) -> MultiGraph:
    """3-center of the torso at t, relabelled 1..k in surviving-vertex order."""
    _check_node(D, t)
    require_valid(G, D)
    r = _rooted(G, D)
    k, edges, in_bag = local_torso(G, r.bagmask[t], r.branches(t))
    alive, rest = suppress(k, edges, in_bag, rng)
    relabel = {x: i + 1 for i, x in enumerate(alive)}
    return MultiGraph(len(alive), tuple((relabel[u], relabel[v]) for u, v in rest))


def measure_widths(G: MultiGraph, D: TreeCutDecomposition) -> WidthReport:
    require_valid(G, D)
    r = _rooted(G, D)
    edge_max = 0
    wollan = gprtw = adhw = bagw = 0
    for t in D.nodes:
        branches = r.branches(t)
        masks = [G.boundary_mask(b) for b in branches]
        sizes = [popcount(m) for m in masks]
        bold = [m for m, s in zip(masks, sizes) if s >= 3]
        union = 0
        for m in bold:
            union |= m
        bag = popcount(r.bagmask[t])
        edge_max = max([edge_max] + sizes)
        adhw = max(adhw, popcount(union))
        bagw = max(bagw, bag)
        gprtw = max(gprtw, bag + len(bold))
        wollan = max(wollan, three_center_size(G, r.bagmask[t], branches))
    return WidthReport(
        wollan=max(wollan, edge_max),
        gprtw=max(gprtw, edge_max),
        adhesion_width=adhw,
        bag_width=bagw,
    )


def induce_on_immersion(G: MultiGraph, H: MultiGraph, model: ImmersionModel,
                        D: TreeCutDecomposition) -> TreeCutDecomposition:
    """Same tree; each bag becomes the H-vertices whose images lie in it."""
    ok, why = verify_immersion_model(G, H, model)
    if not ok:
        raise InvalidModel(why)
    require_valid(G, D)
    pre = {}
    for h, g in model.vertex_map.items():
        pre[g] = h
    bags = [frozenset(pre[g] for g in bag if g in pre) for bag in D.bags]
    return TreeCutDecomposition(tuple(bags), D.tree_edges)


def simplify(G: MultiGraph, D: TreeCutDecomposition) -> TreeCutDecomposition:
    """Drop empty-bag nodes of tree-degree <= 1 and splice empty ones of degree 2.

    Node ids are renumbered densely, preserving relative order.
    """
    require_valid(G, D)
    alive = set(D.nodes)
    adj = {t: set(D._adj()[t]) for t in D.nodes}
    changed = True
    while changed and len(alive) > 1:
        changed = False
        for t in sorted(alive):
            if D.bags[t] or len(alive) == 1:
                continue
            nb = adj[t]
            if len(nb) <= 1:
                for s in nb:
                    adj[s].discard(t)
            elif len(nb) == 2:
                s1, s2 = sorted(nb)
                adj[s1].discard(t)
                adj[s2].discard(t)
                adj[s1].add(s2)
                adj[s2].add(s1)
            else:
                continue
            alive.discard(t)
            del adj[t]
            changed = True
    keep = sorted(alive)
    new = {t: i for i, t in enumerate(keep)}
    edges = sorted({(min(new[s], new[t]), max(new[s], new[t])) for s in keep for t in adj[s]})
    return TreeCutDecomposition(tuple(D.bags[t] for t in keep), tuple(edges))


def canonical_form(D: TreeCutDecomposition) -> TreeCutDecomposition:
    """Sorted edge list; used for byte-stable output."""
    return TreeCutDecomposition(D.bags, tuple(sorted((min(s, t), max(s, t)) for s, t in D.tree_edges)))


def star_decomposition(G: MultiGraph, center: Iterable[int]) -> TreeCutDecomposition:
    """Center bag ``center``; every other vertex in its own leaf bag."""
    center = frozenset(center)
    rest = [v for v in G.vertices if v not in center]
    bags = [center] + [frozenset({v}) for v in rest]
    return TreeCutDecomposition(tuple(bags), tuple((0, i) for i in range(1, len(bags))))
