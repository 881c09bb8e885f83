"""Loop-free multigraphs and the edge-connectivity machinery built on them.

Vertices are 1..n, edges are identified by their 0-based position in the
edge list, so parallel edges stay distinct.  Vertex sets are frozensets on
the public surface; hot paths use bitmasks (bit ``v-1`` for vertex ``v``,
bit ``e`` for edge ``e``).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BadEndpoint,
    BadVertex,
    EmptyGraph,
    InvalidPartition,
    InvalidSeparation,
    LoopEdge,
    MalformedModel,
    SameVertex,
)

VertexPartition = tuple  # tuple[frozenset[int], ...]


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int) -> Iterable[int]:
    """Yield indices of set bits, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple  # tuple[tuple[int, int], ...]; edge id = position

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.n < 0:
            raise EmptyGraph("negative vertex count")
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise BadEndpoint(f"edge {u}-{v} outside 1..{self.n}")
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def incidence(self) -> tuple:
        """incidence[v] = tuple of (edge_id, other_endpoint), index 0 unused."""
        inc = [[] for _ in range(self.n + 1)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append((e, v))
            inc[v].append((e, u))
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _edge_masks(self) -> tuple:
        return tuple((1 << (u - 1), 1 << (v - 1)) for u, v in self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def vmask(self, X: Iterable[int]) -> int:
        mask = 0
        for v in X:
            if not (1 <= v <= self.n):
                raise BadVertex(f"vertex {v} not in 1..{self.n}")
            mask |= 1 << (v - 1)
        return mask

    def vset(self, mask: int) -> frozenset:
        return frozenset(i + 1 for i in bits(mask))

    def boundary_mask(self, xmask: int) -> int:
        """Edge mask of delta(X) for a vertex mask X."""
        cache = self.__dict__.setdefault("_bd_cache", {})
        out = cache.get(xmask)
        if out is None:
            out = 0
            for e, (bu, bv) in enumerate(self._edge_masks):
                if bool(xmask & bu) != bool(xmask & bv):
                    out |= 1 << e
            cache[xmask] = out
        return out

    def order(self, xmask: int) -> int:
        return popcount(self.boundary_mask(xmask))


def build_graph(n: int, edge_endpoints: Sequence[tuple]) -> MultiGraph:
    if n < 1:
        raise EmptyGraph("a graph needs at least one vertex")
    return MultiGraph(n, tuple(tuple(e) for e in edge_endpoints))


def boundary(G: MultiGraph, X: Iterable[int]) -> frozenset:
    """delta(X): edge ids with exactly one endpoint in X."""
    return frozenset(bits(G.boundary_mask(G.vmask(X))))


def check_separation(G: MultiGraph, side_a: Iterable[int], side_b: Iterable[int]) -> tuple:
    a, b = frozenset(side_a), frozenset(side_b)
    if a & b:
        raise InvalidSeparation(f"sides overlap in {sorted(a & b)}")
    if a | b != frozenset(G.vertices):
        raise InvalidSeparation("sides do not cover V(G)")
    return a, b


def classify_separation(G: MultiGraph, side_a: Iterable[int], side_b: Iterable[int]) -> tuple:
    """Return (order, 'thin' | 'bold') for the separation {side_a, side_b}."""
    a, _ = check_separation(G, side_a, side_b)
    k = G.order(G.vmask(a))
    return k, ("thin" if k <= 2 else "bold")


def connected_components_mask(G: MultiGraph, vmask: int | None = None, removed: int = 0) -> list:
    """Components (as vertex masks) of G[vmask] minus the edges in ``removed``."""
    if vmask is None:
        vmask = G.all_mask
    seen = 0
    comps = []
    for s in bits(vmask):
        if seen >> s & 1:
            continue
        comp = 1 << s
        stack = [s + 1]
        while stack:
            x = stack.pop()
            for e, y in G.incidence[x]:
                yb = 1 << (y - 1)
                if removed >> e & 1 or not vmask & yb or comp & yb:
                    continue
                comp |= yb
                stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def connected_components(G: MultiGraph, within: Iterable[int] | None = None,
                         removed: Iterable[int] = ()) -> list:
    vmask = G.all_mask if within is None else G.vmask(within)
    rmask = 0
    for e in removed:
        rmask |= 1 << e
    return [G.vset(c) for c in connected_components_mask(G, vmask, rmask)]


def is_connected(G: MultiGraph) -> bool:
    return G.n <= 1 or len(connected_components_mask(G)) == 1


def max_edge_disjoint_paths(G: MultiGraph, u: int, v: int, limit: int | None = None) -> int:
    """Maximum number of pairwise edge-disjoint u-v paths (unit-capacity flow).

    With ``limit`` the search stops once that many paths are found.
    """
    if u == v:
        raise SameVertex(f"u = v = {u}")
    for x in (u, v):
        if not (1 <= x <= G.n):
            raise BadVertex(f"vertex {x} not in 1..{G.n}")
    # flow[e] = +1 along (edges[e][0] -> edges[e][1]), -1 against, 0 unused
    flow = [0] * G.m
    total = 0
    while limit is None or total < limit:
        parent = {u: None}
        queue = deque([u])
        while queue and v not in parent:
            x = queue.popleft()
            for e, y in G.incidence[x]:
                if y in parent:
                    continue
                forward = G.edges[e][0] == x
                if (forward and flow[e] < 1) or (not forward and flow[e] > -1):
                    parent[y] = (x, e)
                    queue.append(y)
        if v not in parent:
            break
        y = v
        while parent[y] is not None:
            x, e = parent[y]
            flow[e] += 1 if G.edges[e][0] == x else -1
            y = x
        total += 1
    return total


def three_edge_connected(G: MultiGraph, u: int, v: int) -> bool:
    return u == v or max_edge_disjoint_paths(G, u, v, limit=3) >= 3


def three_ecc(G: MultiGraph) -> VertexPartition:
    """3-edge-connected components, sorted by least vertex."""
    cache = G.__dict__.get("_3ecc")
    if cache is not None:
        return cache
    blocks: list = []
    for v in G.vertices:
        for blk in blocks:
            if three_edge_connected(G, min(blk), v):
                blk.add(v)
                break
        else:
            blocks.append({v})
    out = tuple(frozenset(b) for b in blocks)
    G.__dict__["_3ecc"] = out
    return out


def block_of(G: MultiGraph, v: int) -> frozenset:
    for blk in three_ecc(G):
        if v in blk:
            return blk
    raise BadVertex(f"vertex {v} not in graph")


def check_partition(G: MultiGraph, P: Sequence[Iterable[int]]) -> tuple:
    blocks = tuple(frozenset(b) for b in P)
    seen: set = set()
    for b in blocks:
        if not b:
            raise InvalidPartition("empty block")
        if seen & b:
            raise InvalidPartition(f"blocks overlap in {sorted(seen & b)}")
        seen |= b
    if seen != set(G.vertices):
        raise InvalidPartition("blocks do not cover V(G)")
    return blocks


def quotient(G: MultiGraph, P: Sequence[Iterable[int]]) -> tuple:
    """Quotient graph G/P and the injective map quotient edge -> original edge.

    Quotient vertex i+1 stands for block P[i].
    """
    blocks = check_partition(G, P)
    where = {}
    for i, b in enumerate(blocks):
        for v in b:
            where[v] = i + 1
    qedges, origin = [], []
    for e, (u, v) in enumerate(G.edges):
        if where[u] != where[v]:
            qedges.append((where[u], where[v]))
            origin.append(e)
    return MultiGraph(len(blocks), tuple(qedges)), tuple(origin)


def biconnected_blocks(G: MultiGraph) -> list:
    """Biconnected blocks as (vertex frozenset, edge-id frozenset) pairs.

    Parallel edges are distinct, so a parallel pair forms a 2-cycle block.
    Isolated vertices yield no block.
    """
    disc = [0] * (G.n + 1)
    low = [0] * (G.n + 1)
    counter = 1
    blocks = []
    estack: list = []
    for root in G.vertices:
        if disc[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(G.incidence[root]))]
        while stack:
            x, pe, it = stack[-1]
            advanced = False
            for e, y in it:
                if e == pe:
                    continue
                if not disc[y]:
                    disc[y] = low[y] = counter
                    counter += 1
                    estack.append(e)
                    stack.append((y, e, iter(G.incidence[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    estack.append(e)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    es = set()
                    while True:
                        f = estack.pop()
                        es.add(f)
                        if f == pe:
                            break
                    vs = frozenset(w for f in es for w in G.edges[f])
                    blocks.append((vs, frozenset(es)))
    return blocks


def is_cactus(G: MultiGraph) -> bool:
    """Every biconnected block is a single edge or a cycle (2-cycles allowed)."""
    for vs, es in biconnected_blocks(G):
        if len(es) == 1:
            continue
        deg = dict.fromkeys(vs, 0)
        for e in es:
            u, v = G.edges[e]
            deg[u] += 1
            deg[v] += 1
        if any(d != 2 for d in deg.values()):
            return False
    return True


def wall(k: int) -> MultiGraph:
    """The k x k wall: k horizontal paths on 2k vertices plus alternating rungs."""
    if k < 1:
        raise ValueError("k must be positive")

    def vid(i, j):  # 1-based row i, column j
        return (i - 1) * 2 * k + j

    edges = []
    for i in range(1, k + 1):
        for j in range(1, 2 * k):
            edges.append((vid(i, j), vid(i, j + 1)))
    for i in range(1, k):
        for j in range(1, 2 * k + 1):
            if i % 2 == j % 2:
                edges.append((vid(i, j), vid(i + 1, j)))
    return MultiGraph(2 * k * k, tuple(edges))


@dataclass
class ImmersionModel:
    """vertex_map: H-vertex -> G-vertex; edge_paths: H-edge id -> G edge-id sequence."""
    vertex_map: dict
    edge_paths: dict = field(default_factory=dict)


def walk_vertices(G: MultiGraph, start: int, path: Sequence[int]) -> list:
    """Vertices visited by following the edge ids from ``start``.

    Raises MalformedModel if consecutive edges do not share an endpoint.
    """
    seq = [start]
    cur = start
    for e in path:
        if not (0 <= e < G.m):
            raise MalformedModel(f"edge id {e} not in G")
        a, b = G.edges[e]
        if cur == a:
            cur = b
        elif cur == b:
            cur = a
        else:
            raise MalformedModel(f"edge {e} does not continue the path at vertex {cur}")
        seq.append(cur)
    return seq


def verify_immersion_model(G: MultiGraph, H: MultiGraph, model: ImmersionModel) -> tuple:
    """Check an immersion model of H in G; returns (ok, first violation or None)."""
    vm = model.vertex_map
    for h in H.vertices:
        if h not in vm:
            raise MalformedModel(f"no image for H-vertex {h}")
        if not (1 <= vm[h] <= G.n):
            raise MalformedModel(f"image of H-vertex {h} not in G")
    for e in range(H.m):
        if e not in model.edge_paths:
            raise MalformedModel(f"no image path for H-edge {e}")
    images = [vm[h] for h in H.vertices]
    if len(set(images)) != len(images):
        return False, "vertex images are not pairwise distinct"
    used: dict = {}
    for e, (x, y) in enumerate(H.edges):
        path = list(model.edge_paths[e])
        src, dst = vm[x], vm[y]
        if path and src not in G.edges[path[0]]:
            src, dst = dst, src
        seq = walk_vertices(G, src, path)
        if seq[-1] != dst or {seq[0], seq[-1]} != {vm[x], vm[y]}:
            return False, f"image of H-edge {e} does not join the images of its endpoints"
        if len(set(seq)) != len(seq):
            return False, f"image of H-edge {e} is not a path (repeats a vertex)"
        for f in path:
            if f in used:
                return False, f"images of H-edges {used[f]} and {e} share G-edge {f}"
            used[f] = e
    return True, None
