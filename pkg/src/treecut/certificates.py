"""Brambles and tangles: verification, orders, search and conversions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .decomposition import TreeCutDecomposition, _rooted, measure_widths, require_valid
from .errors import (
    BudgetExceeded,
    CertificateCorrupt,
    DegenerateStar,
    InsufficientOrders,
    PreconditionViolated,
)
from .graph import MultiGraph, bits, connected_components_mask, popcount, three_ecc


@dataclass(frozen=True)
class Slab:
    """Connected subgraph H = (vertices, edges) of G with a 3-edge-connected core."""
    vertices: frozenset
    edges: frozenset
    core: frozenset

    @classmethod
    def make(cls, vertices, edges, core):
        return cls(frozenset(vertices), frozenset(edges), frozenset(core))


@dataclass(frozen=True)
class Bramble:
    slabs: tuple

    def __post_init__(self):
        object.__setattr__(self, "slabs", tuple(self.slabs))


@dataclass(frozen=True)
class Separation:
    side_a: frozenset
    side_b: frozenset


@dataclass(frozen=True, order=True)
class OrientedSeparation:
    """(from_side, to_side); points toward ``to_side``."""
    from_side: frozenset
    to_side: frozenset

    def sort_key(self):
        return (sorted(self.from_side), sorted(self.to_side))


@dataclass(frozen=True)
class Tangle:
    a: int
    b: int
    orientation: frozenset  # of OrientedSeparation

    def sorted_members(self) -> list:
        return sorted(self.orientation, key=OrientedSeparation.sort_key)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()


@dataclass(frozen=True)
class BrambleOrders:
    """``adhesion`` is an int, ``math.inf``, or None when no disconnecting
    set of size < cap was found (the order is then at least ``cap``)."""
    adhesion: object
    bag: object
    cap: int

    def at_least(self, a: int, b: int) -> bool:
        adh_ok = self.adhesion is None and self.cap >= a or \
            self.adhesion is not None and self.adhesion >= a
        return adh_ok and self.bag >= b


# ---------------------------------------------------------------- brambles

def _slab_problem(G: MultiGraph, slab: Slab, where: dict) -> str | None:
    if not slab.vertices:
        return "slab subgraph has no vertices"
    if any(not (1 <= v <= G.n) for v in slab.vertices):
        return "slab subgraph holds an unknown vertex"
    for e in slab.edges:
        if not (0 <= e < G.m):
            return f"slab subgraph holds unknown edge {e}"
        if not set(G.edges[e]) <= slab.vertices:
            return f"edge {e} leaves the slab subgraph"
    if not slab.core:
        return "slab core is empty"
    if not slab.core <= slab.vertices:
        return "slab core is not inside the subgraph"
    if not _connected_within(G, slab.vertices, slab.edges, 0):
        return "slab subgraph is not connected"
    if len({where[v] for v in slab.core}) != 1:
        return "slab core is not 3-edge-connected in G"
    return None


def _connected_within(G, vertices, edges, removed_mask) -> bool:
    """Is (vertices, edges - removed) connected?"""
    vs = list(vertices)
    if not vs:
        return True
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = len(vs)
    for e in edges:
        if removed_mask >> e & 1:
            continue
        u, v = G.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1


def _core_split(G, slab: Slab, removed_mask: int) -> bool:
    """Does removing the edges in ``removed_mask`` disconnect two core vertices inside H?"""
    parent = {v: v for v in slab.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in slab.edges:
        if removed_mask >> e & 1:
            continue
        u, v = G.edges[e]
        parent[find(u)] = find(v)
    return len({find(v) for v in slab.core}) > 1


def verify_bramble(G: MultiGraph, B: Bramble) -> Violation | None:
    if not B.slabs:
        return Violation("empty", "bramble has no slabs")
    where = {v: i for i, blk in enumerate(three_ecc(G)) for v in blk}
    for i, slab in enumerate(B.slabs):
        why = _slab_problem(G, slab, where)
        if why:
            return Violation("slab", f"slab {i}: {why}", (i,))
    for i, j in combinations(range(len(B.slabs)), 2):
        if not B.slabs[i].core & B.slabs[j].core:
            return Violation("touching", f"slabs {i} and {j} do not touch", (i, j))
    return None


def disconnects(G: MultiGraph, F: Iterable[int], slab: Slab) -> bool:
    mask = 0
    for e in F:
        mask |= 1 << e
    return _core_split(G, slab, mask)


def bramble_orders(G: MultiGraph, B: Bramble, cap: int) -> BrambleOrders:
    """Bag-order and adhesion-order (searched over edge sets of size < cap)."""
    bag = min((len(s.core) for s in B.slabs), default=math.inf)
    if not B.slabs:
        return BrambleOrders(0, bag, cap)
    if any(len(s.core) == 1 for s in B.slabs):
        return BrambleOrders(math.inf, bag, cap)
    relevant = sorted(set().union(*(s.edges for s in B.slabs)))
    for k in range(cap):
        for F in combinations(relevant, k):
            mask = 0
            for e in F:
                mask |= 1 << e
            if all(_core_split(G, s, mask) for s in B.slabs):
                return BrambleOrders(k, bag, cap)
    return BrambleOrders(None, bag, cap)


def min_disconnecting_set(G: MultiGraph, B: Bramble, cap: int) -> tuple | None:
    """Lexicographically least smallest disconnecting set of size < cap, or None."""
    if any(len(s.core) == 1 for s in B.slabs):
        return None
    relevant = sorted(set().union(*(s.edges for s in B.slabs))) if B.slabs else []
    for k in range(cap):
        for F in combinations(relevant, k):
            if all(disconnects(G, F, s) for s in B.slabs):
                return F
    return None


# ---------------------------------------------------------------- separations

def separation_masks(G: MultiGraph, a: int) -> list:
    """(side_a, side_b) masks of all separations of order < a; vertex 1 in side_b."""
    out = []
    if G.n == 0:
        return out
    for sub in range(1 << (G.n - 1)):
        A = sub << 1
        if G.order(A) < a:
            out.append((A, G.all_mask & ~A))
    out.sort(key=lambda ab: (G.order(ab[0]), sorted(bits(ab[0]))))
    return out


def enumerate_separations(G: MultiGraph, a: int) -> list:
    return [Separation(G.vset(x), G.vset(y)) for x, y in separation_masks(G, a)]


def _star_in_sigma(G, members: Sequence[tuple], a: int, b: int, must: int | None = None):
    """Search for a star in Sigma_{a,b} among oriented members (from, to) masks.

    Members are assumed pairwise consistent.  When ``must`` is given, only
    stars containing members[must] are considered.  Returns the index tuple
    of the lexicographically first witness, or None.
    """
    bd = [G.boundary_mask(f) for f, _ in members]
    bold = [m if popcount(m) >= 3 else 0 for m in bd]
    n_all = G.all_mask
    idx = [i for i in range(len(members)) if i != must]

    def dfs(start, chosen, fromu, boldu, inter):
        if chosen and popcount(inter) < b:
            return tuple(chosen)
        for p in range(start, len(idx)):
            i = idx[p]
            f, t = members[i]
            if f & fromu:
                continue
            nb = boldu | bold[i]
            if popcount(nb) >= a:
                continue
            chosen.append(i)
            got = dfs(p + 1, chosen, fromu | f, nb, inter & t)
            chosen.pop()
            if got:
                return got
        return None

    if must is None:
        return dfs(0, [], 0, 0, n_all)
    f, t = members[must]
    if popcount(bold[must]) >= a:
        return None
    got = dfs(0, [must], f, bold[must], t)
    return tuple(sorted(got)) if got else None


def _oriented_masks(G, T: Tangle) -> list:
    return [(G.vmask(o.from_side), G.vmask(o.to_side)) for o in T.sorted_members()]


def _check_complete_consistent(G, T: Tangle) -> Violation | None:
    members = _oriented_masks(G, T)
    want = {x for x, _ in separation_masks(G, T.a)}
    seen = {}
    for (f, t), o in zip(members, T.sorted_members()):
        if f & t or (f | t) != G.all_mask:
            return Violation("separation", "member is not a separation", (o,))
        if G.order(f) >= T.a:
            return Violation("order", f"member has order {G.order(f)} >= a", (o,))
        key = t if f & 1 else f  # side without vertex 1
        if key in seen:
            return Violation("orientation", "separation oriented both ways", (seen[key], o))
        seen[key] = o
    missing = want - set(seen)
    if missing:
        x = min(missing, key=lambda m: sorted(bits(m)))
        return Violation("completeness", "separation not oriented",
                         (Separation(G.vset(x), G.vset(G.all_mask & ~x)),))
    ms = T.sorted_members()
    for i in range(len(members)):
        for j in range(i, len(members)):
            if not members[i][1] & members[j][1]:
                return Violation("consistency", "two members point away from each other",
                                 (ms[i], ms[j]))
    return None


def verify_tangle(G: MultiGraph, T: Tangle) -> Violation | None:
    bad = _check_complete_consistent(G, T)
    if bad:
        return bad
    members = _oriented_masks(G, T)
    star = _star_in_sigma(G, members, T.a, T.b)
    if star:
        ms = T.sorted_members()
        return Violation("star", "orientation contains a star of Sigma_{a,b}",
                         tuple(ms[i] for i in star))
    return None


def in_sigma(G: MultiGraph, star: Sequence[OrientedSeparation], a: int, b: int) -> bool:
    """Is ``star`` a star of Sigma_{a,b}?"""
    if not star:
        return False
    ms = [(G.vmask(o.from_side), G.vmask(o.to_side)) for o in star]
    for f, t in ms:
        if f & t or (f | t) != G.all_mask or G.order(f) >= a:
            return False
    for i in range(len(ms)):
        for j in range(i, len(ms)):
            if not ms[i][1] & ms[j][1]:
                return False
            if i != j and ms[i][0] & ms[j][0]:
                return False
    union, inter = 0, G.all_mask
    for f, t in ms:
        m = G.boundary_mask(f)
        if popcount(m) >= 3:
            union |= m
        inter &= t
    return popcount(union) < a and popcount(inter) < b


def vertex_tangle(G: MultiGraph, a: int, b: int, v: int) -> Tangle:
    """Orient every separation of order < a toward the side holding v."""
    bit = 1 << (v - 1)
    orient = set()
    for x, y in separation_masks(G, a):
        f, t = (x, y) if y & bit else (y, x)
        orient.add(OrientedSeparation(G.vset(f), G.vset(t)))
    return Tangle(a, b, frozenset(orient))


DEFAULT_MAX_SEPARATIONS = 1 << 16


def find_tangle(G: MultiGraph, a: int, b: int,
                max_separations: int = DEFAULT_MAX_SEPARATIONS) -> Tangle | None:
    """Backtracking search for an (a, b)-tangle; None when none exists."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if G.n > 22:
        raise BudgetExceeded(f"2^{G.n - 1} candidate separations")
    seps = separation_masks(G, a)
    if len(seps) > max_separations:
        raise BudgetExceeded(f"{len(seps)} separations of order < {a}")
    options = []
    for x, y in seps:
        opts = [(f, t) for f, t in ((x, y), (y, x)) if popcount(t) >= b]
        if not opts:
            return None
        opts.sort(key=lambda ft: -popcount(ft[1]))  # larger side first
        options.append(opts)
    order = sorted(range(len(seps)), key=lambda i: (len(options[i]), min(popcount(seps[i][0]),
                                                                          popcount(seps[i][1]))))
    chosen: list = []

    def consistent(ft):
        return all(ft[1] & t for _, t in chosen)

    def rec(k):
        if k == len(order):
            return True
        for ft in options[order[k]]:
            if not consistent(ft):
                continue
            chosen.append(ft)
            if _star_in_sigma(G, chosen, a, b, must=len(chosen) - 1) is None:
                # forward check: every later separation keeps a consistent option
                if all(any(consistent(o) for o in options[order[j]])
                       for j in range(k + 1, len(order))):
                    if rec(k + 1):
                        return True
            chosen.pop()
        return False

    if not rec(0):
        return None
    T = Tangle(a, b, frozenset(OrientedSeparation(G.vset(f), G.vset(t)) for f, t in chosen))
    bad = verify_tangle(G, T)
    if bad:
        raise CertificateCorrupt(f"search produced an invalid tangle: {bad.message}")
    return T


def bramble_to_tangle(G: MultiGraph, B: Bramble, a: int, b: int) -> Tangle:
    """Orient each separation of order < a toward the side containing a core."""
    orders = bramble_orders(G, B, cap=a)
    if not orders.at_least(a, b):
        raise InsufficientOrders(f"bramble orders ({orders.adhesion}, {orders.bag}) below ({a}, {b})")
    cores = [G.vmask(s.core) for s in B.slabs]
    orient = set()
    for x, y in separation_masks(G, a):
        in_x = any(c & ~x == 0 for c in cores)
        in_y = any(c & ~y == 0 for c in cores)
        if in_x == in_y:
            raise CertificateCorrupt("a separation has cores on both sides or on neither")
        f, t = (y, x) if in_x else (x, y)
        orient.add(OrientedSeparation(G.vset(f), G.vset(t)))
    return Tangle(a, b, frozenset(orient))


def refute_decomposition(G: MultiGraph, D: TreeCutDecomposition, T: Tangle) -> list:
    """Sink-node star of D under T; lies in Sigma_{a,b}, so T is no tangle."""
    require_valid(G, D)
    w = measure_widths(G, D)
    if not (w.adhesion_width < T.a and w.bag_width < T.b):
        raise PreconditionViolated(
            f"decomposition widths ({w.adhesion_width}, {w.bag_width}) not below ({T.a}, {T.b})")
    bad = _check_complete_consistent(G, T)
    if bad:
        raise PreconditionViolated(f"orientation is not complete and consistent: {bad.message}")
    members = {(G.vmask(o.from_side), G.vmask(o.to_side)) for o in T.orientation}
    r = _rooted(G, D)
    outdeg = [0] * len(D.bags)
    for s, t in D.tree_edges:
        toward_t = r.side(s, t)
        if (G.all_mask & ~toward_t, toward_t) in members:
            outdeg[s] += 1
        elif (toward_t, G.all_mask & ~toward_t) in members:
            outdeg[t] += 1
        else:
            raise PreconditionViolated(f"tree edge {s}-{t} induces a separation of order >= {T.a}")
    sink = min(t for t in D.nodes if outdeg[t] == 0)
    if not D.neighbors(sink):
        raise DegenerateStar("sink node has no incident tree edges; the star would be empty")
    star = []
    for s in D.neighbors(sink):
        away = r.side(sink, s)
        star.append(OrientedSeparation(G.vset(away), G.vset(G.all_mask & ~away)))
    star.sort(key=OrientedSeparation.sort_key)
    if not in_sigma(G, star, T.a, T.b):
        raise CertificateCorrupt("sink star is not in Sigma_{a,b}")
    return star


def core_components_after(G: MultiGraph, slab: Slab, F: Iterable[int]) -> list:
    """Vertex sets of the components of H - F, for diagnostics."""
    mask = 0
    for e in F:
        mask |= 1 << e
    vmask = G.vmask(slab.vertices)
    removed = mask | ~_edge_mask(slab.edges)
    return [G.vset(c) for c in connected_components_mask(G, vmask, removed)]


def _edge_mask(edges) -> int:
    out = 0
    for e in edges:
        out |= 1 << e
    return out
