"""Exact desk-scale search for tree-cut decompositions and brambles.

Two independent routes decide whether G has a decomposition with
adhesion-width < a and bag-width < b:

* ``exists_decomposition`` splits G into 3-edge-connected torsos, runs a
  memoized subset search on each, and glues the witnesses;
* ``enumerate_canonical`` lists every canonical decomposition (no empty
  node of tree-degree <= 2) and is used as the plain oracle, for
  Wollan's width, and for the good decompositions behind bramble synthesis.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .certificates import Bramble, Slab
from .decomposition import TreeCutDecomposition, measure_widths, simplify, three_center_size, validate
from .errors import BudgetExceeded, CertificateCorrupt, PreconditionViolated
from .graph import MultiGraph, bits, connected_components_mask, popcount, three_ecc
from .tcc import component_torso, glue, torso_immersion_model


@dataclass
class SolverBudget:
    max_vertices: int = 14  # per 3ECC torso for the subset search
    max_enum_vertices: int = 6  # exhaustive canonical enumeration
    max_tree_nodes: int | None = None  # default 2n
    time_limit: float | None = None  # seconds
    deterministic: bool = True
    _deadline: float | None = field(default=None, repr=False)

    def start(self):
        if self.time_limit is not None and self._deadline is None:
            self._deadline = time.monotonic() + self.time_limit
        return self

    def check(self):
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise BudgetExceeded(f"time limit of {self.time_limit}s exceeded")


@dataclass
class GoodDecomposition:
    decomposition: TreeCutDecomposition
    petals: list


def _tree_from_nested(root) -> TreeCutDecomposition:
    """(bagmask, [children]) nested tuples -> decomposition with root 0."""
    bags, edges = [], []
    stack = [(root, -1)]
    while stack:
        (bag, kids), parent = stack.pop()
        me = len(bags)
        bags.append(bag)
        if parent >= 0:
            edges.append((parent, me))
        for k in reversed(kids):
            stack.append((k, me))
    return bags, edges


def _subset_search(G: MultiGraph, a: int, b: int, budget: SolverBudget):
    """Rooted search: a subtree below a tree edge is identified by its vertex set U.

    The root node of that subtree needs a bag X subset of U with |X| < b and
    a split of U - X into feasible child sets, such that the bold boundaries
    among U and the children jointly hold fewer than a edges.
    """
    full = G.all_mask
    bold = {}

    def bold_of(mask):
        m = bold.get(mask)
        if m is None:
            m = G.boundary_mask(mask)
            if popcount(m) < 3:
                m = 0
            bold[mask] = m
        return m

    memo: dict = {}
    steps = [0]

    def tick():
        steps[0] += 1
        if steps[0] & 1023 == 0:
            budget.check()

    def split(R, acc, forbid_whole, pmemo):
        """Blocks partitioning R, each feasible, with bold union kept < a."""
        key = (R, acc, forbid_whole)
        if key in pmemo:
            return pmemo[key]
        tick()
        low = R & -R
        rest = R & ~low
        result = None
        sub = rest
        while True:
            C = sub | low
            if not (forbid_whole and C == R):
                acc2 = acc | bold_of(C)
                if popcount(acc2) < a:
                    node = feasible(C)
                    if node is not None:
                        if C == R:
                            result = [node]
                        else:
                            more = split(R & ~C, acc2, False, pmemo)
                            if more is not None:
                                result = [node] + more
                        if result is not None:
                            break
            if sub == 0:
                break
            sub = (sub - 1) & rest
        pmemo[key] = result
        return result

    def feasible(U):
        if U in memo:
            return memo[U]
        memo[U] = None
        up = 0 if U == full else bold_of(U)
        if popcount(up) >= a:
            return None
        pmemo: dict = {}
        found = None
        # bags by ascending size, then ascending mask
        for X in sorted(_submasks(U), key=lambda x: (popcount(x), x)):
            if popcount(X) >= b:
                break
            R = U & ~X
            if R == 0:
                found = (X, [])
                break
            kids = split(R, up, X == 0, pmemo)
            if kids is not None:
                found = (X, kids)
                break
        memo[U] = found
        return found

    return feasible(full)


def _submasks(U):
    sub = U
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & U


def search_connected_piece(G: MultiGraph, a: int, b: int,
                           budget: SolverBudget | None = None) -> TreeCutDecomposition | None:
    """Subset search on G directly (no 3ECC split); result is simplified."""
    budget = (budget or SolverBudget()).start()
    budget.check()
    if G.n > budget.max_vertices:
        raise BudgetExceeded(f"{G.n} vertices exceed the budget of {budget.max_vertices}")
    root = _subset_search(G, a, b, budget)
    if root is None:
        return None
    bags, edges = _tree_from_nested(root)
    D = TreeCutDecomposition(tuple(G.vset(x) for x in bags), tuple(edges))
    return simplify(G, D)


def torso_decompositions(G: MultiGraph, a: int, b: int, budget: SolverBudget | None = None) -> dict:
    """Per 3ECC block: a decomposition of its torso, or None if there is none."""
    budget = (budget or SolverBudget()).start()
    out = {}
    for A in three_ecc(G):
        ct = component_torso(G, A)
        out[A] = search_connected_piece(ct.graph, a, b, budget)
    return out


def exists_decomposition(G: MultiGraph, a: int, b: int,
                         budget: SolverBudget | None = None) -> TreeCutDecomposition | None:
    """A decomposition with adhesion-width < a and bag-width < b, or None."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    budget = (budget or SolverBudget()).start()
    parts = {}
    for A in three_ecc(G):
        ct = component_torso(G, A)
        D = search_connected_piece(ct.graph, a, b, budget)
        if D is None:
            return None
        parts[A] = D
    D = simplify(G, glue(G, parts))
    w = measure_widths(G, D)
    if validate(G, D) or w.adhesion_width >= a or w.bag_width >= b:
        raise CertificateCorrupt("glued witness violates the requested bounds")
    return D


def ab_tcw(G: MultiGraph, budget: SolverBudget | None = None) -> tuple:
    """(least k with a decomposition of adhesion-width <= k and bag-width <= k, witness)."""
    budget = (budget or SolverBudget()).start()
    for k in range(1, max(G.n, 1) + 1):
        D = exists_decomposition(G, k + 1, k + 1, budget)
        if D is not None:
            return k, D
    raise CertificateCorrupt("single-bag decomposition should always succeed")


# ---------------------------------------------------------------- enumeration

@lru_cache(maxsize=None)
def canonical_shapes(n: int) -> tuple:
    """All canonical decompositions of vertex set 1..n as (bag masks, tree edges).

    Vertices are inserted in ascending order.  Vertex v joins an existing
    bag, hangs as a new leaf, subdivides an edge, or hangs off a new empty
    node subdividing an edge; removing v inverts exactly one of these.
    """
    if n < 1:
        return ()
    out = []

    def rec(v, bags, edges):
        if v > n:
            out.append((tuple(bags), tuple(edges)))
            return
        bit = 1 << (v - 1)
        N = len(bags)
        for t in range(N):
            nb = list(bags)
            nb[t] |= bit
            rec(v + 1, nb, edges)
        for t in range(N):
            rec(v + 1, bags + [bit], edges + [(t, N)])
        for i, (s, t) in enumerate(edges):
            rest = edges[:i] + edges[i + 1:]
            rec(v + 1, bags + [bit], rest + [(s, N), (N, t)])
            rec(v + 1, bags + [0, bit], rest + [(s, N), (N, t), (N, N + 1)])

    rec(2, [1], [])
    return tuple(out)


@lru_cache(maxsize=None)
def _shape_views(n: int) -> tuple:
    """(views, per-shape view ids); a view is (bag mask, sorted branch masks)."""
    full = (1 << n) - 1
    view_id: dict = {}
    per_shape = []
    for bags, edges in canonical_shapes(n):
        N = len(bags)
        adj = [[] for _ in range(N)]
        for s, t in edges:
            adj[s].append(t)
            adj[t].append(s)
        parent = [-1] * N
        order = [0]
        seen = [False] * N
        seen[0] = True
        for x in order:
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    order.append(y)
        sub = list(bags)
        for x in reversed(order[1:]):
            sub[parent[x]] |= sub[x]
        ids = []
        for t in range(N):
            brs = tuple(sorted(sub[s] if parent[s] == t else full & ~sub[t] for s in adj[t]))
            key = (bags[t], brs)
            if key not in view_id:
                view_id[key] = len(view_id)
            ids.append(view_id[key])
        per_shape.append(tuple(ids))
    views = [None] * len(view_id)
    for k, i in view_id.items():
        views[i] = k
    return tuple(views), tuple(per_shape)


def shape_decomposition(n: int, i: int) -> TreeCutDecomposition:
    bags, edges = canonical_shapes(n)[i]
    return TreeCutDecomposition(tuple(frozenset(x + 1 for x in bits(m)) for m in bags), edges)


def enumerate_canonical(G: MultiGraph, budget: SolverBudget | None = None):
    """Yield every canonical decomposition of G."""
    budget = budget or SolverBudget()
    if G.n > budget.max_enum_vertices:
        raise BudgetExceeded(f"{G.n} vertices exceed the enumeration budget")
    for i in range(len(canonical_shapes(G.n))):
        yield shape_decomposition(G.n, i)


@dataclass
class WidthTable:
    """Per canonical shape of G: adhesion-width, bag-width, Wollan's width, GPRTW's width,
    and whether each node is a leaf (tree-degree <= 1)."""
    adhw: list
    bagw: list
    wollan: list
    gprtw: list


def width_table(G: MultiGraph, budget: SolverBudget | None = None) -> WidthTable:
    budget = budget or SolverBudget()
    if G.n > budget.max_enum_vertices:
        raise BudgetExceeded(f"{G.n} vertices exceed the enumeration budget")
    views, shapes = _shape_views(G.n)
    v_adh, v_bag, v_wol, v_gpr = [], [], [], []
    for bag, brs in views:
        masks = [G.boundary_mask(x) for x in brs]
        sizes = [popcount(m) for m in masks]
        union = 0
        nbold = 0
        for m, s in zip(masks, sizes):
            if s >= 3:
                union |= m
                nbold += 1
        emax = max(sizes, default=0)
        v_adh.append(popcount(union))
        v_bag.append(popcount(bag))
        v_wol.append(max(emax, three_center_size(G, bag, brs)))
        v_gpr.append(max(emax, popcount(bag) + nbold))
    t = WidthTable([], [], [], [])
    for ids in shapes:
        t.adhw.append(max(v_adh[i] for i in ids))
        t.bagw.append(max(v_bag[i] for i in ids))
        t.wollan.append(max(v_wol[i] for i in ids))
        t.gprtw.append(max(v_gpr[i] for i in ids))
    return t


def plain_exists(G: MultiGraph, a: int, b: int, budget: SolverBudget | None = None):
    """Oracle: first canonical decomposition with adhesion-width < a and bag-width < b."""
    t = width_table(G, budget)
    for i, (x, y) in enumerate(zip(t.adhw, t.bagw)):
        if x < a and y < b:
            return shape_decomposition(G.n, i)
    return None


def pareto_widths(G: MultiGraph, budget: SolverBudget | None = None) -> set:
    """All (adhesion-width, bag-width) pairs attained by canonical decompositions."""
    t = width_table(G, budget)
    return set(zip(t.adhw, t.bagw))


def wollan_tcw(G: MultiGraph, budget: SolverBudget | None = None) -> int:
    return min(width_table(G, budget).wollan)


def gprtw_tcw(G: MultiGraph, budget: SolverBudget | None = None) -> int:
    return min(width_table(G, budget).gprtw)


def ab_tcw_enumerated(G: MultiGraph, budget: SolverBudget | None = None) -> int:
    t = width_table(G, budget)
    return min(max(1, x, y) for x, y in zip(t.adhw, t.bagw))


# ---------------------------------------------------------------- good decompositions

def is_good(G: MultiGraph, D: TreeCutDecomposition, a: int, b: int) -> bool:
    from .decomposition import node_adhesion_mask
    for t in D.nodes:
        if popcount(node_adhesion_mask(G, D, t)) >= a:
            return False
        if len(D.bags[t]) >= b and len(D.neighbors(t)) > 1:
            return False
    return True


def petals(D: TreeCutDecomposition, b: int) -> list:
    return [D.bags[t] for t in D.nodes if len(D.neighbors(t)) <= 1 and len(D.bags[t]) >= b]


def cut_star_decomposition(G_A: MultiGraph, F: Iterable[int], b: int) -> GoodDecomposition:
    """Empty center joined to one leaf per component of G_A - F."""
    mask = 0
    for e in F:
        mask |= 1 << e
    comps = connected_components_mask(G_A, G_A.all_mask, mask)
    comps.sort(key=lambda c: sorted(bits(c)))
    bags = [frozenset()] + [G_A.vset(c) for c in comps]
    D = TreeCutDecomposition(tuple(bags), tuple((0, i) for i in range(1, len(bags))))
    return GoodDecomposition(D, petals(D, b))


def good_petal_sets(G_A: MultiGraph, a: int, b: int, budget: SolverBudget | None = None) -> list:
    """Distinct petal sets (frozensets of vertex masks) of the good canonical decompositions."""
    budget = budget or SolverBudget()
    if G_A.n > budget.max_enum_vertices:
        raise BudgetExceeded(f"{G_A.n} torso vertices exceed the enumeration budget")
    views, shapes = _shape_views(G_A.n)
    bad_view = []
    for bag, brs in views:
        union = 0
        for x in brs:
            m = G_A.boundary_mask(x)
            if popcount(m) >= 3:
                union |= m
        big = popcount(bag) >= b
        bad_view.append(popcount(union) >= a or (big and len(brs) > 1))
    out = set()
    for ids in shapes:
        if any(bad_view[i] for i in ids):
            continue
        ps = frozenset(views[i][0] for i in ids
                       if len(views[i][1]) <= 1 and popcount(views[i][0]) >= b)
        out.add(ps)
    return sorted(out, key=lambda s: sorted(sorted(bits(x)) for x in s))


def _lex(mask):
    return sorted(bits(mask))


def minimal_petal_family(petal_sets: list) -> list:
    """Inclusion-minimal upward-closed subfamily of all petals hitting every petal set.

    Starts from all petals and keeps deleting the lexicographically least
    inclusion-minimal member whose removal still hits every petal set.
    """
    if any(not ps for ps in petal_sets):
        raise PreconditionViolated("a good decomposition has no petal")
    family = set()
    for ps in petal_sets:
        family |= ps

    def hits(fam):
        return all(ps & fam for ps in petal_sets)

    changed = True
    while changed:
        changed = False
        minimal = [C for C in family if not any(D != C and D & ~C == 0 for D in family)]
        for C in sorted(minimal, key=_lex):
            trial = family - {C}
            if hits(trial):
                family = trial
                changed = True
                break
    return sorted(family, key=_lex)


def synthesize_bramble(G: MultiGraph, a: int, b: int, budget: SolverBudget | None = None) -> Bramble:
    """Bramble of adhesion-order >= a and bag-order >= b when no decomposition exists."""
    budget = (budget or SolverBudget()).start()
    if b == 1:
        return Bramble([Slab.make({1}, (), {1})])
    torsos = torso_decompositions(G, a, b, budget)
    failing = [A for A in three_ecc(G) if torsos[A] is None]
    if not failing:
        raise PreconditionViolated("a decomposition with the requested widths exists")
    A = failing[0]
    ct = component_torso(G, A)
    GA = ct.graph
    fam = minimal_petal_family(good_petal_sets(GA, a, b, budget))
    model = torso_immersion_model(G, A)
    slabs = []
    for S in fam:
        if len(connected_components_mask(GA, S)) != 1:
            continue
        verts = set()
        edges = set()
        for e, (x, y) in enumerate(GA.edges):
            if S >> (x - 1) & 1 and S >> (y - 1) & 1:
                for f in model.edge_paths[e]:
                    edges.add(f)
                    verts.update(G.edges[f])
        core = {ct.to_graph_vertex(i + 1) for i in bits(S)}
        verts |= core
        slabs.append(Slab.make(verts, edges, core))
    return Bramble(slabs)
