"""Small connected multigraphs up to isomorphism, and the duality cross-check."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations

from .certificates import find_tangle, verify_tangle
from .decomposition import measure_widths, validate
from .graph import MultiGraph, is_connected
from .solver import SolverBudget, exists_decomposition


def canonical_edges(n: int, edges) -> tuple:
    """Lexicographically least sorted edge list over all relabelings."""
    best = None
    for p in permutations(range(1, n + 1)):
        cand = tuple(sorted(tuple(sorted((p[u - 1], p[v - 1]))) for u, v in edges))
        if best is None or cand < best:
            best = cand
    return best


@lru_cache(maxsize=None)
def _connected_graphs(max_n: int, max_m: int) -> tuple:
    out = []
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(1, n + 1), 2))
        seen = set()
        for m in range(n - 1, max_m + 1):
            for es in combinations_with_replacement(pairs, m):
                G = MultiGraph(n, es)
                if not is_connected(G):
                    continue
                key = canonical_edges(n, es)
                if key in seen:
                    continue
                seen.add(key)
                out.append(MultiGraph(n, key))
    return tuple(out)


def connected_multigraphs(max_n: int, max_m: int) -> list:
    """Connected loop-free multigraphs with 1..max_n vertices and at most max_m edges,
    one per isomorphism class, ordered by (n, m, edge list)."""
    return list(_connected_graphs(max_n, max_m))


@dataclass
class DualityRecord:
    graph: MultiGraph
    a: int
    b: int
    decomposition: object  # TreeCutDecomposition or None
    tangle: object  # Tangle or None
    witness_ok: bool

    @property
    def agree(self) -> bool:
        return (self.decomposition is None) == (self.tangle is not None)


def duality_check(graphs, max_a: int, max_b: int, budget: SolverBudget | None = None) -> list:
    """Decide both sides for every graph and every 1 <= a <= max_a, 1 <= b <= max_b."""
    out = []
    for G in graphs:
        for a in range(1, max_a + 1):
            for b in range(1, max_b + 1):
                D = exists_decomposition(G, a, b, budget)
                T = find_tangle(G, a, b)
                ok = True
                if D is not None:
                    w = measure_widths(G, D)
                    ok = not validate(G, D) and w.adhesion_width < a and w.bag_width < b
                if T is not None:
                    ok = ok and verify_tangle(G, T) is None
                out.append(DualityRecord(G, a, b, D, T, ok))
    return out
