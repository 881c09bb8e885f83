"""Joint distribution of Wollan's tree-cut width k and the ab-tree-cut width l.

Covers every connected multigraph up to the given size, then a few walls,
and checks k/2 - 1 <= l <= k^2 along the way.

    python scripts/width_survey.py --max-n 5 --max-m 7 --walls 2
"""
import argparse
from collections import Counter

from treecut.graph import wall
from treecut.solver import SolverBudget, ab_tcw, wollan_tcw
from treecut.sweep import connected_multigraphs


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-m", type=int, default=7)
    p.add_argument("--walls", type=int, default=2, help="largest wall order k to solve")
    args = p.parse_args()

    pairs = Counter()
    for G in connected_multigraphs(args.max_n, args.max_m):
        k, l = wollan_tcw(G), ab_tcw(G)[0]
        assert k - 2 <= 2 * l <= 2 * k * k, (G, k, l)
        pairs[k, l] += 1
    print(f"{'k':>3} {'l':>3} {'graphs':>7}")
    for (k, l), c in sorted(pairs.items()):
        print(f"{k:>3} {l:>3} {c:>7}")

    budget = SolverBudget(max_vertices=16)
    for k in range(1, args.walls + 1):
        W = wall(k)
        l, D = ab_tcw(W, budget)
        print(f"wall k={k}: n={W.n} m={W.m} ab-tcw={l} witness nodes={len(D.bags)}")


if __name__ == "__main__":
    main()
