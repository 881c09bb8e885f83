"""Decide both sides of the decomposition/tangle duality on every small connected multigraph.

Prints a count per (a, b) and, for each disagreeing (a, b), the smallest graph
with both certificates and its witnesses.

    python scripts/duality_sweep.py --max-n 5 --max-m 7 --max-a 4 --max-b 4
"""
import argparse
import json
import time
from collections import Counter

from treecut import io
from treecut.sweep import connected_multigraphs, duality_check


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-m", type=int, default=7)
    p.add_argument("--max-a", type=int, default=4)
    p.add_argument("--max-b", type=int, default=4)
    args = p.parse_args()

    t0 = time.perf_counter()
    graphs = connected_multigraphs(args.max_n, args.max_m)
    recs = duality_check(graphs, args.max_a, args.max_b)
    print(f"{len(graphs)} graphs, {len(recs)} instances, {time.perf_counter() - t0:.1f}s")

    total = Counter((r.a, r.b) for r in recs)
    both = Counter((r.a, r.b) for r in recs if not r.agree)
    print(f"{'a':>2} {'b':>2} {'instances':>9} {'both exist':>10}")
    for a, b in sorted(total):
        print(f"{a:>2} {b:>2} {total[a, b]:>9} {both[a, b]:>10}")
    bad = [r for r in recs if not r.witness_ok]
    print(f"witnesses failing their verifier: {len(bad)}")

    shown = set()
    for r in recs:
        if r.agree or (r.a, r.b) in shown:
            continue
        shown.add((r.a, r.b))
        print(f"\n(a, b) = ({r.a}, {r.b}): smallest graph with both a decomposition and a tangle")
        print(io.serialize_graph(r.graph), end="")
        print("decomposition:", json.dumps(io.decomposition_to_json(r.decomposition)))
        print("tangle:", json.dumps(io.tangle_to_json(r.tangle)))


if __name__ == "__main__":
    main()
