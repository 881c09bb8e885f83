"""Cops, dogs and robber on K4 and on a chain of two K4s.

Plays the decomposition-driven cops against the bramble-driven robber at
both sides of the threshold and prints each transcript round by round.

    python scripts/game_demo.py --rounds 10
"""
import argparse
from itertools import combinations

from treecut.game import BrambleRobber, DecompositionCops, GameConfig, play
from treecut.graph import build_graph
from treecut.solver import exists_decomposition, synthesize_bramble


def show(name, G, cops, dogs, rounds):
    """Cops follow a width-(3, 3) decomposition; the robber follows an order-(3, 3) bramble."""
    D = exists_decomposition(G, 4, 4)
    B = synthesize_bramble(G, 3, 3)
    t = play(G, GameConfig(cops, dogs, rounds), DecompositionCops(G, D, cops), BrambleRobber(G, B, strict=False))
    print(f"{name}: {cops} cops, {dogs} dogs -> {t.winner} after {len(t.rounds) - 1} rounds")
    for i, x in enumerate(t.rounds):
        print(f"  round {i}: cops on {sorted(x['F'])}, robber at {x['r']}, capture set size {x['capture_set_size']}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rounds", type=int, default=10)
    args = p.parse_args()
    k4 = build_graph(4, list(combinations(range(1, 5), 2)))
    two = build_graph(8, list(combinations(range(1, 5), 2)) + list(combinations(range(5, 9), 2)) + [(4, 5)])
    for name, G in (("K4", k4), ("two K4s joined by an edge", two)):
        show(name, G, 3, 3, args.rounds)
        show(name, G, 2, 2, args.rounds)


if __name__ == "__main__":
    main()
