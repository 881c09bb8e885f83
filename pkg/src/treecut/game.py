"""Cops, dogs and robber: rules, strategies, playouts and exact solving.

Each round the cops announce an edge set F_i (at most ``cops`` edges).  The
robber then moves from r_{i-1} to any vertex that is 3-edge-connected to it
and reachable in G minus F_{i-1} & F_i.  The capture set is everything
3-edge-connected to the new position and reachable from it in G - F_i, and
the cops win once it has at most ``dogs`` vertices.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .certificates import Bramble, disconnects
from .decomposition import TreeCutDecomposition, _rooted, node_adhesion_mask, require_valid
from .errors import IllegalRobberMove, NoSafeSlab, TooManyCops
from .graph import MultiGraph, bits, block_of, connected_components_mask


@dataclass
class GameConfig:
    cops: int
    dogs: int
    max_rounds: int = 100

    def __post_init__(self):
        if self.cops < 0 or self.dogs < 0:
            raise ValueError("cops and dogs must be nonnegative")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be positive")


@dataclass
class GameState:
    round: int
    cop_edges: frozenset
    robber: int
    history: list = field(default_factory=list)  # (F_i, r_i) per round, round 0 first


@dataclass
class CopsWin:
    round: int
    state: GameState
    dog_set: frozenset


def initial_state(r0: int) -> GameState:
    return GameState(0, frozenset(), r0, [(frozenset(), r0)])


def _mask(F: Iterable[int]) -> int:
    m = 0
    for e in F:
        m |= 1 << e
    return m


def _reach(G: MultiGraph, r: int, removed: int) -> int:
    for comp in connected_components_mask(G, G.all_mask, removed):
        if comp >> (r - 1) & 1:
            return comp
    return 0


def _moves(G, r, f_prev: int, f_next: int) -> frozenset:
    reach = _reach(G, r, f_prev & f_next) & G.vmask(block_of(G, r))
    return G.vset(reach)


def _capture(G, r, f: int) -> frozenset:
    return G.vset(_reach(G, r, f) & G.vmask(block_of(G, r)))


def legal_robber_moves(G: MultiGraph, state: GameState, F_next: Iterable[int],
                       cops: int | None = None) -> frozenset:
    F_next = frozenset(F_next)
    if cops is not None and len(F_next) > cops:
        raise TooManyCops(f"{len(F_next)} edges announced, {cops} cops available")
    return _moves(G, state.robber, _mask(state.cop_edges), _mask(F_next))


def capture_set(G: MultiGraph, state: GameState) -> frozenset:
    return _capture(G, state.robber, _mask(state.cop_edges))


def step(G: MultiGraph, state: GameState, F_next: Iterable[int], robber_choice: int,
         config: GameConfig):
    F_next = frozenset(F_next)
    legal = legal_robber_moves(G, state, F_next, config.cops)
    if robber_choice not in legal:
        raise IllegalRobberMove(f"vertex {robber_choice} not in {sorted(legal)}")
    new = GameState(state.round + 1, F_next, robber_choice,
                    state.history + [(F_next, robber_choice)])
    dogs = capture_set(G, new)
    if len(dogs) <= config.dogs:
        return CopsWin(new.round, new, dogs)
    return new


# ---------------------------------------------------------------- strategies

class CopStrategy:
    def next_move(self, G: MultiGraph, state: GameState) -> frozenset:
        raise NotImplementedError


class RobberStrategy:
    def start(self, G: MultiGraph) -> int:
        raise NotImplementedError

    def respond(self, G: MultiGraph, state: GameState, F_next: frozenset) -> int:
        raise NotImplementedError


class DecompositionCops(CopStrategy):
    """Descend the decomposition rooted at node 0 toward the robber, playing node adhesions.

    With fewer cops than the node adhesion, the least ``cops`` edge ids are played.
    The move is a function of the history alone.
    """

    def __init__(self, G: MultiGraph, D: TreeCutDecomposition, cops: int | None = None):
        require_valid(G, D)
        self.G, self.D, self.cops = G, D, cops
        self.R = _rooted(G, D)

    def node_sequence(self, history) -> list:
        """t_1, t_2, ... implied by the robber positions in ``history``."""
        adj = self.D._adj()
        t = 0
        seq = [t]
        for _, r in history[1:]:
            bit = 1 << (r - 1)
            for c in adj[t]:
                if self.R.parent[c] == t and self.R.sub[c] & bit:
                    t = c
                    break
            seq.append(t)
        return seq

    def current_node(self, state: GameState) -> int:
        return self.node_sequence(state.history)[-1]

    def next_move(self, G, state):
        t = self.current_node(state)
        F = sorted(bits(node_adhesion_mask(self.G, self.D, t)))
        if self.cops is not None:
            F = F[:self.cops]
        return frozenset(F)


class BrambleRobber(RobberStrategy):
    """Stay inside a slab whose core the current cop set does not disconnect."""

    def __init__(self, G: MultiGraph, B: Bramble, strict: bool = True):
        if not B.slabs:
            raise NoSafeSlab("empty bramble")
        self.G, self.B, self.strict = G, B, strict
        self.slab = 0

    def start(self, G):
        self.slab = 0
        return min(self.B.slabs[0].core)

    def choose(self, r: int, slab: int, F_next: frozenset) -> tuple:
        """(next slab index, next vertex) as a pure function of the position."""
        prev = self.B.slabs[slab]
        for i, s in enumerate(self.B.slabs):
            if disconnects(self.G, F_next, s):
                continue
            if r in s.core:
                return i, r
            common = prev.core & s.core
            if common:
                return i, min(common)
        return None

    def respond(self, G, state, F_next):
        pick = self.choose(state.robber, self.slab, frozenset(F_next))
        if pick is None:
            if self.strict:
                raise NoSafeSlab(f"every slab is disconnected by {sorted(F_next)}")
            legal = legal_robber_moves(G, state, F_next)
            return max(sorted(legal), key=lambda w: len(_capture(G, w, _mask(F_next))))
        self.slab, w = pick
        return w


class RandomCops(CopStrategy):
    def __init__(self, cops: int, seed: int = 0):
        self.cops = cops
        self.rng = random.Random(seed)

    def next_move(self, G, state):
        k = self.rng.randint(0, min(self.cops, G.m))
        return frozenset(self.rng.sample(range(G.m), k))


class RandomRobber(RobberStrategy):
    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def start(self, G):
        return self.rng.randint(1, G.n)

    def respond(self, G, state, F_next):
        return self.rng.choice(sorted(legal_robber_moves(G, state, F_next)))


class ScriptedCops(CopStrategy):
    """Plays a fixed list of edge sets, then repeats the last one."""

    def __init__(self, moves):
        self.moves = [frozenset(m) for m in moves]

    def next_move(self, G, state):
        return self.moves[min(state.round, len(self.moves) - 1)]


class InteractiveRobber(RobberStrategy):
    def __init__(self, stdin=None, stdout=None):
        self.inp = stdin or sys.stdin
        self.out = stdout or sys.stdout

    def _ask(self, prompt, options):
        while True:
            print(prompt, file=self.out, flush=True)
            line = self.inp.readline()
            if not line:
                raise EOFError("input closed")
            try:
                v = int(line.strip())
            except ValueError:
                print("not a vertex id", file=self.out)
                continue
            if v in options:
                return v
            print(f"choose one of {sorted(options)}", file=self.out)

    def start(self, G):
        return self._ask(f"start vertex (1..{G.n}):", set(G.vertices))

    def respond(self, G, state, F_next):
        legal = legal_robber_moves(G, state, F_next)
        return self._ask(f"cops on {sorted(F_next)}; legal moves {sorted(legal)}:", legal)


class InteractiveCop(CopStrategy):
    def __init__(self, cops: int, stdin=None, stdout=None):
        self.cops = cops
        self.inp = stdin or sys.stdin
        self.out = stdout or sys.stdout

    def next_move(self, G, state):
        while True:
            print(f"robber at {state.robber}; enter up to {self.cops} edge ids:", file=self.out, flush=True)
            line = self.inp.readline()
            if not line:
                raise EOFError("input closed")
            try:
                F = frozenset(int(x) for x in line.split())
            except ValueError:
                print("edge ids must be integers", file=self.out)
                continue
            if len(F) <= self.cops and all(0 <= e < G.m for e in F):
                return F
            print(f"need at most {self.cops} ids in 0..{G.m - 1}", file=self.out)


# ---------------------------------------------------------------- playouts

@dataclass
class Transcript:
    config: GameConfig
    rounds: list  # dicts with F, r, capture_set_size
    winner: str  # "cops" or "robber"
    dog_set: frozenset | None = None

    def to_json(self) -> dict:
        return {
            "config": {"cops": self.config.cops, "dogs": self.config.dogs,
                       "max_rounds": self.config.max_rounds},
            "rounds": [{"F": sorted(x["F"]), "r": x["r"], "capture_set_size": x["capture_set_size"]}
                       for x in self.rounds],
            "winner": self.winner,
            "dog_set": sorted(self.dog_set) if self.dog_set is not None else None,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Transcript":
        c = doc["config"]
        rounds = [{"F": frozenset(x["F"]), "r": x["r"], "capture_set_size": x["capture_set_size"]}
                  for x in doc["rounds"]]
        ds = doc.get("dog_set")
        return cls(GameConfig(c["cops"], c["dogs"], c["max_rounds"]), rounds, doc["winner"],
                   frozenset(ds) if ds is not None else None)


def play(G: MultiGraph, config: GameConfig, cops: CopStrategy, robber: RobberStrategy) -> Transcript:
    r0 = robber.start(G)
    if r0 not in G.vertices:
        raise IllegalRobberMove(f"start vertex {r0} not in graph")
    state = initial_state(r0)
    cs = capture_set(G, state)
    rounds = [{"F": frozenset(), "r": r0, "capture_set_size": len(cs)}]
    if len(cs) <= config.dogs:
        return Transcript(config, rounds, "cops", cs)
    for _ in range(config.max_rounds):
        F = frozenset(cops.next_move(G, state))
        w = robber.respond(G, state, F)
        res = step(G, state, F, w, config)
        st = res.state if isinstance(res, CopsWin) else res
        rounds.append({"F": F, "r": w, "capture_set_size": len(capture_set(G, st))})
        if isinstance(res, CopsWin):
            return Transcript(config, rounds, "cops", res.dog_set)
        state = res
    return Transcript(config, rounds, "robber", None)


# ---------------------------------------------------------------- exact analysis

def _cop_moves(G: MultiGraph, cops: int) -> list:
    out = []
    for k in range(min(cops, G.m) + 1):
        out += [_mask(c) for c in combinations(range(G.m), k)]
    return out


def cops_win(G: MultiGraph, cops: int, dogs: int) -> bool:
    """Exact solution of the game (no round limit) by a backward fixpoint.

    A position is (F_prev, r) before the cops announce.  It is winning for the
    cops if some announcement F leaves every legal robber reply either
    captured or in a winning position.
    """
    moves = _cop_moves(G, cops)
    positions = [(f, r) for f in moves for r in G.vertices]
    caught = {(f, r): len(_capture(G, r, f)) <= dogs for f in moves for r in G.vertices}
    replies = {}
    win = set()
    changed = True
    while changed:
        changed = False
        for f, r in positions:
            if (f, r) in win:
                continue
            for g in moves:
                key = (r, f & g)
                if key not in replies:
                    replies[key] = sorted(_moves(G, r, f, g))
                if all(caught[(g, w)] or (g, w) in win for w in replies[key]):
                    win.add((f, r))
                    changed = True
                    break
    return all(caught[(0, r)] or (0, r) in win for r in G.vertices)


def cop_strategy_beats_all_robbers(G: MultiGraph, config: GameConfig, cops: CopStrategy,
                                   rounds: int | None = None) -> bool:
    """Every robber play is captured within ``rounds`` rounds (cop strategy must be history-driven)."""
    limit = config.max_rounds if rounds is None else rounds

    def explore(state) -> bool:
        if state.round >= limit:
            return False
        F = frozenset(cops.next_move(G, state))
        for w in sorted(legal_robber_moves(G, state, F, config.cops)):
            res = step(G, state, F, w, config)
            if not isinstance(res, CopsWin) and not explore(res):
                return False
        return True

    for r0 in G.vertices:
        st = initial_state(r0)
        if len(capture_set(G, st)) <= config.dogs:
            continue
        if not explore(st):
            return False
    return True


def bramble_robber_survives_all_cops(G: MultiGraph, B: Bramble, config: GameConfig) -> bool:
    """The bramble robber is never captured, whatever the cops announce (exact, unbounded)."""
    robber = BrambleRobber(G, B, strict=False)
    moves = _cop_moves(G, config.cops)
    r0 = robber.start(G)
    if len(_capture(G, r0, 0)) <= config.dogs:
        return False
    seen = set()
    stack = [(0, r0, 0)]
    while stack:
        f, r, s = stack.pop()
        if (f, r, s) in seen:
            continue
        seen.add((f, r, s))
        for g in moves:
            pick = robber.choose(r, s, frozenset(bits(g)))
            if pick is None:
                return False
            s2, w = pick
            if w not in _moves(G, r, f, g) or len(_capture(G, w, g)) <= config.dogs:
                return False
            stack.append((g, w, s2))
    return True
