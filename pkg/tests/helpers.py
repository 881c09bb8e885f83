"""Named graphs, random generators and brute-force oracles shared by the tests."""
import random
from itertools import combinations

from hypothesis import strategies as st

from treecut.decomposition import TreeCutDecomposition
from treecut.graph import build_graph


def K4():
    return build_graph(4, list(combinations(range(1, 5), 2)))


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n):
    return build_graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def triple():
    return build_graph(2, [(1, 2)] * 3)


def theta3():
    return build_graph(3, [(1, 2)] * 3 + [(1, 3), (3, 2)])


def dbl_k4():
    es = list(combinations(range(1, 5), 2)) + list(combinations(range(5, 9), 2)) + [(4, 5)]
    return build_graph(8, es)


def bt15():
    """Complete binary tree on 15 vertices, root 1, children of v are 2v and 2v+1."""
    return build_graph(15, [(v // 2, v) for v in range(2, 16)])


def random_tree(rng, n):
    return build_graph(n, [(rng.randint(1, v - 1), v) for v in range(2, n + 1)])


def random_multigraph(rng, n, m, connected=False):
    edges = []
    if connected:
        edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    while len(edges) < m and n >= 2:
        u, v = rng.sample(range(1, n + 1), 2)
        edges.append((u, v))
    return build_graph(n, edges)


def random_decomposition(rng, G, max_nodes=None):
    N = rng.randint(1, max_nodes or G.n + 2)
    tree = [(rng.randrange(t), t) for t in range(1, N)]
    bags = [set() for _ in range(N)]
    for v in G.vertices:
        bags[rng.randrange(N)].add(v)
    return TreeCutDecomposition(tuple(frozenset(b) for b in bags), tuple(tree))


@st.composite
def multigraphs(draw, min_n=1, max_n=6, max_m=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    edges = []
    if connected:
        for v in range(2, n + 1):
            edges.append((draw(st.integers(1, v - 1)), v))
    if n >= 2:
        extra = draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1]),
                              max_size=max(0, max_m - len(edges))))
        edges += extra
    return build_graph(n, edges)


@st.composite
def graph_and_decomposition(draw, max_n=7, max_m=10):
    G = draw(multigraphs(max_n=max_n, max_m=max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    return G, random_decomposition(random.Random(seed), G)


# ---------------------------------------------------------------- oracles

def min_cut_oracle(G, u, v):
    """Least |boundary(X)| over all X with u in X and v not in X (Menger)."""
    others = [w for w in G.vertices if w not in (u, v)]
    best = None
    for k in range(len(others) + 1):
        for extra in combinations(others, k):
            X = {u, *extra}
            c = sum(1 for a, b in G.edges if (a in X) != (b in X))
            best = c if best is None else min(best, c)
    return best


def three_ecc_oracle(G):
    classes = []
    for v in G.vertices:
        for c in classes:
            if min_cut_oracle(G, min(c), v) >= 3:
                c.add(v)
                break
        else:
            classes.append({v})
    return sorted((frozenset(c) for c in classes), key=min)


def trace_oracle(D, u, v):
    """Tree path between the nodes holding u and v, by DFS over D's tree edges."""
    s = next(t for t, b in enumerate(D.bags) if u in b)
    t = next(t for t, b in enumerate(D.bags) if v in b)
    adj = {x: [] for x in range(len(D.bags))}
    for a, b in D.tree_edges:
        adj[a].append(b)
        adj[b].append(a)

    def dfs(x, parent):
        if x == t:
            return [x]
        for y in adj[x]:
            if y != parent:
                p = dfs(y, x)
                if p:
                    return [x] + p
        return None

    return dfs(s, None)


def adhesion_oracle(G, D, s, t):
    out = set()
    for e, (u, v) in enumerate(G.edges):
        p = trace_oracle(D, u, v)
        if any({p[i], p[i + 1]} == {s, t} for i in range(len(p) - 1)):
            out.add(e)
    return frozenset(out)
