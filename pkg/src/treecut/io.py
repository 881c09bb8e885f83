"""Text format for graphs and JSON for decompositions, brambles, tangles and transcripts.

Graph files::

    # optional comment
    p tcw <n> <m>
    e <u> <v>        (m lines, vertices 1..n, edge ids in file order from 0)
"""
from __future__ import annotations

import json

from .certificates import Bramble, OrientedSeparation, Slab, Tangle
from .decomposition import TreeCutDecomposition
from .errors import BadEndpoint, CountMismatch, LoopEdge, ParseError
from .game import Transcript
from .graph import MultiGraph


def parse_graph(text: str) -> MultiGraph:
    n = m = None
    header_line = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0].startswith("#"):
            continue
        if tok[0] == "p":
            if n is not None:
                raise ParseError("second header", lineno)
            if len(tok) != 4 or tok[1] != "tcw":
                raise ParseError("expected 'p tcw <n> <m>'", lineno)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise ParseError("n and m must be integers", lineno) from None
            if n < 1 or m < 0:
                raise ParseError("need n >= 1 and m >= 0", lineno)
            header_line = lineno
        elif tok[0] == "e":
            if n is None:
                raise ParseError("edge before header", lineno)
            if len(tok) != 3:
                raise ParseError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise ParseError("endpoints must be integers", lineno) from None
            if u == v:
                err = LoopEdge(f"line {lineno}: loop at vertex {u}")
                err.line = lineno
                raise err
            if not (1 <= u <= n and 1 <= v <= n):
                err = BadEndpoint(f"line {lineno}: endpoint outside 1..{n}")
                err.line = lineno
                raise err
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p tcw' header")
    if len(edges) != m:
        raise CountMismatch(f"header declares {m} edges, found {len(edges)}", header_line)
    return MultiGraph(n, tuple(edges))


def serialize_graph(G: MultiGraph) -> str:
    lines = [f"p tcw {G.n} {G.m}"] + [f"e {u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def _load(doc):
    if isinstance(doc, str):
        try:
            return json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", exc.lineno) from None
    return doc


def _field(doc, key):
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field {key!r}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def decomposition_to_json(D: TreeCutDecomposition) -> dict:
    return {"nodes": [{"id": t, "bag": sorted(b)} for t, b in enumerate(D.bags)],
            "edges": sorted(sorted(e) for e in D.tree_edges)}


def decomposition_from_json(doc) -> TreeCutDecomposition:
    """Node ids must be dense from 0; any order is accepted."""
    doc = _load(doc)
    try:
        nodes = {int(_field(x, "id")): frozenset(int(v) for v in _field(x, "bag")) for x in _field(doc, "nodes")}
        edges = tuple((int(s), int(t)) for s, t in _field(doc, "edges"))
    except (TypeError, ValueError):
        raise ParseError("nodes need integer ids and bags; edges are integer pairs") from None
    if sorted(nodes) != list(range(len(nodes))):
        raise ParseError("node ids must be 0..N-1")
    return TreeCutDecomposition(tuple(nodes[t] for t in range(len(nodes))), edges)


def bramble_to_json(B: Bramble) -> list:
    return [{"H_vertices": sorted(s.vertices), "H_edges": sorted(s.edges), "core": sorted(s.core)}
            for s in B.slabs]


def bramble_from_json(doc) -> Bramble:
    doc = _load(doc)
    if not isinstance(doc, list):
        raise ParseError("a bramble is a list of slabs")
    try:
        return Bramble([Slab.make(_field(s, "H_vertices"), _field(s, "H_edges"), _field(s, "core"))
                        for s in doc])
    except TypeError:
        raise ParseError("slabs hold H_vertices, H_edges and core lists") from None


def tangle_to_json(T: Tangle) -> dict:
    return {"a": T.a, "b": T.b, "oriented": [{"A": sorted(o.from_side)} for o in T.sorted_members()]}


def tangle_from_json(doc, n: int) -> Tangle:
    """Side B of each member is the complement of A in 1..n."""
    doc = _load(doc)
    V = frozenset(range(1, n + 1))
    try:
        members = frozenset(OrientedSeparation(frozenset(_field(o, "A")), V - frozenset(_field(o, "A")))
                            for o in _field(doc, "oriented"))
        return Tangle(int(_field(doc, "a")), int(_field(doc, "b")), members)
    except (TypeError, ValueError):
        raise ParseError("malformed tangle") from None


def transcript_to_json(t: Transcript) -> dict:
    return t.to_json()


def transcript_from_json(doc) -> Transcript:
    doc = _load(doc)
    try:
        return Transcript.from_json(doc)
    except (KeyError, TypeError):
        raise ParseError("malformed transcript") from None
