"""Command line entry point: ``treecut <subcommand> ...``.

Exit codes: 0 success / verified / found, 1 refuted / not found,
2 usage or parse error, 3 solver budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import io
from .certificates import bramble_orders, bramble_to_tangle, find_tangle, verify_bramble, verify_tangle
from .decomposition import measure_widths, validate
from .errors import BudgetExceeded, ParseError, PreconditionViolated
from .game import (
    BrambleRobber,
    DecompositionCops,
    GameConfig,
    InteractiveCop,
    InteractiveRobber,
    RandomCops,
    RandomRobber,
    play,
)
from .graph import wall
from .solver import SolverBudget, ab_tcw, exists_decomposition, synthesize_bramble, wollan_tcw
from .sweep import connected_multigraphs, duality_check
from .tcc import component_torso, glue_with_report

OK, NO, USAGE, BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def budget_from_env() -> SolverBudget:
    ms = os.environ.get("TCW_BUDGET_MS")
    if ms:
        try:
            return SolverBudget(time_limit=int(ms) / 1000.0)
        except ValueError:
            raise _Usage(f"TCW_BUDGET_MS must be an integer, got {ms!r}") from None
    return SolverBudget()


def _read(path, stdin):
    if path == "-":
        return stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _graph(args, stdin):
    return io.parse_graph(_read(args.graph, stdin))


def _widths_json(w) -> dict:
    return {"wollan": w.wollan, "gprtw": w.gprtw, "adhesion_width": w.adhesion_width, "bag_width": w.bag_width}


def _components(text: str) -> list:
    try:
        return sorted({int(x) for x in text.replace(",", " ").split()})
    except ValueError:
        raise _Usage("--component takes comma separated vertex ids") from None


# ---------------------------------------------------------------- handlers

def cmd_width(args, stdin):
    G = _graph(args, stdin)
    D = io.decomposition_from_json(_read(args.decomposition, stdin))
    problems = validate(G, D)
    if problems:
        return NO, {"valid": False, "violations": problems}
    return OK, _widths_json(measure_widths(G, D))


def cmd_verify_decomp(args, stdin):
    G = _graph(args, stdin)
    D = io.decomposition_from_json(_read(args.decomposition, stdin))
    problems = validate(G, D)
    doc = {"valid": not problems, "violations": problems}
    if problems:
        return NO, doc
    w = measure_widths(G, D)
    doc["widths"] = _widths_json(w)
    ok = True
    if args.a is not None:
        ok = ok and w.adhesion_width < args.a
    if args.b is not None:
        ok = ok and w.bag_width < args.b
    doc["within_bounds"] = ok
    return (OK if ok else NO), doc


def cmd_find_decomp(args, stdin):
    G = _graph(args, stdin)
    D = exists_decomposition(G, args.a, args.b, budget_from_env())
    if D is None:
        return NO, {"found": False, "a": args.a, "b": args.b}
    doc = io.decomposition_to_json(D)
    doc["widths"] = _widths_json(measure_widths(G, D))
    return OK, doc


def cmd_ab_tcw(args, stdin):
    G = _graph(args, stdin)
    k, D = ab_tcw(G, budget_from_env())
    return OK, {"ab_tcw": k, "witness": io.decomposition_to_json(D)}


def cmd_wollan_tcw(args, stdin):
    G = _graph(args, stdin)
    return OK, {"wollan_tcw": wollan_tcw(G, budget_from_env())}


def cmd_verify_bramble(args, stdin):
    G = _graph(args, stdin)
    B = io.bramble_from_json(_read(args.bramble, stdin))
    v = verify_bramble(G, B)
    if v is None:
        return OK, {"valid": True}
    return NO, {"valid": False, "kind": v.kind, "message": v.message, "witness": list(v.witness)}


def cmd_verify_tangle(args, stdin):
    G = _graph(args, stdin)
    T = io.tangle_from_json(_read(args.tangle, stdin), G.n)
    v = verify_tangle(G, T)
    if v is None:
        return OK, {"valid": True}
    return NO, {"valid": False, "kind": v.kind, "message": v.message}


def cmd_find_tangle(args, stdin):
    G = _graph(args, stdin)
    T = find_tangle(G, args.a, args.b)
    if T is None:
        return NO, {"found": False, "a": args.a, "b": args.b}
    return OK, io.tangle_to_json(T)


def cmd_bramble_orders(args, stdin):
    G = _graph(args, stdin)
    B = io.bramble_from_json(_read(args.bramble, stdin))
    o = bramble_orders(G, B, args.cap)

    def num(x):
        return "inf" if x == float("inf") else x

    adh = f">={args.cap}" if o.adhesion is None else num(o.adhesion)
    return OK, {"adhesion_order": adh, "bag_order": num(o.bag), "cap": args.cap}


def cmd_synthesize_bramble(args, stdin):
    G = _graph(args, stdin)
    try:
        B = synthesize_bramble(G, args.a, args.b, budget_from_env())
    except PreconditionViolated as exc:
        return NO, {"found": False, "reason": str(exc)}
    doc = io.bramble_to_json(B)
    if args.with_tangle:
        doc = {"bramble": doc, "tangle": io.tangle_to_json(bramble_to_tangle(G, B, args.a, args.b))}
    return OK, doc


def cmd_duality_check(args, stdin):
    graphs = connected_multigraphs(args.max_n, args.max_m)
    recs = duality_check(graphs, args.max_a, args.max_b, budget_from_env())
    bad = [r for r in recs if not r.agree or not r.witness_ok]
    doc = {
        "graphs": len(graphs),
        "instances": len(recs),
        "disagreements": [
            {"graph": io.serialize_graph(r.graph).strip().split("\n"), "a": r.a, "b": r.b,
             "decomposition_found": r.decomposition is not None, "tangle_found": r.tangle is not None,
             "witness_ok": r.witness_ok}
            for r in bad
        ],
    }
    return (NO if bad else OK), doc


def cmd_glue(args, stdin):
    G = _graph(args, stdin)
    doc = io._load(_read(args.parts, stdin))
    parts = {}
    try:
        for item in doc["components"]:
            parts[frozenset(item["component"])] = io.decomposition_from_json(item["decomposition"])
    except (KeyError, TypeError):
        raise ParseError("expected {\"components\": [{\"component\": [...], \"decomposition\": {...}}]}") from None
    D, report = glue_with_report(G, parts)
    out = io.decomposition_to_json(D)
    out["report"] = report.to_json()
    out["widths"] = _widths_json(measure_widths(G, D))
    return OK, out


def cmd_torso(args, stdin):
    G = _graph(args, stdin)
    ct = component_torso(G, _components(args.component))
    head = "# torso vertex i is graph vertex: " + " ".join(map(str, ct.vertices)) + "\n"
    return OK, head + io.serialize_graph(ct.graph)


def cmd_gen(args, stdin):
    return OK, io.serialize_graph(wall(args.k))


def cmd_game_play(args, stdin, stdout):
    G = _graph(args, stdin)
    config = GameConfig(args.cops, args.dogs, args.max_rounds)
    budget = budget_from_env()
    a, b = args.cops + 1, args.dogs + 1
    if args.interactive_cop:
        cops = InteractiveCop(args.cops, stdin, stdout)
    else:
        D = (io.decomposition_from_json(_read(args.decomposition, stdin)) if args.decomposition
             else exists_decomposition(G, a, b, budget))
        cops = DecompositionCops(G, D, args.cops) if D is not None else RandomCops(args.cops, args.seed)
    if args.interactive_robber:
        robber = InteractiveRobber(stdin, stdout)
    elif args.bramble:
        robber = BrambleRobber(G, io.bramble_from_json(_read(args.bramble, stdin)), strict=False)
    elif exists_decomposition(G, a, b, budget) is None:
        robber = BrambleRobber(G, synthesize_bramble(G, a, b, budget), strict=False)
    else:
        robber = RandomRobber(args.seed)
    t = play(G, config, cops, robber)
    return OK, io.transcript_to_json(t)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="treecut", description="Tree-cut decompositions, brambles, tangles and the cops-dogs-robber game.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, *, graph=True, ab=False, help=None):
        sp = sub.add_parser(name, help=help)
        if graph:
            sp.add_argument("graph", help="graph file in 'p tcw' format, or - for stdin")
        if ab:
            sp.add_argument("-a", type=int, required=True)
            sp.add_argument("-b", type=int, required=True)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("width", cmd_width, help="widths of a decomposition")
    sp.add_argument("decomposition")
    sp = add("verify-decomp", cmd_verify_decomp, help="validate a decomposition, optionally against -a/-b")
    sp.add_argument("decomposition")
    sp.add_argument("-a", type=int)
    sp.add_argument("-b", type=int)
    add("find-decomp", cmd_find_decomp, ab=True, help="decomposition with adhesion-width < a and bag-width < b")
    add("ab-tcw", cmd_ab_tcw)
    add("wollan-tcw", cmd_wollan_tcw)
    sp = add("verify-bramble", cmd_verify_bramble)
    sp.add_argument("bramble")
    sp = add("verify-tangle", cmd_verify_tangle)
    sp.add_argument("tangle")
    add("find-tangle", cmd_find_tangle, ab=True)
    sp = add("bramble-orders", cmd_bramble_orders)
    sp.add_argument("bramble")
    sp.add_argument("--cap", type=int, required=True)
    sp = add("synthesize-bramble", cmd_synthesize_bramble, ab=True)
    sp.add_argument("--with-tangle", action="store_true", help="emit {bramble, tangle} with the derived tangle")
    sp = add("duality-check", cmd_duality_check, graph=False)
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--max-m", type=int, default=6)
    sp.add_argument("--max-a", type=int, default=3)
    sp.add_argument("--max-b", type=int, default=3)
    sp = add("glue", cmd_glue, help="glue per-component torso decompositions")
    sp.add_argument("parts", help="JSON with per-component decompositions")
    sp = add("torso", cmd_torso)
    sp.add_argument("--component", required=True, help="vertices of a 3-edge-connected component, e.g. 1,2,3")
    sp = add("gen", cmd_gen, graph=False)
    sp.add_argument("family", choices=["wall"])
    sp.add_argument("-k", type=int, required=True)

    game = sub.add_parser("game")
    gsub = game.add_subparsers(dest="game_command", parser_class=_Parser)
    sp = gsub.add_parser("play")
    sp.add_argument("graph")
    sp.add_argument("--cops", type=int, required=True)
    sp.add_argument("--dogs", type=int, required=True)
    sp.add_argument("--max-rounds", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--decomposition", help="decomposition JSON for the cop strategy")
    sp.add_argument("--bramble", help="bramble JSON for the robber strategy")
    who = sp.add_mutually_exclusive_group()
    who.add_argument("--interactive-robber", action="store_true")
    who.add_argument("--interactive-cop", action="store_true")
    sp.set_defaults(fn=cmd_game_play)
    return p


def dispatch(argv, stdin=None, prompts=None) -> tuple:
    """Run one command; returns (exit code, output text)."""
    stdin = stdin or sys.stdin
    prompts = prompts or sys.stderr  # interactive prompts; the result document is returned
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "fn", None) is None:
            raise _Usage("missing subcommand")
        if args.fn is cmd_game_play:
            code, doc = args.fn(args, stdin, prompts)
        else:
            code, doc = args.fn(args, stdin)
    except _Usage as exc:
        return USAGE, f"usage error: {exc}\n"
    except EOFError:
        return USAGE, "error: input ended during interactive play\n"
    except BudgetExceeded as exc:
        return BUDGET, io.dumps({"error": "budget exceeded", "message": str(exc)})
    except (ParseError, ValueError, KeyError) as exc:
        return USAGE, f"error: {exc}\n"
    text = doc if isinstance(doc, str) else io.dumps(doc)
    return code, text


def main(argv=None) -> int:
    code, text = dispatch(sys.argv[1:] if argv is None else argv)
    (sys.stdout if code in (OK, NO) else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
