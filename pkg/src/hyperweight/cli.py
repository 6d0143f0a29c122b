"""Command-line interface: generate, weight, verify, search and reproduce."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import constructions, oracle, solver
from .derive import build_ordering, solve_general_ordering, strip_non_2edge_vertices
from .errors import (
    BudgetExhausted,
    InternalCaseFailure,
    NotColorableError,
    PreconditionError,
    SamplingError,
)
from .hypercore import Hypergraph, chromatic_number, format_hypergraph, parse_hypergraph
from .weighting import format_weighting, parse_init, parse_weighting, verify

OK, INFEASIBLE, BUDGET, USAGE, INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _load_graph(path: str) -> Hypergraph:
    return parse_hypergraph(_read(path))


def _load_init(path: Optional[str], h: Hypergraph) -> Optional[list[int]]:
    return None if path is None else parse_init(_read(path), h.n)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_gen(args) -> int:
    kind = args.kind
    p = args.params
    expect = {"complete": 1, "fano": 0, "incidence": 0, "random-linear": 4, "random": 4}
    if kind == "incidence":
        if len(p) > 1:
            raise UsageError("gen incidence takes at most one file argument")
    elif len(p) != expect[kind]:
        raise UsageError(f"gen {kind} needs {expect[kind]} integer arguments")
    if kind == "complete":
        h, note = constructions.complete_graph(int(p[0])), f"complete graph K{p[0]}"
    elif kind == "fano":
        h, note = constructions.fano_plane(), "Fano plane"
    elif kind == "incidence":
        src = _load_graph(p[0] if p else "-")
        h, labels = constructions.incidence_hypergraph(src)
        note = "incidence hypergraph; vertex i is (v, e) = " + " ".join(
            f"{i}:{v},{e}" for i, (v, e) in enumerate(labels)
        )
    else:
        n, m, r, seed = (int(x) for x in p)
        gen = (
            constructions.random_linear_hypergraph
            if kind == "random-linear"
            else constructions.random_hypergraph
        )
        h = gen(n, m, r, seed, min_degree=args.min_degree)
        note = f"{kind} n={n} m={m} r={r} seed={seed}"
    _write(args.output, format_hypergraph(h, note))
    return OK


def cmd_weight(args) -> int:
    h = _load_graph(args.input)
    init = _load_init(args.init, h)
    rep = solver.solve(h, init, mode=args.mode, fallback=args.fallback_search)
    if args.json:
        _write(args.output, _dump(rep.as_json()))
    else:
        head = f"# mode={rep.mode} budget={rep.budget} max_weight={rep.max_weight}\n"
        _write(args.output, head + format_weighting(rep.weights))
    if args.trace:
        sys.stderr.write(_dump(rep.trace))
    return OK


def cmd_verify(args) -> int:
    if args.graph == "-" and args.weights == "-":
        raise UsageError("only one of the two inputs can come from stdin")
    h = _load_graph(args.graph)
    w = parse_weighting(_read(args.weights), h.m)
    init = _load_init(args.init, h)
    verdict = verify(h, w, init)
    if args.json:
        sys.stdout.write(
            _dump({"proper": verdict.proper, "monochromatic": list(verdict.monochromatic)})
        )
    elif verdict.proper:
        print("proper")
    else:
        print("not proper: monochromatic edges " + " ".join(map(str, verdict.monochromatic)))
    return OK if verdict.proper else INFEASIBLE


def cmd_oracle(args) -> int:
    h = _load_graph(args.input)
    init = _load_init(args.init, h)
    res = oracle.min_max_weight(
        h,
        args.cap,
        init,
        node_limit=args.budget_nodes,
        time_limit=args.budget_seconds,
        jobs=args.jobs,
    )
    if args.witness and res.witness is not None:
        _write(args.witness, format_weighting(res.witness))
    if args.json:
        sys.stdout.write(_dump(res.as_json()))
    elif res.status == "found":
        print(f"k_min {res.k_min} (nodes {res.nodes})")
    elif res.status == "infeasible":
        print(f"infeasible with weights 1..{res.cap} (nodes {res.nodes})")
    else:
        print(f"budget exhausted; no weighting from 1..{res.certified_below} (nodes {res.nodes})")
    return {"found": OK, "infeasible": INFEASIBLE, "budget": BUDGET}[res.status]


def _lower_bound(f: Hypergraph, name: str, cap: int) -> dict:
    chi = chromatic_number(f)
    inc, _ = constructions.incidence_hypergraph(f)
    res = oracle.min_max_weight(inc, cap)
    confirmed = res.status == "found" and res.k_min >= chi
    return {
        "name": name,
        "expected_lower_bound": chi,
        "observed_k_min": res.k_min,
        "witness": None if res.witness is None else list(res.witness),
        "confirmed": confirmed,
        "line": f"lower bound {chi}: {'confirmed' if confirmed else 'NOT confirmed'}"
        + f" (observed k_min {res.k_min})",
    }


def _c6() -> dict:
    h = constructions.cycle_graph(6)
    two = oracle.exists_weighting(h, 2)
    three = oracle.exists_weighting(h, 3)
    confirmed = two is None and three is not None
    words = lambda w: "feasible" if w is not None else "infeasible"  # noqa: E731
    return {
        "name": "c6",
        "k2": words(two),
        "k3": words(three),
        "witness": three,
        "confirmed": confirmed,
        "line": f"k=2 {words(two)}, k=3 {words(three)}",
    }


REPRO = {
    "k4-incidence": lambda: _lower_bound(constructions.complete_graph(4), "k4-incidence", 6),
    "fano-incidence": lambda: _lower_bound(constructions.fano_plane(), "fano-incidence", 5),
    "c6": _c6,
}


def cmd_repro(args) -> int:
    out = REPRO[args.name]()
    if args.json:
        sys.stdout.write(_dump(out))
    else:
        print(out["line"])
    return OK if out["confirmed"] else INFEASIBLE


def cmd_order(args) -> int:
    h = _load_graph(args.input)
    if h.has_twin_edge():
        raise NotColorableError("hypergraph has an edge consisting of twins")
    rule = args.rule
    if rule == "auto":
        rule = {"linear": "minimal", "r3": "e0", "general": "unique"}[solver.pick_mode(h)]
    hs, keep, deleted = strip_non_2edge_vertices(h)
    od = solve_general_ordering(hs) if rule == "unique" else build_ordering(hs, rule)
    dump = od.as_json()
    dump["rule"] = rule
    dump["deleted"] = list(deleted)
    dump["kept_vertices"] = list(keep)
    sys.stdout.write(_dump(dump))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperweight", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="log solver warnings")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="emit a hypergraph in the text format")
    g.add_argument("kind", choices=["complete", "fano", "incidence", "random-linear", "random"])
    g.add_argument("params", nargs="*", help="Q | [FILE] | n m r seed")
    g.add_argument("--min-degree", type=int, default=0, help="random kinds: reject lower degrees")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    w = sub.add_parser("weight", help="compute a proper edge weighting")
    w.add_argument("input", nargs="?", default="-")
    w.add_argument("--mode", choices=["linear", "r3", "general", "auto"], default="auto")
    w.add_argument("--init", metavar="FILE", help="initial vertex weights")
    w.add_argument("--fallback-search", action="store_true",
                   help="on an internal case failure, try bounded exact search")
    w.add_argument("--trace", action="store_true", help="write the case trace as JSON to stderr")
    w.add_argument("--json", action="store_true", help="write the full report as JSON")
    w.add_argument("-o", "--output", default="-")
    w.set_defaults(func=cmd_weight)

    v = sub.add_parser("verify", help="check a weighting")
    v.add_argument("graph")
    v.add_argument("weights")
    v.add_argument("--init", metavar="FILE")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact minimum largest weight")
    o.add_argument("input", nargs="?", default="-")
    o.add_argument("--cap", type=int, default=6)
    o.add_argument("--budget-nodes", type=int)
    o.add_argument("--budget-seconds", type=float)
    o.add_argument("--witness", metavar="FILE", help="write the witness weighting here")
    o.add_argument("--jobs", type=int, default=1)
    o.add_argument("--init", metavar="FILE")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("repro", help="rerun a lower-bound example")
    r.add_argument("name", choices=sorted(REPRO))
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_repro)

    d = sub.add_parser("order", help="dump the derived ordering as JSON")
    d.add_argument("input", nargs="?", default="-")
    d.add_argument("--rule", choices=["minimal", "e0", "unique", "auto"], default="auto")
    d.set_defaults(func=cmd_order)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR)
    if getattr(args, "cap", 1) < 1 or getattr(args, "jobs", 1) < 1:
        print("hyperweight: error: --cap and --jobs must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except NotColorableError as exc:
        print(f"not colorable: {exc}", file=sys.stderr)
        return INFEASIBLE
    except SamplingError as exc:
        print(f"sampling failed: {exc}", file=sys.stderr)
        return INFEASIBLE
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except InternalCaseFailure as exc:
        print(f"internal case failure: {exc}", file=sys.stderr)
        return INTERNAL
    except (UsageError, PreconditionError, ValueError) as exc:
        print(f"hyperweight: error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
