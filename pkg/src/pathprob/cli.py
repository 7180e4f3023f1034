"""Command-line frontend.

Batch subcommands over a graph JSON file::

    pathprob reduce     --graph g.json [--mode paper|vacuum] "EXPR"
    pathprob expect     --graph g.json "EXPR"
    pathprob moments    --graph g.json --order N "EXPR"
    pathprob cumulants  --graph g.json --order N "EXPR"
    pathprob free-check --graph g.json [--word-len K] "EXPR_A" "EXPR_B"
    pathprob classify   --graph g.json {semicircular|even|rdiagonal} "EXPR"
    pathprob distinct   --graph g.json W1 W2          (dotted edge words)
    pathprob genop      --graph g.json
    pathprob nc         {count|mobius} N

Exit codes: 0 success or Pass verdict, 1 Fail verdict, 2 usage/parse error,
3 resource cap exceeded. ``--json`` switches every command to a JSON object
on stdout. Output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import kernel
from .algebra import AlgebraContext, Mode
from .classify import (
    check_even,
    check_free,
    check_rdiagonal,
    check_semicircular,
    generating_operator,
)
from .cumulants import MomentFunctional
from .errors import (
    ExpressionError,
    GraphFormatError,
    ResourceLimitError,
    UsageError,
)
from .exprparse import parse_element
from .fock import fock_basis, numeric_expectation
from .graphs import diagram_distinct, graph_from_json
from .latticepaths import LatticePath
from .noncrossing import catalan, enumerate_nc, mobius_to_top


def _common_flags(p: argparse.ArgumentParser, graph=True):
    if graph:
        p.add_argument("--graph", metavar="FILE", help="graph JSON file")
        p.add_argument(
            "--mode",
            choices=["paper", "vacuum"],
            default="paper",
            help="reduction semantics (default: paper)",
        )
    p.add_argument("--order", type=int, default=6, metavar="N", help="max order (default 6)")
    p.add_argument("--json", action="store_true", help="emit a JSON object")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pathprob",
        description="Exact operator-valued free probability on graph path algebras "
        f"(kernel backend: {kernel.BACKEND})",
    )
    public = "{reduce,expect,moments,cumulants,free-check,classify,distinct,genop,nc}"
    sub = ap.add_subparsers(dest="command", required=True, metavar=public)

    def add(name, help=None, graph=True, hidden=False):
        if hidden:
            p = sub.add_parser(name)
        else:
            p = sub.add_parser(name, help=help)
        _common_flags(p, graph)
        return p

    p = add("reduce", "reduce an expression to its canonical form")
    p.add_argument("expr")
    p = add("expect", "conditional expectation onto the diagonal")
    p.add_argument("expr")
    p = add("moments", "trivial moments E(a^n) for n = 1..order")
    p.add_argument("expr")
    p = add("cumulants", "trivial cumulants k_n(a,...,a) for n = 1..order")
    p.add_argument("expr")
    p = add("free-check", "scan mixed cumulants of two generator families")
    p.add_argument("expr_a")
    p.add_argument("expr_b")
    p.add_argument("--word-len", type=int, default=3, metavar="K")
    p.add_argument("--sample", type=int, default=None, metavar="T",
                   help="sample T tuples per order on the general fallback")
    p = add("classify", "distribution classifiers")
    p.add_argument("kind", choices=["semicircular", "even", "rdiagonal"])
    p.add_argument("expr")
    p = add("distinct", "diagram-distinctness of two paths")
    p.add_argument("w1")
    p.add_argument("w2")
    add("genop", "the generating operator: sum of L(e) + L*(e)")
    p = add("nc", "noncrossing partition utilities", graph=False)
    p.add_argument("what", choices=["count", "mobius"])
    p.add_argument("n", type=int)
    p = add("fock-expect", hidden=True)
    p.add_argument("expr")
    p.add_argument("--depth", type=int, default=6)
    p = add("lattice", hidden=True)
    p.add_argument("expr")
    return ap


def _context(args) -> AlgebraContext:
    if not getattr(args, "graph", None):
        raise UsageError("this command needs --graph FILE")
    try:
        with open(args.graph, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphFormatError(f"cannot read graph file: {exc}") from None
    mode = Mode.PAPER if args.mode == "paper" else Mode.VACUUM
    return AlgebraContext(graph_from_json(text), mode)


def _emit(args, human: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _parse_path(ctx, text: str):
    ids = text.split(".")
    for eid in ids:
        if not ctx.graph.has_edge(eid):
            raise ExpressionError(f"unknown edge {eid!r}")
    return ctx.graph.path(*ids)


def _run(args) -> int:
    cmd = args.command
    if getattr(args, "order", 1) < 1:
        raise UsageError("--order must be at least 1")
    if cmd == "nc":
        if not 1 <= args.n:
            raise UsageError("n must be positive")
        if args.what == "count":
            parts = enumerate_nc(args.n)
            _emit(args, str(len(parts)), {"command": "nc-count", "n": args.n,
                                          "count": len(parts), "catalan": catalan(args.n)})
        else:
            parts = enumerate_nc(args.n)
            rows = [(str(p), mobius_to_top(p)) for p in parts]
            human = "\n".join(f"{s}  mu={m}" for s, m in rows)
            _emit(args, human, {"command": "nc-mobius", "n": args.n,
                                "mobius": [{"partition": s, "mu": m} for s, m in rows]})
        return 0

    ctx = _context(args)
    if cmd == "reduce":
        a = parse_element(ctx, args.expr)
        _emit(args, a.render(), {"command": "reduce", "result": a.render()})
        return 0
    if cmd == "expect":
        a = parse_element(ctx, args.expr)
        e = a.expectation()
        _emit(args, e.render(), {"command": "expect", "result": e.render()})
        return 0
    if cmd == "moments":
        a = parse_element(ctx, args.expr)
        rows = []
        power = a
        for n in range(1, args.order + 1):
            if n > 1:
                power = power * a
            rows.append((n, power.expectation().render()))
        _emit(
            args,
            "\n".join(f"E(a^{n}) = {val}" for n, val in rows),
            {"command": "moments", "moments": [{"n": n, "value": v} for n, v in rows]},
        )
        return 0
    if cmd == "cumulants":
        a = parse_element(ctx, args.expr)
        f = MomentFunctional(ctx)
        rows = [(n, f.cumulant([a] * n).render()) for n in range(1, args.order + 1)]
        _emit(
            args,
            "\n".join(f"k_{n} = {val}" for n, val in rows),
            {"command": "cumulants", "cumulants": [{"n": n, "value": v} for n, v in rows]},
        )
        return 0
    if cmd == "free-check":
        a = parse_element(ctx, args.expr_a)
        b = parse_element(ctx, args.expr_b)
        rep = check_free(
            ctx, [a], [b],
            n_max=args.order,
            max_word_len=args.word_len,
            sample=args.sample,
            seed=args.seed,
        )
        human = f"verdict: {rep.verdict}"
        if rep.witness:
            human += f"\nwitness: {json.dumps(rep.witness, sort_keys=True)}"
        _emit(args, human, rep.to_json())
        return 1 if rep.verdict == "fail" else 0
    if cmd == "classify":
        a = parse_element(ctx, args.expr)
        checker = {
            "semicircular": check_semicircular,
            "even": check_even,
            "rdiagonal": check_rdiagonal,
        }[args.kind]
        rep = checker(ctx, a, args.order)
        human = f"verdict: {rep.verdict}"
        if rep.witness:
            human += f"\nwitness: {json.dumps(rep.witness, sort_keys=True)}"
        _emit(args, human, rep.to_json())
        return 1 if rep.verdict == "fail" else 0
    if cmd == "distinct":
        w1 = _parse_path(ctx, args.w1)
        w2 = _parse_path(ctx, args.w2)
        d = diagram_distinct(w1, w2)
        _emit(
            args,
            "diagram-distinct" if d else "not diagram-distinct",
            {"command": "distinct", "w1": args.w1, "w2": args.w2, "distinct": d},
        )
        return 0
    if cmd == "genop":
        t = generating_operator(ctx)
        _emit(args, t.render(), {"command": "genop", "result": t.render()})
        return 0
    if cmd == "fock-expect":
        a = parse_element(ctx, args.expr)
        basis = fock_basis(ctx.graph, args.depth)
        val, valid = numeric_expectation(basis, a)
        _emit(
            args,
            f"{val.render()}  (valid: {valid})",
            {"command": "fock-expect", "result": val.render(), "valid": valid},
        )
        return 0
    if cmd == "lattice":
        from .algebra import Letter
        from .latticepaths import lattice_path

        a = parse_element(ctx, args.expr)
        lines = []
        for m, _ in a.sorted_terms():
            word = [
                Letter(ctx.graph.path(e), sign < 0) for e, sign in m.word
            ]
            lp = lattice_path(ctx, word) if word else LatticePath((0,))
            lines.append(f"{m.render()}: {lp.ascii()}")
        _emit(args, "\n".join(lines), {"command": "lattice", "profiles": lines})
        return 0
    raise UsageError(f"unknown command {cmd!r}")


def run(argv) -> int:
    """Dispatch one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _run(args)
    except (ExpressionError, GraphFormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
