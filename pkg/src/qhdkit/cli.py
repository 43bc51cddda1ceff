"""Command-line front end: ``qhdkit <command> ...``.

Exit codes: 0 success, 2 a mathematical check failed, 1 usage or input error.
Reports are JSON with sorted keys unless ``--pretty`` is given.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import matgroup, pipelines, polyalg, resgraph
from .fpgroup import (
    BoundExceeded,
    Presentation,
    WordSyntaxError,
    abelian_invariants,
    b23_presentation,
    group_order,
)
from .fpgroup.cosets import DEFAULT_MAX_COSETS, coset_enumerate
from .zvk import (
    BraidMonodromyData,
    DegenerateArrangement,
    LineArrangement,
    UnknownLabel,
    braid_monodromy_presentation,
    wiring_presentation,
)

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        flags = sorted({s for a in self._actions for s in a.option_strings})
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\nvalid flags: {' '.join(flags)}\n")
        raise SystemExit(EXIT_USAGE)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


# commands; each returns (inputs, results, ok)


def cmd_group(a):
    if a.b23 is not None:
        p = b23_presentation(a.b23)
    elif a.file:
        p = Presentation.load(a.file)
    elif a.gens:
        p = Presentation.parse(a.gens.split(","), a.rel or [])
    else:
        raise UsageError("give --b23 P, --file PATH or --gens with --rel")
    res = {"presentation": p.to_dict(), "ab": abelian_invariants(p)}
    if not a.no_order:
        res["order"] = group_order(p, a.max_cosets)
        if a.subgroup:
            try:
                res["index"] = coset_enumerate(p, [p.word(w) for w in a.subgroup], a.max_cosets).index
            except BoundExceeded:
                res["index"] = None
    return {"presentation": p.to_dict()}, res, True


def cmd_zvk(a):
    data = pipelines.data_dir(a.data)
    if a.kind == "arrangement":
        path = a.file or data / "arrangement_b23.json"
        g, mm = wiring_presentation(LineArrangement.load(path))
        kill = a.kill or []
    else:
        path = a.file or data / "c23_braid_monodromy.json"
        d = BraidMonodromyData.load(path)
        g, mm = braid_monodromy_presentation(d)
        kill = a.kill if a.kill is not None else list(d.kill.values())
    killed = g.with_relators([mm[k] if k in mm else g.word(k) for k in kill])
    res = {
        "presentation": killed.to_dict(),
        "ab": abelian_invariants(killed),
        "meridians": {k: g.fmt(w) for k, w in sorted(mm.items())} if a.meridians else None,
    }
    if a.order:
        res["order"] = group_order(killed, a.max_cosets)
    res = {k: v for k, v in res.items() if v is not None}
    return {"kind": a.kind, "file": str(path), "kill": kill}, res, True


def cmd_matgroup(a):
    if a.m < 2:
        raise UsageError("--m must be at least 2")
    res = matgroup.report(a.m, a.variant)
    return {"m": a.m, "variant": a.variant}, res, True


def _graph(a) -> resgraph.PlumbingGraph:
    fam = a.family.upper()
    if fam in ("B23", "C23", "C33"):
        return resgraph.family_graph(fam, 0 if a.p is None else a.p)
    if fam == "GNQ":
        return resgraph.family_graph(fam, n=a.n, q=a.q)
    return resgraph.family_graph(fam, m=a.m, d=a.d)


def cmd_graph(a):
    g = _graph(a)
    res = {"graph": g.to_dict()}
    if a.solve is not None:
        res["d"] = resgraph.solve_central_weight(g, a.solve)
    elif all(w is not None for w in g.weights):
        res["discriminant"] = resgraph.discriminant_group(g)
        res["discriminant_order"] = resgraph.discriminant_order(g)
        res["negative_definite"] = g.is_negative_definite()
    inputs = {"family": a.family, "p": a.p, "n": a.n, "q": a.q, "m": a.m, "d": a.d}
    return {k: v for k, v in inputs.items() if v is not None}, res, True


def cmd_h1(a):
    model, kept = resgraph.family_model(a.family, a.p, pipelines.data_dir(a.data))
    g = resgraph.dual_graph(model, kept)
    res = {"h1": resgraph.complement_h1(model, kept), "graph": g.to_dict()}
    return {"family": a.family.upper(), "p": a.p}, res, True


def cmd_poly(a):
    f = polyalg.parse_polynomial(a.expr, a.vars.split(",") if a.vars else None)
    res: dict = {"polynomial": str(f), "degree": f.degree()}
    if a.weights:
        if len(a.weights) != len(f.variables):
            raise UsageError("--weights needs one weight per variable")
        res["weighted_degree"] = f.weighted_degree(a.weights)
        res["weighted_homogeneous"] = f.is_weighted_homogeneous(a.weights)
    if a.subst:
        target = a.target.split(",") if a.target else list(f.variables)
        phi = polyalg.PolyMap.parse(f.variables, a.subst.split(","), target)
        f = polyalg.substitute(f, phi)
        res["substituted"] = str(f)
        res["substituted_degree"] = f.degree()
    if a.at:
        res["value"] = str(polyalg.evaluate(f, a.at))
    if a.chart:
        cvars = (a.chart_vars or "u,v").split(",")
        chart = polyalg.PolyMap.parse(f.variables, a.chart.split(","), cvars)
        res["tangent_cone"] = str(polyalg.tangent_cone(f, chart))
    if a.divide:
        g = polyalg.parse_polynomial(a.divide, f.variables)
        q = polyalg.divide_exact(f, g)
        res["quotient"] = None if q is None else str(q)
        res["divisible"] = q is not None
    return {"expr": a.expr}, res, True


def cmd_hj(a):
    if a.value:
        n, q = resgraph.hj_value(a.numbers)
        return {"sequence": a.numbers}, {"n": n, "q": q}, True
    if len(a.numbers) != 2:
        raise UsageError("hj expects N Q (or --value A1 A2 ...)")
    n, q = a.numbers
    return {"n": n, "q": q}, {"sequence": resgraph.hj_expand(n, q)}, True


def cmd_verify(a):
    targets = ["b23", "c23", "c33", "matgroup"] if a.target == "all" else [a.target]
    ps = [a.p] if a.p is not None else list(range(a.max_p + 1))
    ms = [a.m] if a.m is not None else list(range(2, a.max_m + 1))
    results: dict = {}
    ok = True
    for t in targets:
        if t == "matgroup":
            rows = {str(m): pipelines.verify_matgroup(m) for m in ms}
            rows.update({f"{m}'": pipelines.verify_gprime(m) for m in ms})
        else:
            fn = {"b23": pipelines.verify_b23, "c23": pipelines.verify_c23, "c33": pipelines.verify_c33}[t]
            rows = {str(p): fn(p, a.data) for p in ps}
        ok &= all(r["ok"] for r in rows.values())
        results[t] = rows
    inputs = {"target": a.target}
    if any(t != "matgroup" for t in targets):
        inputs["p"] = ps
    if "matgroup" in targets:
        inputs["m"] = ms
    return inputs, results, ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="human-readable output")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include wall-clock timing in the report")
    common.add_argument("--data", default=argparse.SUPPRESS,
                        help=f"fixture directory (default: packaged data, or ${pipelines.DATA_ENV})")
    ap = _Parser(prog="qhdkit", description="Exact checks for rational homology disk smoothings.",
                 parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    g = sub.add_parser("group", help="order and abelianization of a presentation")
    g.add_argument("--b23", type=int, metavar="P", help="use the two-generator family presentation")
    g.add_argument("--file", help="presentation JSON {gens, relators}")
    g.add_argument("--gens", help="comma-separated generator names")
    g.add_argument("--rel", action="append", help="relator (repeatable)")
    g.add_argument("--subgroup", action="append", help="subgroup generator word (repeatable)")
    g.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    g.add_argument("--no-order", action="store_true", help="skip coset enumeration")
    g.set_defaults(func=cmd_group)

    z = sub.add_parser("zvk", help="presentation of a curve complement")
    z.add_argument("kind", choices=["arrangement", "monodromy"])
    z.add_argument("--file", help="fixture path (default: packaged fixture)")
    z.add_argument("--kill", action="append", help="meridian label or word to kill (repeatable)")
    z.add_argument("--meridians", action="store_true", help="list meridian words")
    z.add_argument("--order", action="store_true", help="also run coset enumeration")
    z.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    z.set_defaults(func=cmd_zvk)

    mg = sub.add_parser("matgroup", help="invariants of the monomial group")
    mg.add_argument("--m", type=int, required=True)
    mg.add_argument("--variant", choices=["G", "G'"], default="G")
    mg.set_defaults(func=cmd_matgroup)

    gr = sub.add_parser("graph", help="resolution graphs and discriminant groups")
    gr.add_argument("family", type=str.lower, choices=["b23", "c23", "c33", "gnq", "b23seifert"])
    gr.add_argument("--p", type=int)
    gr.add_argument("--n", type=int)
    gr.add_argument("--q", type=int)
    gr.add_argument("--m", type=int)
    gr.add_argument("--d", type=int, help="central weight for b23seifert")
    gr.add_argument("--discriminant", action="store_true", help="report the discriminant group (default)")
    gr.add_argument("--solve", type=int, metavar="TARGET", help="solve for the central weight")
    gr.set_defaults(func=cmd_graph)

    h = sub.add_parser("h1", help="first homology of a boundary complement")
    h.add_argument("--family", type=str.lower, choices=["b23", "c23", "c33"], required=True)
    h.add_argument("--p", type=int, default=0)
    h.set_defaults(func=cmd_h1)

    po = sub.add_parser("poly", help="polynomial checks")
    po.add_argument("expr")
    po.add_argument("--vars", help="variable order, comma-separated")
    po.add_argument("--weights", type=_ints)
    po.add_argument("--subst", help="comma-separated images of the variables")
    po.add_argument("--target", help="variables of the substitution images")
    po.add_argument("--at", type=_fractions, help="evaluate at a rational point")
    po.add_argument("--chart", help="chart images for the tangent cone")
    po.add_argument("--chart-vars", help="chart variables (default u,v)")
    po.add_argument("--divide", help="test exact divisibility")
    po.set_defaults(func=cmd_poly)

    hj = sub.add_parser("hj", help="Hirzebruch-Jung continued fractions")
    hj.add_argument("numbers", type=int, nargs="+")
    hj.add_argument("--value", action="store_true", help="evaluate a sequence instead")
    hj.set_defaults(func=cmd_hj)

    v = sub.add_parser("verify", help="run the end-to-end checks")
    v.add_argument("target", choices=["b23", "c23", "c33", "matgroup", "all"])
    v.add_argument("--p", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--max-p", type=int, default=3)
    v.add_argument("--max-m", type=int, default=5)
    v.set_defaults(func=cmd_verify)
    return ap


def _pretty(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                          (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines += _pretty(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    elif isinstance(obj, list):
        for v in obj:
            lines += _pretty(v, indent + 1) if isinstance(v, (dict, list)) else [f"{pad}- {v}"]
    else:
        lines.append(f"{pad}{obj}")
    return lines


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    for name, default in (("pretty", False), ("timing", False), ("data", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    start = time.perf_counter()
    try:
        inputs, results, ok = args.func(args)
    except (UsageError, WordSyntaxError, polyalg.PolySyntaxError, resgraph.BadInput, resgraph.NonFree,
            UnknownLabel, DegenerateArrangement, FileNotFoundError, json.JSONDecodeError, ValueError,
            KeyError) as exc:
        sys.stderr.write(f"qhdkit {args.command}: error: {exc}\n")
        return EXIT_USAGE
    report = {"command": args.command, "argv": argv, "inputs": inputs, "results": results, "ok": ok}
    if args.timing:
        report["timing"] = round(time.perf_counter() - start, 6)
    if args.pretty:
        out.write("\n".join(_pretty(report)) + "\n")
    else:
        out.write(json.dumps(report, sort_keys=True, default=str) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
