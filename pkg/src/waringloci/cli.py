"""Command-line interface: ``waringloci <command> EXPR [options]``.

Exit codes: 0 for certified exact results, 2 for numeric or uncertified
ones, 1 for errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import apolarity, planecubics, plotting, splitforms
from .frontend import ParseError, parse_point, parse_poly, print_factored, print_poly, to_dict
from .results import (
    AdditivityReport,
    ApolarSlice,
    CubicClassification,
    Decomposition,
    ForbiddenPointError,
    LocusDescription,
    Membership,
    RankResult,
    UnsupportedFormError,
)

EXIT_EXACT, EXIT_ERROR, EXIT_NUMERIC = 0, 1, 2


def _form(args) -> "MPoly":  # noqa: F821
    names = [v.strip() for v in args.vars.split(",")] if args.vars else None
    return parse_poly(args.expr, names, homogeneous=True)


def _points(texts) -> list:
    return [parse_point(t) for t in texts or []]


# text rendering -----------------------------------------------------------------------
def _text_locus(L: LocusDescription, indent: str = "") -> list[str]:
    lines = [f"{indent}{L.describes} locus: {L.kind}" + (" (exact)" if L.exact else " (numeric)")]
    if L.factors:
        lines.append(f"{indent}  equation: {print_factored(L.factors)}")
    elif L.equations:
        lines += [f"{indent}  equation: {print_poly(e)}" for e in L.equations]
    if L.points:
        lines.append(f"{indent}  points: " + ", ".join(str(p) for p in L.points))
    if L.indices:
        lines.append(f"{indent}  indices: {L.indices}")
    for idx, sub in L.parts:
        lines.append(f"{indent}  part on variables {list(idx)}:")
        lines += _text_locus(sub, indent + "    ")
    if L.note:
        lines.append(f"{indent}  note: {L.note}")
    return lines


def render_text(obj) -> str:
    if isinstance(obj, list):
        return "\n".join(render_text(o) for o in obj)
    if isinstance(obj, RankResult):
        out = [f"rank: {obj.rank}", f"method: {obj.method}", f"certified: {obj.certified}",
               f"lower bound: {obj.lower_bound}"]
        return "\n".join(out + ([f"note: {obj.note}"] if obj.note else []))
    if isinstance(obj, Decomposition):
        out = [f"rank: {len(obj)}", f"exact: {obj.exact}"]
        if not obj.exact:
            out.append(f"residual: {obj.residual:.3e}")
        out += [f"  ({d['coefficient']}) * ({d['linear_form']})^{obj.degree}" for d in to_dict(obj)["terms"]]
        return "\n".join(out)
    if isinstance(obj, LocusDescription):
        return "\n".join(_text_locus(obj))
    if isinstance(obj, Membership):
        where = "forbidden" if obj.forbidden else "in the Waring locus"
        return f"{obj.point}: {where} ({obj.reason})"
    if isinstance(obj, ApolarSlice):
        return f"degree {obj.degree} (dim {obj.dim}): " + ", ".join(print_poly(g) for g in obj.basis)
    if isinstance(obj, CubicClassification):
        d = to_dict(obj)
        out = [f"type: ({obj.type})", f"rank: {obj.rank}", f"aronhold S: {d['aronhold_S']}",
               f"aronhold T: {d['aronhold_T']}"]
        if obj.singular_points:
            out.append("singular points: " + ", ".join(d["singular_points"]))
        return "\n".join(out)
    if isinstance(obj, AdditivityReport):
        d = to_dict(obj)
        out = [f"blocks: {d['blocks']}", f"tags: {d['tags']}", f"block ranks: {d['block_ranks']}",
               f"rank: {obj.rank}", f"lower bound: {obj.lower_bound}", f"certified: {obj.certified}",
               f"note: {obj.note}"]
        return "\n".join(out)
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {v}" for k, v in obj.items() if k != "result")
    return str(obj)


def emit(obj, fmt: str) -> None:
    if fmt == "json":
        payload = [to_dict(o) for o in obj] if isinstance(obj, list) else to_dict(obj)
        print(json.dumps(payload, indent=2))
    else:
        print(render_text(obj))


# commands ---------------------------------------------------------------------------------
def cmd_rank(args):
    res = apolarity.waring_rank(_form(args))
    return res, EXIT_EXACT if res.certified else EXIT_NUMERIC


def cmd_apolar(args):
    F = _form(args)
    degrees = args.degree or list(range(1, F.degree + 2))
    return [apolarity.apolar_slice(F, k) for k in degrees], EXIT_EXACT


def cmd_decompose(args):
    F = _form(args)
    D = apolarity.decompose(F, _points(args.through), seed=args.seed, tol=args.tol)
    if not D.verify(F, tol=max(args.tol, 1e-9)):
        raise ArithmeticError("decomposition failed verification")
    return D, EXIT_EXACT if D.exact else EXIT_NUMERIC


def cmd_locus(args):
    F = _form(args)
    if args.point:
        m = apolarity.membership(F, parse_point(args.point))
        return m, EXIT_EXACT if m.exact else EXIT_NUMERIC
    L = apolarity.locus(F)
    code = EXIT_EXACT if (L.exact and L.certified) else EXIT_NUMERIC
    if args.equation:
        if L.kind != "hypersurface":
            raise UnsupportedFormError(f"the locus is of kind {L.kind!r}, not a hypersurface")
        factors = plotting.locus_factors(L)
        eq = L.equations[0] if L.equations else None
        d = to_dict(eq) if eq is not None else {"result": "polynomial"}
        d.update({"describes": L.describes, "factored": print_factored(factors)})
        return d, code
    if args.enumerate:
        if L.kind != "points":
            raise UnsupportedFormError(f"the locus is of kind {L.kind!r}, not a finite set")
        return L, code
    return L, code


def cmd_classify(args):
    c = planecubics.classify_cubic(_form(args))
    return c, EXIT_EXACT if c.certified else EXIT_NUMERIC


def cmd_plot(args):
    F = _form(args)
    L = apolarity.locus(F)
    window = tuple(float(v) for v in args.window.split(","))
    if len(window) == 2:
        window = window * 2
    names = F.names
    chart = plotting.parse_chart(args.chart, names)
    spec = plotting.spec_from_locus(L, chart=chart, window=window, grid=args.grid, out=args.out,
                                    title=f"{L.describes} locus of {print_poly(F)}")
    comps = plotting.render(spec)
    report = {
        "result": "plot",
        "output": args.out,
        "describes": L.describes,
        "chart": f"{names[chart]}=1",
        "components": [{"id": c.gid, "factor": c.factor, "kind": c.kind} for c in comps],
    }
    return report, EXIT_EXACT if L.exact else EXIT_NUMERIC


def cmd_strassen(args):
    rep = splitforms.strassen_check(_form(args))
    return rep, EXIT_EXACT if rep.certified else EXIT_NUMERIC


COMMANDS = {
    "rank": cmd_rank,
    "apolar": cmd_apolar,
    "decompose": cmd_decompose,
    "locus": cmd_locus,
    "classify": cmd_classify,
    "plot": cmd_plot,
    "strassen-check": cmd_strassen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("expr", help="homogeneous polynomial, e.g. 'x*(y*z+x^2)'")
    common.add_argument("--vars", help="comma-separated variable order (default: order of appearance)")
    common.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for randomized steps")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="waringloci", description="Waring ranks, decompositions and loci of forms.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("rank", parents=[common], help="Waring rank")
    sp = sub.add_parser("apolar", parents=[common], help="graded pieces of the apolar ideal")
    sp.add_argument("--degree", type=int, action="append", help="degree to report (repeatable)")
    sp = sub.add_parser("decompose", parents=[common], help="a minimal Waring decomposition")
    sp.add_argument("--through", action="append", metavar="P", help="prescribed point such as [1:0:2] (repeatable)")
    sp = sub.add_parser("locus", parents=[common], help="Waring/forbidden locus or membership")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--point", metavar="P", help="test membership of the linear form with coefficients P")
    g.add_argument("--equation", action="store_true", help="print the defining equation, factored")
    g.add_argument("--enumerate", action="store_true", help="list a finite locus")
    sub.add_parser("classify", parents=[common], help="plane cubic normal-form type")
    sp = sub.add_parser("plot", parents=[common], help="SVG of the locus in an affine chart")
    sp.add_argument("--chart", default="z=1", help="coordinate set to 1, e.g. z=1")
    sp.add_argument("--grid", type=int, default=400, help="grid resolution per axis")
    sp.add_argument("--window", default="-5,5", help="'a,b' or 'x0,x1,y0,y1'")
    sp.add_argument("--out", default="locus.svg", help="output SVG path")
    sub.add_parser("strassen-check", parents=[common], help="additivity certificate for a split form")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj, code = COMMANDS[args.command](args)
    except (ParseError, ForbiddenPointError, UnsupportedFormError, ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    emit(obj, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
