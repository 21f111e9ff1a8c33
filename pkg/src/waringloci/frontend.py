"""Text and JSON front end.

Grammar (whitespace ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER ('/' NUMBER)? | 'i' | IDENT | '(' expr ')'

NUMBER is an unsigned decimal literal (``3``, ``0.25``, ``1e-3``), read
exactly. The identifier ``i`` is always the imaginary unit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .polycore.mpoly import MPoly, default_names, dual_names
from .polycore.points import ProjPoint, _fmt_complex
from .polycore.scalars import I, QQi, format_exact, is_exact


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        if pos is not None and text is not None:
            message = f"{message} at position {pos}: {text!r}"
        super().__init__(message)


# AST --------------------------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    args: tuple


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    args: tuple


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, Imag, Var, Neg, Add, Sub, Mul, Pow]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<id>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^/()]))"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", pos, text[pos : pos + 10])
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.seen: list[str] = []

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2], self.text[tok[2] : tok[2] + 10])
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected token", tok[2], tok[1])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = Add((node, rhs)) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        args = [self.unary()]
        while self.peek()[1] == "*":
            self.take()
            args.append(self.unary())
        return args[0] if len(args) == 1 else Mul(tuple(args))

    def unary(self) -> Node:
        tok = self.peek()
        if tok[1] == "-":
            self.take()
            return Neg(self.unary())
        if tok[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "num" or not tok[1].isdigit():
                raise ParseError("exponent must be a non-negative integer literal", tok[2], tok[1] or "<end>")
            self.take()
            return Pow(base, int(tok[1]))
        return base

    def atom(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            q = Fraction(val)
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.peek()
                if k2 != "num":
                    raise ParseError("division only allowed between number literals", p2, v2 or "<end>")
                self.take()
                den = Fraction(v2)
                if den == 0:
                    raise ParseError("division by zero", p2, v2)
                q = q / den
            return Num(q)
        if kind == "id":
            self.take()
            if val == "i":
                return Imag()
            if val not in self.seen:
                self.seen.append(val)
            return Var(val)
        if val == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError("unexpected token", pos, val or "<end>")


def parse_ast(text: str) -> tuple[Node, list[str]]:
    p = _Parser(text)
    node = p.parse()
    return node, p.seen


def _eval(node: Node, index: dict, n: int, names) -> MPoly:
    if isinstance(node, Num):
        return MPoly.const(node.value, n, names)
    if isinstance(node, Imag):
        return MPoly.const(I, n, names)
    if isinstance(node, Var):
        return MPoly.var(index[node.name], n, names)
    if isinstance(node, Neg):
        return -_eval(node.arg, index, n, names)
    if isinstance(node, Add):
        out = MPoly.zero(n, names)
        for a in node.args:
            out = out + _eval(a, index, n, names)
        return out
    if isinstance(node, Sub):
        return _eval(node.left, index, n, names) - _eval(node.right, index, n, names)
    if isinstance(node, Mul):
        out = MPoly.const(1, n, names)
        for a in node.args:
            out = out * _eval(a, index, n, names)
        return out
    if isinstance(node, Pow):
        return _eval(node.base, index, n, names) ** node.exp
    raise TypeError(node)


def parse_poly(text: str, variables: Sequence[str] | None = None, *, homogeneous: bool = False) -> MPoly:
    """Parse ``text`` into an exact MPoly.

    Variables are ordered as ``variables`` when given (unknown identifiers are
    an error), otherwise by first appearance.
    """
    node, seen = parse_ast(text)
    if variables is None:
        names = tuple(seen) if seen else ("x",)
    else:
        names = tuple(variables)
        for v in seen:
            if v not in names:
                raise ParseError(f"unknown identifier {v!r}; declared variables are {list(names)}")
    index = {v: k for k, v in enumerate(names)}
    P = _eval(node, index, len(names), names)
    if homogeneous:
        require_homogeneous(P)
    return P


def require_homogeneous(P: MPoly) -> None:
    if P.is_zero():
        raise ValueError("zero polynomial is not a form")
    items = P.items()
    d0 = sum(items[0][0])
    for e, c in items[1:]:
        if sum(e) != d0:
            t1 = print_poly(MPoly(P.nvars, {items[0][0]: items[0][1]}, P.names))
            t2 = print_poly(MPoly(P.nvars, {e: c}, P.names))
            raise ValueError(f"not homogeneous: term {t1} has degree {d0} but term {t2} has degree {sum(e)}")


def parse_scalar(text: str):
    P = parse_poly(text, variables=())
    if P.is_zero():
        return Fraction(0)
    return P.coeff(())


def parse_point(text: str) -> ProjPoint:
    """``[1:i:0]``, ``1:i:0`` or ``1,i,0``; coordinates are constant expressions."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    sep = ":" if ":" in s else ","
    parts = [p for p in s.split(sep)]
    if len(parts) < 2:
        raise ParseError(f"a projective point needs at least two coordinates: {text!r}")
    return ProjPoint([parse_scalar(p) for p in parts])


# printing -------------------------------------------------------------------------
def _coeff_str(c) -> tuple[str, bool]:
    """(text, needs-parentheses-when-multiplied)."""
    if is_exact(c):
        s = format_exact(c)
        compound = isinstance(c, QQi) and c.re != 0
        return s, compound
    c = complex(c)
    if abs(c.imag) == 0:
        return repr(c.real), c.real < 0
    s = _fmt_complex_exactish(c)
    return s, True


def _fmt_complex_exactish(c: complex) -> str:
    re_, im = c.real, c.imag
    if re_ == 0:
        return f"{repr(im)}*i"
    sign = "+" if im >= 0 else "-"
    return f"{repr(re_)}{sign}{repr(abs(im))}*i"


def _mono_str(e, names) -> str:
    parts = []
    for k, name in zip(e, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def print_poly(P: MPoly) -> str:
    """Canonical text: terms in graded-lex descending order."""
    if P.is_zero():
        return "0"
    out = []
    for e, c in P.items():
        mono = _mono_str(e, P.names)
        neg = False
        if is_exact(c) and not isinstance(c, QQi):
            neg = c < 0
            cs, compound = _coeff_str(-c if neg else c)
        elif not is_exact(c) and complex(c).imag == 0:
            neg = complex(c).real < 0
            cs, compound = _coeff_str(-complex(c).real if neg else complex(c).real)
        else:
            cs, compound = _coeff_str(c)
            if compound:
                cs = f"({cs})"
            elif cs.startswith("-"):
                neg, cs = True, cs[1:]
        if mono:
            if cs in ("1", "1.0"):
                body = mono
            else:
                body = f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def print_point(P: ProjPoint) -> str:
    return str(P)


# JSON -------------------------------------------------------------------------------
def _scalar_json(c) -> str:
    if is_exact(c):
        return format_exact(c)
    return _fmt_complex_exactish(complex(c)) if complex(c).imag else repr(complex(c).real)


def _point_json(P: ProjPoint) -> str:
    if P.exact:
        return str(P)
    return "[" + ":".join(_scalar_json(v) for v in P.coords) + "]"


def _parse_point_json(s: str, exact_: bool) -> ProjPoint:
    P = parse_point(s)
    return P if exact_ else ProjPoint([complex(v) for v in P.coords], exact_=False)


def to_dict(obj) -> dict:
    from . import results as R

    if isinstance(obj, MPoly):
        return {"result": "polynomial", "variables": list(obj.names), "polynomial": print_poly(obj)}
    if isinstance(obj, ProjPoint):
        return {"result": "point", "point": _point_json(obj), "exact": obj.exact}
    if isinstance(obj, R.Decomposition):
        names = list(obj.terms[0][1].names) if obj.terms else []
        return {
            "result": "decomposition",
            "rank": len(obj),
            "degree": obj.degree,
            "exact": obj.exact,
            "residual": obj.residual,
            "variables": names,
            "terms": [
                {"coefficient": _scalar_json(c), "linear_form": print_poly(L)} for c, L in obj.terms
            ],
        }
    if isinstance(obj, R.LocusDescription):
        return {
            "result": "locus",
            "locus_kind": obj.kind,
            "kind": obj.kind,
            "describes": obj.describes,
            "variables": list(_locus_names(obj)),
            "equations": [print_poly(e) for e in obj.equations],
            "factors": [print_poly(f) for f in obj.factors],
            "points": [_point_json(p) for p in obj.points],
            "indices": list(obj.indices),
            "parts": [{"indices": list(ix), "locus": to_dict(sub)} for ix, sub in obj.parts],
            "exact": obj.exact,
            "certified": obj.certified,
            "note": obj.note,
            "nvars": obj.nvars,
        }
    if isinstance(obj, R.RankResult):
        return {
            "result": "rank",
            "rank": obj.rank,
            "method": obj.method,
            "certified": obj.certified,
            "lower_bound": obj.lower_bound,
            "witness": to_dict(obj.witness) if obj.witness is not None else None,
            "note": obj.note,
        }
    if isinstance(obj, R.Membership):
        return {
            "result": "membership",
            "point": _point_json(obj.point),
            "forbidden": obj.forbidden,
            "in_waring_locus": obj.in_waring_locus,
            "exact": obj.exact,
            "reason": obj.reason,
        }
    if isinstance(obj, R.ApolarSlice):
        names = list(obj.basis[0].names) if obj.basis else []
        return {
            "result": "apolar",
            "degree": obj.degree,
            "dimension": obj.dim,
            "variables": names,
            "basis": [print_poly(g) for g in obj.basis],
        }
    if isinstance(obj, R.CubicClassification):
        return {
            "result": "classification",
            "type": obj.type,
            "rank": obj.rank,
            "essential_count": obj.essential_count,
            "singular_points": [_point_json(p) for p in obj.singular_points],
            "singular_exact": obj.singular_exact,
            "f2": _poly_json(obj.f2),
            "f3": _poly_json(obj.f3),
            "aronhold_S": None if obj.aronhold_S is None else _scalar_json(obj.aronhold_S),
            "aronhold_T": None if obj.aronhold_T is None else _scalar_json(obj.aronhold_T),
            "certified": obj.certified,
        }
    if isinstance(obj, R.AdditivityReport):
        return {
            "result": "strassen-check",
            "blocks": [list(b) for b in obj.blocks],
            "tags": list(obj.tags),
            "block_ranks": list(obj.block_ranks),
            "rank": obj.rank,
            "lower_bound": obj.lower_bound,
            "certified": obj.certified,
            "supported": obj.supported,
            "note": obj.note,
        }
    if isinstance(obj, dict):
        return obj
    raise TypeError(f"no JSON schema for {type(obj).__name__}")


def _locus_names(L) -> tuple:
    for P in list(L.equations) + list(L.factors):
        return P.names
    return dual_names(default_names(L.nvars)) if L.nvars else ()


def _poly_json(P):
    if P is None:
        return None
    return {"variables": list(P.names), "polynomial": print_poly(P)}


def _poly_from(d):
    if d is None:
        return None
    return parse_poly(d["polynomial"], d["variables"])


def to_json(obj, indent: int | None = 2) -> str:
    return json.dumps(to_dict(obj), indent=indent)


def from_dict(d: dict):
    from . import results as R

    kind = d.get("result")
    if kind == "polynomial":
        return parse_poly(d["polynomial"], d["variables"])
    if kind == "point":
        return _parse_point_json(d["point"], d["exact"])
    if kind == "decomposition":
        names = d["variables"]
        terms = []
        for t in d["terms"]:
            c = parse_scalar(t["coefficient"])
            L = parse_poly(t["linear_form"], names)
            if not d["exact"]:
                c = complex(c)
                L = MPoly(L.nvars, {e: complex(v) for e, v in L.terms.items()}, L.names)
            terms.append((c, L))
        return R.Decomposition(terms, d["degree"], d["exact"], d["residual"])
    if kind == "locus":
        names = d["variables"] or None
        return R.LocusDescription(
            describes=d["describes"],
            kind=d["locus_kind"],
            equations=[parse_poly(e, names) for e in d["equations"]],
            factors=[parse_poly(f, names) for f in d["factors"]],
            points=[_parse_point_json(p, d["exact"]) for p in d["points"]],
            indices=list(d["indices"]),
            parts=[(tuple(p["indices"]), from_dict(p["locus"])) for p in d["parts"]],
            exact=d["exact"],
            certified=d["certified"],
            note=d["note"],
            nvars=d["nvars"],
        )
    if kind == "rank":
        w = d.get("witness")
        return R.RankResult(
            rank=d["rank"],
            method=d["method"],
            certified=d["certified"],
            lower_bound=d["lower_bound"],
            witness=from_dict(w) if w else None,
            note=d["note"],
        )
    if kind == "membership":
        return R.Membership(
            point=_parse_point_json(d["point"], d["exact"]),
            forbidden=d["forbidden"],
            exact=d["exact"],
            reason=d["reason"],
        )
    if kind == "apolar":
        return R.ApolarSlice(d["degree"], [parse_poly(g, d["variables"]) for g in d["basis"]])
    if kind == "classification":
        return R.CubicClassification(
            type=d["type"],
            rank=d["rank"],
            singular_points=[_parse_point_json(p, d["singular_exact"]) for p in d["singular_points"]],
            singular_exact=d["singular_exact"],
            f2=_poly_from(d["f2"]),
            f3=_poly_from(d["f3"]),
            aronhold_S=None if d["aronhold_S"] is None else parse_scalar(d["aronhold_S"]),
            aronhold_T=None if d["aronhold_T"] is None else parse_scalar(d["aronhold_T"]),
            certified=d["certified"],
            essential_count=d["essential_count"],
        )
    if kind == "strassen-check":
        return R.AdditivityReport(
            blocks=[tuple(b) for b in d["blocks"]],
            tags=list(d["tags"]),
            block_ranks=list(d["block_ranks"]),
            rank=d["rank"],
            lower_bound=d["lower_bound"],
            certified=d["certified"],
            supported=d["supported"],
            note=d["note"],
        )
    if kind == "plot":
        return dict(d)
    raise ValueError(f"unknown result kind {kind!r}")


def from_json(text: str):
    return from_dict(json.loads(text))


def print_factored(factors: Sequence[MPoly]) -> str:
    """``X*Y*Z*(X^2 - 12*Y*Z)`` style product of factors."""
    parts = []
    for f in factors:
        s = print_poly(f)
        parts.append(s if len(f) == 1 and "-" not in s[1:] else f"({s})")
    return "*".join(parts) if parts else "1"


__all__ = [
    "ParseError",
    "from_dict",
    "from_json",
    "parse_point",
    "parse_poly",
    "parse_scalar",
    "print_factored",
    "print_point",
    "print_poly",
    "to_dict",
    "to_json",
    "_fmt_complex",
]
