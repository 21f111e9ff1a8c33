"""Conversions between MPoly and sympy, used for gcd and factorization over Q(i)."""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from .mpoly import MPoly
from .scalars import QQi, real_imag


def _to_sym_scalar(c):
    re, im = real_imag(c)
    return sp.Rational(re.numerator, re.denominator) + sp.I * sp.Rational(im.numerator, im.denominator)


def _from_sym_scalar(c):
    c = sp.sympify(c)
    re, im = sp.re(c), sp.im(c)
    if not (re.is_Rational and im.is_Rational):
        raise ValueError(f"coefficient {c} is not a Gaussian rational")
    return QQi.make(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def symbols_for(P: MPoly):
    return sp.symbols(" ".join(f"v{i}" for i in range(P.nvars)), seq=True)


def to_sympy(P: MPoly, syms=None):
    if not P.is_exact():
        raise ValueError("sympy bridge needs exact coefficients")
    syms = syms or symbols_for(P)
    expr = sp.Integer(0)
    for e, c in P.terms.items():
        t = _to_sym_scalar(c)
        for s, k in zip(syms, e):
            if k:
                t = t * s**k
        expr += t
    return expr


def from_sympy(expr, syms, names=None) -> MPoly:
    poly = sp.Poly(sp.expand(expr), *syms)
    return MPoly(len(syms), {e: _from_sym_scalar(c) for e, c in poly.terms()}, names)


def _gaussian(P: MPoly) -> bool:
    return not P.is_rational()


def gcd(P: MPoly, Q: MPoly) -> MPoly:
    syms = symbols_for(P)
    kw = {"extension": sp.I} if (_gaussian(P) or _gaussian(Q)) else {}
    g = sp.gcd(to_sympy(P, syms), to_sympy(Q, syms), *syms, **kw)
    return from_sympy(g, syms, P.names)


def factor(P: MPoly) -> tuple[object, list[tuple[MPoly, int]]]:
    """Irreducible factors over Q(i) when the input is Gaussian, else over Q."""
    syms = symbols_for(P)
    kw = {"extension": sp.I} if _gaussian(P) else {}
    c, facs = sp.factor_list(to_sympy(P, syms), *syms, **kw)
    return _from_sym_scalar(c), [(from_sympy(f, syms, P.names), m) for f, m in facs]


def factor_gaussian(P: MPoly) -> tuple[object, list[tuple[MPoly, int]]]:
    """Irreducible factors over Q(i) regardless of the coefficient field."""
    syms = symbols_for(P)
    c, facs = sp.factor_list(to_sympy(P, syms), *syms, extension=sp.I)
    return _from_sym_scalar(c), [(from_sympy(f, syms, P.names), m) for f, m in facs]


def exact_div(P: MPoly, Q: MPoly) -> MPoly:
    syms = symbols_for(P)
    q, r = sp.div(to_sympy(P, syms), to_sympy(Q, syms), *syms, **({"extension": sp.I} if (_gaussian(P) or _gaussian(Q)) else {}))
    if r != 0:
        raise ValueError("division is not exact")
    return from_sympy(q, syms, P.names)


def radical(P: MPoly) -> MPoly:
    """Product of the distinct irreducible factors, primitive-normalized."""
    if P.is_zero():
        return P
    _, facs = factor(P)
    out = MPoly.const(1, P.nvars, P.names)
    for f, _m in facs:
        if f.degree > 0:
            out = out * f
    return out.primitive()


def scalar_from_sympy(c):
    """Gaussian rational for an exact sympy number; ValueError otherwise."""
    return _from_sym_scalar(sp.expand(c))
