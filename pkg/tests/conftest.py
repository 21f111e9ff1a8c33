"""Shared strategies and independent reference computations (sympy based)."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from waringloci import parse_poly
from waringloci.polycore.mpoly import MPoly, monomials_of_degree
from waringloci.polycore.points import ProjPoint


def P(text, names=None):
    return parse_poly(text, names)


def pt(*coords):
    return ProjPoint([Fraction(c) for c in coords])


# strategies --------------------------------------------------------------------------
def forms(nvars: int, degree: int, max_terms: int = 5, coeffs=(-5, 5)):
    mons = monomials_of_degree(nvars, degree)
    lo, hi = coeffs
    return st.dictionaries(st.sampled_from(mons), st.integers(lo, hi).filter(bool), min_size=1,
                           max_size=max_terms).map(lambda d: MPoly(nvars, d))


def sparse_polys(nvars: int = 3, max_deg: int = 4):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)])
    coef = st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(bool)
    return st.dictionaries(exps, coef, max_size=6).map(lambda d: MPoly(nvars, d))


def rational_points(n: int, lo: int = -3, hi: int = 3):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).filter(any).map(lambda c: pt(*c))


def random_form(rng: random.Random, nvars: int, degree: int, lo: int = -5, hi: int = 5) -> MPoly:
    while True:
        terms = {e: rng.randint(lo, hi) for e in monomials_of_degree(nvars, degree)}
        F = MPoly(nvars, terms)
        if not F.is_zero():
            return F


# independent references --------------------------------------------------------------
def to_sym(F: MPoly, syms=None):
    syms = syms or sp.symbols(" ".join(F.names))
    syms = syms if isinstance(syms, (list, tuple)) else [syms]
    out = 0
    for e, c in F.terms.items():
        cc = sp.Rational(c.numerator, c.denominator) if isinstance(c, (int, Fraction)) else sp.nsimplify(complex(c))
        term = cc
        for s, k in zip(syms, e):
            term *= s**k
        out += term
    return sp.expand(out), list(syms)


def sym_apolar(g: MPoly, F: MPoly):
    """g acting on F by differentiation, computed with sympy."""
    f, xs = to_sym(F)
    out = 0
    for e, c in g.terms.items():
        term = f
        for x, k in zip(xs, e):
            term = sp.diff(term, x, k)
        out += sp.Rational(c.numerator, c.denominator) * term
    return sp.expand(out), xs


def sym_catalecticant_rank(F: MPoly, k: int) -> int:
    f, xs = to_sym(F)
    rows = []
    out_basis = monomials_of_degree(F.nvars, F.degree - k)
    for e in monomials_of_degree(F.nvars, k):
        h = f
        for x, m in zip(xs, e):
            h = sp.diff(h, x, m)
        poly = sp.Poly(h, *xs) if h != 0 else None
        rows.append([poly.coeff_monomial(m) if poly is not None else 0 for m in out_basis])
    return sp.Matrix(rows).rank()


def sym_binary_disc(g: MPoly):
    """Discriminant of the dehomogenization (leading coefficient nonzero)."""
    t = sp.Symbol("t")
    d = g.degree
    expr = sum(sp.Rational(c.numerator, c.denominator) * t ** e[0] for e, c in g.terms.items())
    return sp.discriminant(sp.Poly(expr, t)) if sp.Poly(expr, t).degree() == d else None


def random_linear(rng: random.Random, names=("x", "y"), lo: int = -4, hi: int = 4) -> MPoly:
    while True:
        c = [rng.randint(lo, hi) for _ in names]
        if any(c):
            return MPoly.linear(c, names)


def binary_above_generic(rng: random.Random, d: int) -> MPoly:
    """``A^(d-1) B + sum C_j^d``: a binary form of rank ceil((d+1)/2) + 1 whose
    minimal apolar generator has a double root."""
    from waringloci.binaryforms import binary_rank

    c = d // 2 + 1
    d1 = d + 1 - c
    while True:
        F = random_linear(rng) ** (d - 1) * random_linear(rng)
        for _ in range(d1 - 2):
            F = F + random_linear(rng) ** d * rng.choice([-3, -2, -1, 1, 2, 3])
        if not F.is_zero() and binary_rank(F) == c + 1:
            return F


# acceptance report -------------------------------------------------------------------
ACCEPTANCE: dict = {}


def record(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
