"""Plane cubics: classification into the ten types of the rank table, the net
of conics apolar to a rank-4 cubic, and forbidden loci for each type."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Sequence

import numpy as np
import sympy as sp

from .apolarity import decomposition_from_points, essential_variables
from .polycore import linalg, symbridge
from .polycore.apolar import annihilates, catalecticant
from .polycore.binary import discriminant_binary, roots_binary, squarefree_binary
from .polycore.mpoly import MPoly, check_form, dual_names
from .polycore.points import ProjPoint, dedupe
from .quadrics import quadric_matrix
from .results import (
    CubicClassification,
    Decomposition,
    ForbiddenPointError,
    InfeasibleError,
    LocusDescription,
    Membership,
    NetOfConics,
    UnsupportedFormError,
)

TABLE_RANK = {1: 1, 2: 2, 3: 3, 4: 3, 5: 4, 6: 4, 7: 4, 8: 4, 9: 4, 10: 5}

NORMAL_FORMS = {
    1: "x^3",
    2: "x*y*(x+y)",
    3: "x^2*y",
    4: "x^3+y^3+z^3",
    5: "x*y*z",
    6: "x*(y*z+x^2)",
    7: "x*y*z-(y+z)^3",
    8: "x^3-y^2*z",
    9: "x^3+y^3+z^3-6*x*y*z",
    10: "x*(x*y+z^2)",
}

NET_NAMES = ("alpha", "beta", "gamma")
LOCAL_NAMES = ("u0", "u1", "u2")
MAX_RETRIES = 200
RANK4_TYPES = (5, 6, 7, 9)


# Aronhold invariants ----------------------------------------------------------------
def _levi_civita():
    out = []
    for p in permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        out.append((p, -1 if inv % 2 else 1))
    return out


_EPS = _levi_civita()


def _tensor(F: MPoly) -> dict:
    A = {}
    for idx in product(range(3), repeat=3):
        e = [0, 0, 0]
        for i in idx:
            e[i] += 1
        mult = factorial(3) // (factorial(e[0]) * factorial(e[1]) * factorial(e[2]))
        A[idx] = F.coeff(tuple(e)) / mult
    return A


def aronhold_S(F: MPoly):
    """Degree-4 invariant, the symbolic contraction (abc)(abd)(acd)(bcd)."""
    A = _tensor(F)
    tot = Fraction(0)
    for (i1, j1, k1), s1 in _EPS:
        for (i2, j2, l2), s2 in _EPS:
            for (i3, k3, l3), s3 in _EPS:
                a = A[(i1, i2, i3)]
                if a == 0:
                    continue
                for (j4, k4, l4), s4 in _EPS:
                    v = A[(j1, j2, j4)] * A[(k1, k3, k4)] * A[(l2, l3, l4)]
                    if v != 0:
                        tot = tot + s1 * s2 * s3 * s4 * a * v
    return tot


def aronhold_T(F: MPoly):
    """Degree-6 invariant, the contraction (abc)(abd)(ace)(bcf)(def)^2."""
    A = _tensor(F)
    tot = Fraction(0)
    for (a1, b1, c1), s1 in _EPS:
        for (a2, b2, d2), s2 in _EPS:
            for (a3, c3, e3), s3 in _EPS:
                av = A[(a1, a2, a3)]
                if av == 0:
                    continue
                for (b4, c4, f4), s4 in _EPS:
                    bv = A[(b1, b2, b4)]
                    cv = A[(c1, c3, c4)]
                    if bv == 0 or cv == 0:
                        continue
                    head = s1 * s2 * s3 * s4 * av * bv * cv
                    for (d5, e5, f5), s5 in _EPS:
                        for (d6, e6, f6), s6 in _EPS:
                            v = A[(d2, d5, d6)] * A[(e3, e5, e6)] * A[(f4, f5, f6)]
                            if v != 0:
                                tot = tot + head * s5 * s6 * v
    return tot


def aronhold_discriminant(S, T):
    """Vanishes exactly on singular cubics (in this normalization of S, T)."""
    return 6 * T * T - S**3


# common zeros ---------------------------------------------------------------------------
def _to_point(values) -> ProjPoint:
    vals, ok = [], True
    for v in values:
        try:
            vals.append(symbridge.scalar_from_sympy(v))
        except (ValueError, TypeError):
            vals.append(complex(sp.N(v, 30)))
            ok = False
    if not ok:
        return ProjPoint([complex(v) for v in vals], exact_=False)
    return ProjPoint(vals)


def common_zeros(polys: Sequence[MPoly]) -> list[ProjPoint]:
    """Finitely many common projective zeros of ternary forms, chart by chart.

    Exact over Q(i) where sympy finds Gaussian-rational solutions, numeric
    otherwise. Raises ValueError on a positive-dimensional zero set.
    """
    n = polys[0].nvars
    syms = symbridge.symbols_for(polys[0])
    exprs = [symbridge.to_sympy(p, syms) for p in polys]
    out = []
    for k in range(n - 1, -1, -1):
        sub = {syms[k]: 1}
        sub.update({syms[j]: 0 for j in range(k + 1, n)})
        unknowns = list(syms[:k])
        eqs = [sp.expand(e.subs(sub)) for e in exprs]
        eqs = [e for e in eqs if e != 0]
        if not unknowns:
            if not eqs:
                out.append(ProjPoint([Fraction(int(j == k)) for j in range(n)]))
            continue
        if not eqs:
            raise ValueError("the forms share a curve of zeros")
        if any(e.is_number for e in eqs):
            continue
        for sol in sp.solve(eqs, unknowns, dict=True):
            if any(u not in sol for u in unknowns) or any(sol[u].free_symbols for u in unknowns):
                raise ValueError("the forms share a curve of zeros")
            out.append(_to_point([sol[u] for u in unknowns] + [1] + [0] * (n - 1 - k)))
    return dedupe(out)


def singular_points(F: MPoly) -> list[ProjPoint]:
    return common_zeros([F.diff(i) for i in range(F.nvars)])


# classification ---------------------------------------------------------------------
def _split_tangent_cone(H: MPoly) -> tuple[MPoly, MPoly]:
    """``H = u2 f2(u0, u1) + f3(u0, u1)`` for a cubic singular at [0:0:1]."""
    f2, f3 = {}, {}
    for e, c in H.terms.items():
        if e[2] == 0:
            f3[(e[0], e[1])] = c
        elif e[2] == 1:
            f2[(e[0], e[1])] = c
        else:
            raise AssertionError("cubic is not singular at the moved point")
    return MPoly(2, f2, LOCAL_NAMES[:2]), MPoly(2, f3, LOCAL_NAMES[:2])


def _frame_at(P: ProjPoint) -> list:
    """Invertible matrix whose last column is P (columns map local to original)."""
    rows = linalg.complete_to_basis([list(P.coords)], len(P))
    cols = rows[1:] + rows[:1]
    return linalg.transpose(cols)


@lru_cache(maxsize=256)
def _classify(F: MPoly) -> CubicClassification:
    from .binaryforms import binary_rank

    red = essential_variables(F)
    if red.count == 1:
        return CubicClassification(1, 1, essential_count=1)
    if red.count == 2:
        r = binary_rank(red.restricted)
        return CubicClassification(2 if r == 2 else 3, r, essential_count=2)
    if red.count > 3:
        raise ValueError("cubic in more than three essential variables")
    G = red.restricted
    S, T = aronhold_S(G), aronhold_T(G)
    sing = singular_points(G)
    exact = all(p.exact for p in sing)
    smooth_by_invariants = aronhold_discriminant(S, T) != 0
    if smooth_by_invariants != (not sing):
        raise AssertionError("singular-point count disagrees with the Aronhold discriminant")
    base = dict(singular_points=sing, singular_exact=exact, aronhold_S=S, aronhold_T=T, certified=exact)
    if not sing:
        t = 4 if S == 0 else 9
        return CubicClassification(t, TABLE_RANK[t], **{**base, "certified": True})
    if len(sing) == 3:
        return CubicClassification(5, 4, **{**base, "certified": True})
    if len(sing) == 2:
        return CubicClassification(6, 4, **{**base, "certified": True})
    if len(sing) != 1:
        raise AssertionError(f"unexpected number of singular points: {len(sing)}")
    P = sing[0]
    if not P.exact:
        # a unique singular point is defined over the coefficient field
        raise AssertionError("unique singular point was not found exactly")
    B = _frame_at(P)
    f2, f3 = _split_tangent_cone(G.linear_substitution(B, LOCAL_NAMES))
    if discriminant_binary(f2) != 0:
        t = 7
    else:
        _, ell = squarefree_binary(f2)
        a, b = ell.coeff((1, 0)), ell.coeff((0, 1))
        t = 10 if f3(b, -a) == 0 else 8
    return CubicClassification(t, TABLE_RANK[t], f2=f2, f3=f3, change=B, **base)


def classify_cubic(F: MPoly) -> CubicClassification:
    if check_form(F) != 3:
        raise ValueError(f"expected a cubic, got degree {F.degree}")
    return _classify(F)


def _require_plane(F: MPoly, types=None) -> CubicClassification:
    if check_form(F) != 3 or F.nvars != 3:
        raise ValueError("expected a ternary cubic")
    cls = classify_cubic(F)
    if cls.essential_count != 3:
        raise ValueError("cubic has fewer than three essential variables")
    if types is not None and cls.type not in types:
        raise UnsupportedFormError(f"operation not available for cubics of type ({cls.type})")
    return cls


# net of conics ------------------------------------------------------------------------
def net_of_conics(F: MPoly, basis: Sequence[MPoly] | None = None) -> NetOfConics:
    """Basis of (F^perp)_2 and the cubic of reducible conics ``det(sum a_i A_i)``."""
    if check_form(F) != 3 or F.nvars != 3:
        raise ValueError("expected a ternary cubic")
    if basis is None:
        basis = catalecticant(F, 2).kernel()
    else:
        basis = list(basis)
        for C in basis:
            if C.degree != 2 or not annihilates(C, F):
                raise ValueError(f"{C} is not an apolar conic of F")
    mats = [quadric_matrix(C) for C in basis]
    if len(basis) != 3 or linalg.rank([[m[i][j] for i in range(3) for j in range(3)] for m in mats]) != 3:
        raise ValueError(f"(F^perp)_2 must be 3-dimensional, got {len(basis)} independent conics")
    v = [MPoly.var(i, 3, NET_NAMES) for i in range(3)]
    M = [[v[0] * mats[0][i][j] + v[1] * mats[1][i][j] + v[2] * mats[2][i][j] for j in range(3)] for i in range(3)]
    delta = linalg.det_generic(M)
    if delta.is_zero():
        raise AssertionError("cubic of reducible conics vanishes identically")
    return NetOfConics(list(basis), mats, delta)


def _kernel2(v: list, exact: bool) -> list:
    """Two independent solutions of ``v . u = 0``."""
    if exact:
        return linalg.nullspace([v])
    _, _, vh = np.linalg.svd(np.array([v], dtype=complex))
    return [list(np.conj(vh[1])), list(np.conj(vh[2]))]


def restricted_delta(net: NetOfConics, P: ProjPoint):
    """Delta on the line ``C1(P) a + C2(P) b + C3(P) c = 0`` as a binary cubic,
    or None when P is a base point of the net."""
    p = list(P.coords) if P.exact else list(P.as_array())
    v = [C(p) if P.exact else complex(_numeric(C)(p)) for C in net.basis]
    if P.exact:
        if all(x == 0 for x in v):
            return None
    elif max(abs(x) for x in v) <= 1e-12 * max(1.0, max(abs(x) for x in p)) ** 2:
        return None
    u = _kernel2(v, P.exact)
    sub = [[u[0][i], u[1][i]] for i in range(3)]
    delta = net.delta if P.exact else _numeric(net.delta)
    return delta.linear_substitution(sub, ("s", "t"))


def _numeric(P: MPoly) -> MPoly:
    return MPoly(P.nvars, {e: complex(c) for e, c in P.terms.items()}, P.names)


def _numeric_repeated_root(g: MPoly, tol: float) -> bool:
    from .polycore.binary import roots_binary_numeric

    pts = roots_binary_numeric(g, 0.0)
    arr = [p.as_array() for p in pts]
    for i in range(len(arr)):
        for j in range(i + 1, len(arr)):
            a, b = arr[i], arr[j]
            cross = abs(a[0] * b[1] - a[1] * b[0]) / (np.linalg.norm(a) * np.linalg.norm(b))
            if cross < tol:
                return True
    return False


def membership_rank4(F: MPoly, P: ProjPoint, net: NetOfConics | None = None, tol: float = 1e-6) -> Membership:
    """P is in W_F iff the pencil of net conics through P has three distinct
    reducible members."""
    _require_plane(F, RANK4_TYPES)
    net = net or net_of_conics(F)
    cub = restricted_delta(net, P)
    if cub is None:
        return Membership(P, True, P.exact, "P is a base point of the net of apolar conics")
    if P.exact:
        if cub.is_zero():
            return Membership(P, True, True, "the pencil through P lies inside Delta")
        if discriminant_binary(cub) == 0:
            return Membership(P, True, True, "the pencil through P has a repeated reducible conic")
        return Membership(P, False, True, "the pencil through P has three distinct reducible conics")
    scale = max(abs(complex(c)) for c in net.delta.terms.values())
    if max((abs(complex(c)) for c in cub.terms.values()), default=0.0) <= 1e-10 * scale:
        return Membership(P, True, False, "the pencil through P lies inside Delta (numerically)")
    rep = _numeric_repeated_root(cub, tol)
    why = "numerically repeated reducible conic" if rep else "three numerically distinct reducible conics"
    return Membership(P, rep, False, why)


# forbidden equations --------------------------------------------------------------------
def chart_discriminant(F: MPoly, chart: int = 0, net: NetOfConics | None = None) -> MPoly:
    """Unreduced discriminant of ``C_i^3 Delta`` restricted to the line of a
    symbolic point, after solving the line equation for net coordinate ``chart``."""
    net = net or net_of_conics(F)
    names = dual_names(F.names)
    X = sp.symbols("v0 v1 v2")
    C = [symbridge.to_sympy(c, X) for c in net.basis]
    a = sp.symbols("a0 a1 a2")
    s, t = sp.symbols("s t")
    i = chart
    j, k = [m for m in range(3) if m != i]
    vals = {i: -(C[j] * s + C[k] * t), j: C[i] * s, k: C[i] * t}
    D = symbridge.to_sympy(net.delta, a)
    expr = sp.expand(D.subs({a[m]: vals[m] for m in range(3)}, simultaneous=True))
    poly = sp.Poly(expr, s, t)
    c3, c2, c1, c0 = (poly.coeff_monomial(s ** (3 - m) * t**m) for m in range(4))
    disc = sp.expand(18 * c3 * c2 * c1 * c0 - 4 * c2**3 * c0 + c2**2 * c1**2 - 4 * c3 * c1**3 - 27 * c3**2 * c0**2)
    return symbridge.from_sympy(disc, X, names)


def _strip_factors(D, Ci, X):
    """Remove every factor D shares with Ci, then take the square-free part."""
    g = sp.gcd(D, Ci)
    while sp.Poly(g, *X).total_degree() > 0:
        D = sp.quo(D, g, *X)
        g = sp.gcd(D, Ci)
    return sp.sqf_part(D, *X)


def forbidden_equation_rank4(F: MPoly, basis: Sequence[MPoly] | None = None) -> LocusDescription:
    """Reduced defining polynomial of F_F for rank-4 cubics with a net of conics."""
    cls = _require_plane(F, (6, 7, 9))
    net = net_of_conics(F, basis)
    names = dual_names(F.names)
    X = sp.symbols("v0 v1 v2")
    total = sp.Integer(1)
    for i in range(3):
        D = symbridge.to_sympy(chart_discriminant(F, i, net), X)
        if D == 0:
            raise AssertionError("chart discriminant vanishes identically")
        Ci = symbridge.to_sympy(net.basis[i], X)
        total = sp.lcm(total, _strip_factors(D, Ci, X), *X)
    eq = symbridge.from_sympy(total, X, names)
    eq = symbridge.radical(eq)
    _, facs = symbridge.factor(eq)
    factors = sorted((f.primitive() for f, _ in facs if f.degree > 0), key=lambda f: (f.degree, str(f)))
    return LocusDescription(
        "forbidden",
        "hypersurface",
        equations=[eq],
        factors=factors,
        nvars=3,
        note=f"type ({cls.type}): lines of the net tangent to, or through a singular point of, Delta",
    )


# other types ----------------------------------------------------------------------------
def locus_rank5(F: MPoly) -> LocusDescription:
    """F_F of a conic plus a tangent line: the single point of the line."""
    _require_plane(F, (10,))
    _, facs = symbridge.factor_gaussian(F)
    lines = [f for f, _ in facs if f.degree == 1]
    if len(lines) != 1:
        raise AssertionError("type (10) cubic without a unique line component")
    ell = lines[0]
    P = ProjPoint([ell.coeff(tuple(int(i == j) for j in range(3))) for i in range(3)])
    return LocusDescription("forbidden", "points", points=[P], nvars=3, note="the line component of F")


def triangle_locus(F: MPoly) -> LocusDescription:
    """Three lines: F_F is the union of the dual lines of the three vertices."""
    cls = _require_plane(F, (5,))
    names = dual_names(F.names)
    factors = [MPoly.linear(list(p.coords), names) for p in cls.singular_points]
    eq = factors[0] * factors[1] * factors[2]
    if cls.singular_exact:
        eq = eq.primitive()
        factors = [f.primitive() for f in factors]
    return LocusDescription(
        "forbidden", "hypersurface", equations=[eq], factors=factors, exact=cls.singular_exact,
        certified=cls.singular_exact, nvars=3, note="type (5): monomial x*y*z after a change of coordinates",
    )


def fermat_points(F: MPoly) -> list[ProjPoint]:
    """The three summands of the unique decomposition: base points of the net."""
    _require_plane(F, (4,))
    pts = common_zeros(catalecticant(F, 2).kernel())
    if len(pts) != 3:
        raise AssertionError("net of a type (4) cubic should have three base points")
    return pts


@dataclass
class CuspNormalForm:
    """``F(M v) = G(v)`` with ``G = a v0^3 + v1^2 v2``."""

    change: list
    normal: MPoly

    def to_local(self, P: ProjPoint) -> ProjPoint:
        return ProjPoint(linalg.matvec(linalg.transpose(self.change), list(P.coords)), exact_=P.exact)

    def lift_linear(self, L: MPoly, names) -> MPoly:
        """A linear form in v rewritten in the original variables."""
        coeffs = [L.coeff(tuple(int(i == j) for j in range(3))) for i in range(3)]
        Minv_t = linalg.transpose(linalg.inverse(self.change))
        if any(isinstance(c, complex) for c in coeffs):
            A = np.array([[complex(x) for x in row] for row in Minv_t])
            return MPoly.linear(list(A @ np.array([complex(c) for c in coeffs])), names)
        return MPoly.linear(linalg.matvec(Minv_t, coeffs), names)


def cusp_normal_form(F: MPoly) -> CuspNormalForm:
    cls = _require_plane(F, (8,))
    B, f2, f3 = cls.change, cls.f2, cls.f3
    _, ell = squarefree_binary(f2)
    al, be = ell.coeff((1, 0)), ell.coeff((0, 1))
    if be != 0:
        R = [[Fraction(1), Fraction(0)], [-al / be, 1 / be]]
    else:
        R = [[Fraction(0), 1 / al], [Fraction(1), Fraction(0)]]
    g3 = f3.linear_substitution(R, ("n", "m"))
    a, b = g3.coeff((3, 0)), g3.coeff((2, 1))
    t = b / (3 * a)
    # n -> n - t m
    R2 = linalg.matmul(R, [[Fraction(1), -t], [Fraction(0), Fraction(1)]])
    A1 = [[R2[0][0], R2[0][1], Fraction(0)], [R2[1][0], R2[1][1], Fraction(0)], [Fraction(0), Fraction(0), Fraction(1)]]
    H = F.linear_substitution(linalg.matmul(B, A1), LOCAL_NAMES)
    c = H.coeff((0, 2, 1))
    e = H.coeff((1, 2, 0))
    g = H.coeff((0, 3, 0))
    # absorb the m^2 terms: w = c z + e n + g m
    A2 = [[Fraction(1), Fraction(0), Fraction(0)], [Fraction(0), Fraction(1), Fraction(0)], [-e / c, -g / c, 1 / c]]
    M = linalg.matmul(linalg.matmul(B, A1), A2)
    G = F.linear_substitution(M, LOCAL_NAMES)
    expect = MPoly(3, {(3, 0, 0): a, (0, 2, 1): Fraction(1)}, LOCAL_NAMES)
    if G != expect:
        raise AssertionError(f"cusp normal form failed: got {G}")
    return CuspNormalForm(M, G)


def cusp_locus(F: MPoly) -> LocusDescription:
    """W_F = W_{a n^3} union W_{m^2 w}, transported back to the original coordinates."""
    nf = cusp_normal_form(F)
    names = dual_names(F.names)
    Mt_inv = linalg.inverse(linalg.transpose(nf.change))

    def back(q):
        return ProjPoint(linalg.matvec(Mt_inv, q))

    apex = back([Fraction(1), Fraction(0), Fraction(0)])
    # q0 = 0 pulled back: (M^T p)_0 = sum_i M[i][0] p_i
    line = MPoly.linear([nf.change[i][0] for i in range(3)], names).primitive()
    hole = back([Fraction(0), Fraction(1), Fraction(0)])
    parts = [
        ((0, 1, 2), LocusDescription("waring", "points", points=[apex], nvars=3, note="W of the cube block")),
        ((0, 1, 2), LocusDescription("waring", "hypersurface", equations=[line], factors=[line], points=[hole],
                                     nvars=3, note="line of the m^2*w block minus the listed point")),
    ]
    return LocusDescription("waring", "union", parts=parts, nvars=3,
                            note=f"type (8): split normal form {nf.normal}")


def locus_by_type(F: MPoly) -> LocusDescription:
    from .apolarity import locus

    if F.nvars != 3:
        return locus(F)
    cls = classify_cubic(F)
    if cls.essential_count != 3:
        return locus(F)
    t = cls.type
    if t == 4:
        pts = fermat_points(F)
        ex = all(p.exact for p in pts)
        return LocusDescription("waring", "points", points=pts, exact=ex, certified=ex, nvars=3,
                                note="type (4): the unique decomposition")
    if t == 5:
        return triangle_locus(F)
    if t in (6, 7, 9):
        return forbidden_equation_rank4(F)
    if t == 8:
        return cusp_locus(F)
    return locus_rank5(F)


def cubic_membership(F: MPoly, P: ProjPoint, tol: float = 1e-8) -> Membership:
    from .apolarity import membership

    cls = classify_cubic(F)
    if F.nvars != 3 or cls.essential_count != 3:
        return membership(F, P)
    t = cls.type
    if t == 4:
        pts = fermat_points(F)
        hit = any(P == Q if (P.exact and Q.exact) else P.isclose(Q, tol) for Q in pts)
        return Membership(P, not hit, P.exact and all(Q.exact for Q in pts),
                          "one of the three summands" if hit else "not a summand of the unique decomposition")
    if t in RANK4_TYPES:
        return membership_rank4(F, P)
    if t == 8:
        from .splitforms import split_locus_membership

        nf = cusp_normal_form(F)
        m = split_locus_membership(nf.normal, nf.to_local(P))
        return Membership(P, m.forbidden, m.exact, m.reason)
    Q = locus_rank5(F).points[0]
    hit = P == Q if P.exact else P.isclose(Q, tol)
    return Membership(P, hit, P.exact, "the line component of F" if hit else "not the line component")


# decompositions --------------------------------------------------------------------------
def _line_through(p, q):
    return [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]


def _restrict_to_line(C: MPoly, ell: list, exact: bool) -> tuple[MPoly, list]:
    """C on the line ``ell . x = 0`` as a binary form, with the line's frame."""
    u = _kernel2(ell, exact)
    sub = [[u[0][i], u[1][i]] for i in range(3)]
    Cc = C if exact else _numeric(C)
    return Cc.linear_substitution(sub, ("s", "t")), u


def _points_on_line(C: MPoly, ell: list, exact: bool) -> list[ProjPoint]:
    g, u = _restrict_to_line(C, ell, exact)
    if g.is_zero():
        raise InfeasibleError("conic contains the line")
    out = []
    for r, mult in roots_binary(g):
        rs = list(r.coords) if r.exact else list(r.as_array())
        for _ in range(mult):
            if r.exact and exact:
                out.append(ProjPoint([rs[0] * u[0][i] + rs[1] * u[1][i] for i in range(3)]))
            else:
                vec = np.array([complex(rs[0]) * complex(u[0][i]) + complex(rs[1]) * complex(u[1][i]) for i in range(3)])
                out.append(ProjPoint(vec, exact_=False))
    return out


def pencil_base_points(C0: MPoly, C1: MPoly) -> list[ProjPoint]:
    """Base points of the pencil ``s C0 + t C1``, via one of its line pairs."""
    A0, A1 = quadric_matrix(C0), quadric_matrix(C1)
    s, t = MPoly.var(0, 2, ("s", "t")), MPoly.var(1, 2, ("s", "t"))
    det = linalg.det_generic([[s * A0[i][j] + t * A1[i][j] for j in range(3)] for i in range(3)])
    if det.is_zero():
        raise InfeasibleError("every conic of the pencil is singular")
    roots = [r for r, _ in roots_binary(det)]
    roots.sort(key=lambda r: not r.exact)
    r = roots[0]
    exact = r.exact
    if exact:
        D = C0 * r.coords[0] + C1 * r.coords[1]
        other = C1 if r.coords[0] != 0 else C0
        Dm = quadric_matrix(D)
        vert = linalg.nullspace(Dm)
        if len(vert) != 1:
            raise InfeasibleError("pencil contains a double line")
        vertex = vert[0]
    else:
        rc = r.as_array()
        D = _numeric(C0) * complex(rc[0]) + _numeric(C1) * complex(rc[1])
        other = C1 if abs(rc[0]) > 1e-8 else C0
        Dm = np.array([[complex(rc[0]) * complex(A0[i][j]) + complex(rc[1]) * complex(A1[i][j]) for j in range(3)] for i in range(3)])
        _, sv, vh = np.linalg.svd(Dm)
        if sv[1] <= 1e-10 * sv[0]:
            raise InfeasibleError("pencil contains a double line")
        vertex = list(np.conj(vh[2]))
    # the pair of lines meets a line avoiding the vertex in one point each
    away = next(e for e in ([1, 0, 0], [0, 1, 0], [0, 0, 1]) if abs(complex(sum(a * b for a, b in zip(e, vertex)))) > 1e-9)
    away = [Fraction(x) for x in away]
    hits = _points_on_line(D, away, exact) if exact else _points_on_line(D, [complex(x) for x in away], False)
    if len(dedupe(hits)) != 2:
        raise InfeasibleError("degenerate member is not a pair of distinct lines")
    out = []
    for h in hits:
        hc = list(h.coords) if (h.exact and exact) else list(h.as_array())
        ell = _line_through(vertex, hc)
        ex = exact and h.exact
        if not ex:
            ell = [complex(x) for x in ell]
        out.extend(_points_on_line(other, ell, ex))
    return out


def rank4_decompose_through(F: MPoly, P: ProjPoint, tol: float = 1e-9, net: NetOfConics | None = None) -> Decomposition:
    """Four-term decomposition whose apolar set is the base locus of the
    pencil of net conics through P."""
    net = net or net_of_conics(F)
    mem = membership_rank4(F, P, net)
    if mem.forbidden:
        raise ForbiddenPointError(f"{P} is forbidden for {F}: {mem.reason}", P)
    v = [C(list(P.coords)) for C in net.basis]
    u = linalg.nullspace([v])
    Q0 = net.basis[0] * u[0][0] + net.basis[1] * u[0][1] + net.basis[2] * u[0][2]
    Q1 = net.basis[0] * u[1][0] + net.basis[1] * u[1][1] + net.basis[2] * u[1][2]
    pts = dedupe(pencil_base_points(Q0, Q1))
    if len(pts) != 4:
        raise InfeasibleError(f"pencil through {P} has {len(pts)} base points, expected 4")
    # keep P itself exact
    pts = [P if (Q.isclose(P) or Q == P) else Q for Q in pts]
    if not any(Q == P for Q in pts):
        raise AssertionError("prescribed point missing from the pencil's base locus")
    return decomposition_from_points(F, pts, tol=tol)


def _random_point(rng: random.Random) -> ProjPoint:
    while True:
        c = [Fraction(rng.randint(-10, 10)) for _ in range(3)]
        if any(c):
            return ProjPoint(c)


def _pick_waring_point(F: MPoly, rng: random.Random) -> ProjPoint:
    for _ in range(MAX_RETRIES):
        P = _random_point(rng)
        if not cubic_membership(F, P).forbidden:
            return P
    raise InfeasibleError("no admissible point found")


def cubic_decompose(F: MPoly, through: Sequence[ProjPoint] = (), *, seed: int | None = None, tol: float = 1e-9) -> Decomposition:
    """A minimal decomposition of a ternary cubic, through prescribed forms
    where the type allows it."""
    cls = _require_plane(F)
    through = list(through)
    rng = random.Random(seed)
    for P in through:
        if not P.exact:
            raise ValueError("prescribed points for cubics must be exact")
    t = cls.type
    if t == 4:
        pts = fermat_points(F)
        for P in through:
            if not any(P == Q for Q in pts):
                raise ForbiddenPointError(f"{P} is not a summand of the unique decomposition of {F}", P)
        return decomposition_from_points(F, pts, tol=tol)
    if t in RANK4_TYPES:
        if len(through) > 1:
            raise UnsupportedFormError("rank-4 cubics accept at most one prescribed point")
        P = through[0] if through else _pick_waring_point(F, rng)
        return rank4_decompose_through(F, P, tol)
    if t == 8:
        from .splitforms import split_decompose

        nf = cusp_normal_form(F)
        D = split_decompose(nf.normal, through=[nf.to_local(P) for P in through], seed=seed, tol=tol)
        terms = [(c, nf.lift_linear(L, F.names)) for c, L in D.terms]
        out = Decomposition(terms, 3, D.exact, D.residual)
        if out.exact and out.reconstruct() != F:
            raise AssertionError("cusp decomposition failed to reconstruct F")
        return out
    return _rank5_decompose(F, through, rng, tol)


def _rank5_decompose(F: MPoly, through: list, rng: random.Random, tol: float) -> Decomposition:
    """Peel off ``lam L_P^3`` so that the rest is a rank-4 cubic with a net."""
    if len(through) > 1:
        raise UnsupportedFormError("rank-5 cubics accept at most one prescribed point")
    forb = locus_rank5(F).points[0]
    if through and through[0] == forb:
        raise ForbiddenPointError(f"{through[0]} is the line component of {F}", through[0])
    for _ in range(MAX_RETRIES):
        P = through[0] if through else _random_point(rng)
        if P == forb:
            continue
        lam = Fraction(rng.choice([k for k in range(-10, 11) if k]))
        L = P.linear_form(F.names)
        G = F - L**3 * lam
        if classify_cubic(G).type not in RANK4_TYPES:
            continue
        try:
            D = cubic_decompose(G, seed=rng.randint(0, 2**31), tol=tol)
        except InfeasibleError:
            continue
        terms = list(D.terms) + [(lam if D.exact else complex(lam), L if D.exact else _numeric(L))]
        out = Decomposition(terms, 3, D.exact, D.residual)
        if out.verify(F, tol):
            return out
    raise InfeasibleError("failed to find a rank-4 remainder")
