"""Monomials: closed-form rank, the forbidden hyperplane arrangement, and an
explicit complete-intersection decomposition through any admissible point."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod

from .apolarity import decomposition_from_points
from .polycore.apolar import apolar_act
from .polycore.mpoly import MPoly, check_form, dual_names
from .polycore.points import ProjPoint
from .polycore.scalars import I
from .results import Decomposition, ForbiddenPointError, LocusDescription, Membership

# roots of unity of these orders live in Q(i)
_EXACT_ROOTS = {1: [Fraction(1)], 2: [Fraction(1), Fraction(-1)], 4: [Fraction(1), I, Fraction(-1), -I]}


@dataclass
class MonomialData:
    exponents: tuple
    perm: list  # indices sorted by ascending exponent (stable)
    m: int  # last sorted position attaining the minimal exponent
    rank: int

    @property
    def minimal_indices(self) -> list[int]:
        """Original indices carrying the minimal exponent."""
        return sorted(self.perm[: self.m + 1])

    @property
    def d0(self) -> int:
        return self.exponents[self.perm[0]]


def monomial_data(M: MPoly) -> MonomialData:
    check_form(M)
    if not M.is_monomial():
        raise ValueError("expected a monomial")
    (e, _), = M.terms.items()
    if M.degree == 0:
        raise ValueError("constant input has no Waring rank")
    used = [i for i, k in enumerate(e) if k > 0]
    perm = sorted(used, key=lambda i: e[i])
    d0 = e[perm[0]]
    m = max(k for k, i in enumerate(perm) if e[i] == d0)
    num = prod(e[i] + 1 for i in used)
    if num % (d0 + 1):
        raise AssertionError("rank formula did not produce an integer")
    return MonomialData(tuple(e), perm, m, num // (d0 + 1))


def monomial_rank(M: MPoly) -> int:
    return monomial_data(M).rank


def _require_full_support(M: MPoly, data: MonomialData):
    if any(k == 0 for k in data.exponents):
        raise ValueError("monomial omits a variable: reduce to its essential variables first")


def monomial_forbidden(M: MPoly) -> LocusDescription:
    data = monomial_data(M)
    _require_full_support(M, data)
    n = M.nvars
    names = dual_names(M.names)
    factors = [MPoly.var(i, n, names) for i in data.minimal_indices]
    eq = MPoly.const(1, n, names)
    for f in factors:
        eq = eq * f
    return LocusDescription("forbidden", "hypersurface", equations=[eq], factors=factors, nvars=n)


def monomial_membership(M: MPoly, P: ProjPoint, tol: float = 1e-12) -> Membership:
    data = monomial_data(M)
    _require_full_support(M, data)
    for i in data.minimal_indices:
        v = P.coords[i]
        zero = (v == 0) if P.exact else abs(complex(v)) <= tol
        if zero:
            return Membership(P, True, P.exact, f"coordinate {i} ({dual_names(M.names)[i]}) vanishes")
    return Membership(P, False, P.exact, "no minimal-exponent coordinate vanishes")


def complete_intersection(M: MPoly, P: ProjPoint) -> tuple[int, list[MPoly]]:
    """Index ``k0`` playing the role of ``X_0`` and the forms ``H_i`` (i != k0)."""
    data = monomial_data(M)
    _require_full_support(M, data)
    mem = monomial_membership(M, P)
    if mem.forbidden:
        raise ForbiddenPointError(f"{P} is forbidden: {mem.reason}", P, monomial_forbidden(M).equations[0])
    n = M.nvars
    names = dual_names(M.names)
    k0 = data.minimal_indices[0]
    p = [v / P.coords[k0] for v in P.coords]
    X = [MPoly.var(i, n, names) for i in range(n)]
    hs = []
    for i in range(n):
        if i == k0:
            continue
        di = data.exponents[i]
        zero = (p[i] == 0) if P.exact else abs(complex(p[i])) <= 1e-12
        if not zero:
            H = X[i] ** (di + 1) - (X[k0] ** (di + 1)) * (p[i] ** (di + 1))
        else:
            H = X[i] ** (di + 1) - X[i] * X[k0] ** di
        hs.append(H)
    return k0, hs


def _roots_of_unity(order: int):
    if order in _EXACT_ROOTS:
        return _EXACT_ROOTS[order], True
    return [cmath.exp(2j * cmath.pi * j / order) for j in range(order)], False


def monomial_decompose_through_point(M: MPoly, P: ProjPoint, tol: float = 1e-9) -> tuple[list[ProjPoint], Decomposition]:
    """Rank-many apolar points (one of them P) cut out by the H_i, with coefficients."""
    data = monomial_data(M)
    k0, hs = complete_intersection(M, P)
    for H in hs:
        if not apolar_act(H, M).is_zero():
            raise AssertionError("constructed H does not annihilate the monomial")
    n = M.nvars
    p = [v / P.coords[k0] for v in P.coords]
    exact_ok = P.exact
    choices = []
    for i in range(n):
        if i == k0:
            choices.append([Fraction(1)])
            continue
        di = data.exponents[i]
        zero = (p[i] == 0) if P.exact else abs(complex(p[i])) <= 1e-12
        if not zero:
            roots, ex = _roots_of_unity(di + 1)
            vals = [r * p[i] for r in roots]
        else:
            roots, ex = _roots_of_unity(di)
            vals = list(roots) + [Fraction(0)]
        exact_ok = exact_ok and ex
        choices.append(vals)
    pts = [ProjPoint(list(c), exact_=exact_ok) for c in product(*choices)]
    if len(pts) != data.rank:
        raise AssertionError("point count differs from the rank formula")
    Mf = M if exact_ok else MPoly(M.nvars, {e: complex(c) for e, c in M.terms.items()}, M.names)
    D = decomposition_from_points(Mf, pts, tol=tol)
    return pts, D


def monomial_decompose(M: MPoly, tol: float = 1e-9) -> Decomposition:
    return monomial_decompose_through_point(M, ProjPoint([1] * M.nvars), tol=tol)[1]
