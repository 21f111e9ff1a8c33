"""Binary forms: Sylvester resultants, discriminants, square-freeness and roots.

A binary form of degree n is read as ``sum a_k b^k c^(n-k)`` in its two
variables (b, c); the projective root ``[p:q]`` means ``g(p, q) = 0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg, symbridge
from .mpoly import MPoly
from .points import ProjPoint, dedupe
from .scalars import exact, is_exact


def _check_binary(g: MPoly, what="form"):
    if g.nvars != 2:
        raise ValueError(f"binary {what} expected, got {g.nvars} variables")
    if g.is_zero():
        raise ValueError(f"zero polynomial is not a binary {what}")
    if not g.is_homogeneous():
        raise ValueError(f"binary {what} must be homogeneous")


def coeffs_desc(g: MPoly, n: int | None = None) -> list:
    """``[a_n, ..., a_0]`` with ``a_k`` the coefficient of ``b^k c^(n-k)``."""
    n = g.degree if n is None else n
    return [g.coeff((k, n - k)) for k in range(n, -1, -1)]


def from_coeffs_desc(coeffs: Sequence, names=None) -> MPoly:
    n = len(coeffs) - 1
    return MPoly(2, {(n - i, i): c for i, c in enumerate(coeffs)}, names)


def sylvester_matrix(f: Sequence, g: Sequence) -> list:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(f) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(g) + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant_binary(g: MPoly, h: MPoly):
    """Exact Sylvester resultant of two binary forms."""
    _check_binary(g)
    _check_binary(h)
    if not (g.is_exact() and h.is_exact()):
        raise ValueError("resultant needs exact coefficients")
    if g.degree == 0 and h.degree == 0:
        return Fraction(1)
    return linalg.det(sylvester_matrix(coeffs_desc(g), coeffs_desc(h)))


def _resultant_formal(f: list, g: list):
    if len(f) == 1 and len(g) == 1:
        return Fraction(1)
    return linalg.det(sylvester_matrix(f, g))


def discriminant_binary(g: MPoly):
    """Discriminant, normalized so that the cubic one is the classical
    ``18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2``. Zero iff a repeated root."""
    _check_binary(g)
    if not g.is_exact():
        raise ValueError("discriminant needs exact coefficients")
    n = g.degree
    if n <= 1:
        return Fraction(1)
    gb = coeffs_desc(g.diff(0), n - 1) if not g.diff(0).is_zero() else [Fraction(0)] * n
    gc = coeffs_desc(g.diff(1), n - 1) if not g.diff(1).is_zero() else [Fraction(0)] * n
    res = _resultant_formal(gb, gc)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res / (sign * Fraction(n) ** (n - 2))


def squarefree_binary(g: MPoly) -> tuple[bool, MPoly]:
    """(is square-free, product of the distinct factors of g)."""
    _check_binary(g)
    if g.degree <= 1:
        return True, g
    # Euler's relation makes gcd of the partials the repeated part of g
    rep = symbridge.gcd(g.diff(0), g.diff(1))
    if rep.degree <= 0:
        return True, g
    return False, symbridge.exact_div(g, rep).primitive()


def is_squarefree(g: MPoly) -> bool:
    if g.is_exact():
        return discriminant_binary(g) != 0
    return squarefree_binary(g)[0]


# numeric roots -----------------------------------------------------------------
def _newton_polish(coeffs: np.ndarray, t: complex, steps: int = 3) -> complex:
    p = np.poly1d(coeffs)
    dp = p.deriv()
    for _ in range(steps):
        d = dp(t)
        if d == 0:
            break
        step = p(t) / d
        if not np.isfinite(step):
            break
        t_new = t - step
        if abs(p(t_new)) >= abs(p(t)):
            break
        t = t_new
    return complex(t)


def roots_binary_numeric(g: MPoly, tol: float = 1e-12) -> list[ProjPoint]:
    """All projective roots with multiplicity, via companion eigenvalues."""
    _check_binary(g)
    n = g.degree
    c = np.array([complex(v) for v in coeffs_desc(g)], dtype=complex)
    scale = np.max(np.abs(c))
    # leading zeros in b -> roots at [1:0]
    k_inf = 0
    while k_inf < n and abs(c[k_inf]) <= 1e-14 * scale:
        k_inf += 1
    finite = np.roots(c[k_inf:]) if n - k_inf > 0 else np.array([], dtype=complex)
    finite = np.array([_newton_polish(c[k_inf:], t) for t in finite], dtype=complex)
    finite = _cluster(finite, tol)
    pts = [ProjPoint([t, 1], exact_=False) for t in finite]
    pts += [ProjPoint([1, 0], exact_=False)] * k_inf
    return pts


def _cluster(vals: np.ndarray, tol: float) -> list[complex]:
    """Replace groups of roots within ``tol`` of each other by their mean."""
    vals = list(vals)
    used = [False] * len(vals)
    out = []
    for i, v in enumerate(vals):
        if used[i]:
            continue
        group = [j for j in range(len(vals)) if not used[j] and abs(vals[j] - v) <= tol * max(1.0, abs(v))]
        for j in group:
            used[j] = True
        m = complex(np.mean([vals[j] for j in group]))
        out.extend([m] * len(group))
    return out


def roots_binary(g: MPoly, tol: float = 1e-10) -> list[tuple[ProjPoint, int]]:
    """Distinct roots with multiplicities; exact over Q(i) when the linear
    factors are, numeric for the rest."""
    _check_binary(g)
    out: list[tuple[ProjPoint, int]] = []
    if g.is_exact():
        _, facs = symbridge.factor_gaussian(g)
        for f, m in facs:
            if f.degree == 0:
                continue
            if f.degree == 1:
                a, b = f.coeff((1, 0)), f.coeff((0, 1))
                out.append((ProjPoint([-b, a]), m))
            else:
                for p in dedupe(roots_binary_numeric(f, 1e-9), 1e-9):
                    out.append((p, m))
        return out
    pts = roots_binary_numeric(g, max(tol, 1e-7))
    for p in dedupe(pts, max(tol, 1e-7)):
        mult = sum(1 for q in pts if q.isclose(p, max(tol, 1e-7)))
        out.append((p, mult))
    return out


def double_root_numeric(g: MPoly) -> ProjPoint:
    """Best numeric repeated root of a (nearly) non-square-free binary form:
    the critical point where |g| is smallest."""
    _check_binary(g)
    cands = roots_binary_numeric(g.diff(0), 1e-12) + roots_binary_numeric(g.diff(1), 1e-12)
    best, val = None, None
    gn = _to_numeric(g)
    norm = sum(abs(complex(c)) for c in g.terms.values())
    for p in cands:
        v = abs(gn(list(p.as_array()))) / norm
        if val is None or v < val:
            best, val = p, v
    return best


def _to_numeric(g: MPoly) -> MPoly:
    return MPoly(g.nvars, {e: complex(c) for e, c in g.terms.items()}, g.names)


def evaluate_numeric(g: MPoly, p: ProjPoint) -> complex:
    return complex(_to_numeric(g)(list(p.as_array())))


# interpolation --------------------------------------------------------------------
def interpolate_binary_form(func: Callable, degree: int, names=None) -> MPoly:
    """Recover the binary form ``D(a, b)`` of known degree from exact values
    ``func(1, t)`` at ``degree + 1`` integers ``t``.

    ``func`` must be homogeneous of the given degree in its arguments.
    """
    ts = [Fraction(t) for t in range(degree + 1)]
    V = [[t**k for k in range(degree + 1)] for t in ts]
    vals = [exact(func(Fraction(1), t)) for t in ts]
    sol = linalg.solve(V, vals)
    # p(t) = D(1, t) = sum coef(a^(deg-k) b^k) t^k
    return MPoly(2, {(degree - k, k): c for k, c in enumerate(sol)}, names)


def form_gcd_degree(g: MPoly, h: MPoly) -> int:
    return symbridge.gcd(g, h).degree


__all__ = [
    "resultant_binary",
    "discriminant_binary",
    "squarefree_binary",
    "roots_binary_numeric",
    "roots_binary",
    "interpolate_binary_form",
    "is_exact",
]
