"""Quadrics: rank from the symmetric matrix, congruence diagonalization, and
the forbidden locus as the dual quadric ``X adj(A) X^T``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polycore import linalg, symbridge
from .polycore.binary import roots_binary
from .polycore.mpoly import MPoly, check_form, dual_names
from .polycore.points import ProjPoint
from .results import Decomposition, ForbiddenPointError, LocusDescription, Membership


def _require_quadric(Q: MPoly):
    if check_form(Q) != 2:
        raise ValueError(f"expected a quadric, got degree {Q.degree}")


def quadric_matrix(Q: MPoly) -> list:
    """Symmetric ``A`` with ``Q(x) = x A x^T``."""
    _require_quadric(Q)
    n = Q.nvars
    A = [[Fraction(0)] * n for _ in range(n)]
    for e, c in Q.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            A[i][i] = c
        else:
            A[i][j] = c / 2
            A[j][i] = c / 2
    return A


@dataclass
class QuadricData:
    A: list
    rank: int
    dual: MPoly | None


def quadric_data(Q: MPoly) -> QuadricData:
    A = quadric_matrix(Q)
    r = linalg.rank(A)
    dual = dual_quadric(Q) if r == Q.nvars else None
    return QuadricData(A, r, dual)


def quadric_rank(Q: MPoly) -> int:
    return linalg.rank(quadric_matrix(Q))


def _q(A, w):
    return sum((w[i] * A[i][j] * w[j] for i in range(len(w)) for j in range(len(w))), Fraction(0))


def _pick_direction(A):
    n = len(A)
    for i in range(n):
        if A[i][i] != 0:
            return [Fraction(int(k == i)) for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] != 0:
                return [Fraction(int(k in (i, j))) for k in range(n)]
    return None


def _normalized_term(coef, v, names):
    piv = next(x for x in v if x != 0)
    return coef * piv * piv, MPoly.linear([x / piv for x in v], names)


def quadric_decompose(Q: MPoly, through: Sequence[ProjPoint] = ()) -> Decomposition:
    """``Q = sum a_i l_i^2`` with rank-many terms, via rank-one updates.

    Prescribed points are used first: for ``L_P = a.x`` the step direction is a
    solution of ``A w = a``, which needs ``a^T A^{-1} a != 0``.
    """
    A = quadric_matrix(Q)
    n = Q.nvars
    r = linalg.rank(A)
    terms = []
    for P in through:
        if not P.exact:
            raise ValueError("prescribed points for quadrics must be exact")
        a = list(P.coords)
        w = linalg.solve(A, a)
        qa = _q(A, w) if w is not None else 0
        if w is None or qa == 0:
            raise ForbiddenPointError(f"{P} is forbidden for {Q}", P, dual_quadric(Q) if r == n else None)
        Aw = linalg.matvec(A, w)
        terms.append(_normalized_term(1 / qa, Aw, Q.names))
        A = [[A[i][j] - Aw[i] * Aw[j] / qa for j in range(n)] for i in range(n)]
    while True:
        w = _pick_direction(A)
        if w is None:
            break
        qw = _q(A, w)
        Aw = linalg.matvec(A, w)
        terms.append(_normalized_term(1 / qw, Aw, Q.names))
        A = [[A[i][j] - Aw[i] * Aw[j] / qw for j in range(n)] for i in range(n)]
    D = Decomposition(terms, 2, True, 0.0)
    if len(D) != r or D.reconstruct() != Q:
        raise AssertionError("quadric decomposition failed to reconstruct the input")
    return D


def dual_quadric(Q: MPoly) -> MPoly:
    """``X adj(A_Q) X^T``, primitive with positive leading coefficient."""
    A = quadric_matrix(Q)
    n = Q.nvars
    if linalg.rank(A) < n:
        raise ValueError("quadric is rank-deficient: reduce to its essential variables first")
    adj = linalg.adjugate(A)
    terms: dict = {}
    for i in range(n):
        for j in range(n):
            e = tuple((k == i) + (k == j) for k in range(n))
            terms[e] = terms.get(e, 0) + adj[i][j]
    return MPoly(n, terms, dual_names(Q.names)).primitive()


def quadric_forbidden(Q: MPoly) -> LocusDescription:
    Qv = dual_quadric(Q)
    _, facs = symbridge.factor(Qv)
    factors = [f.primitive() for f, _ in facs if f.degree > 0]
    pts = []
    if Q.nvars == 2:
        pts = [p for p, _ in roots_binary(Qv)]
    return LocusDescription(
        "forbidden",
        "hypersurface",
        equations=[Qv],
        factors=factors,
        points=pts,
        exact=all(p.exact for p in pts),
        nvars=Q.nvars,
    )


def quadric_membership(Q: MPoly, P: ProjPoint, tol: float = 1e-9) -> Membership:
    Qv = dual_quadric(Q)
    v = Qv(list(P.coords))
    if P.exact:
        forbidden = v == 0
    else:
        scale = max(abs(complex(c)) for c in Qv.terms.values()) * max(abs(complex(x)) for x in P.coords) ** 2
        forbidden = abs(complex(v)) <= tol * scale
    why = "dual quadric vanishes" if forbidden else "dual quadric is nonzero"
    return Membership(P, forbidden, P.exact, why)


def lambda_coefficient(A: list, a: Sequence) -> Fraction:
    """Coefficient of ``lambda`` in ``det(A - lambda a a^T)`` (which is affine in lambda)."""
    n = len(A)
    B = [[A[i][j] - a[i] * a[j] for j in range(n)] for i in range(n)]
    return linalg.det(B) - linalg.det(A)
