"""Apolar slices, essential variables, decompositions from apolar points, and
the top-level rank / locus / decomposition dispatcher."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .polycore import linalg
from .polycore.apolar import catalecticant
from .polycore.mpoly import MPoly, check_form, dual_names, linear_power_coeffs, monomials_of_degree
from .polycore.points import ProjPoint, distinct_points
from .results import (
    ApolarSlice,
    Decomposition,
    InfeasibleError,
    LocusDescription,
    Membership,
    RankResult,
    UnsupportedFormError,
)


def apolar_slice(F: MPoly, k: int) -> ApolarSlice:
    d = check_form(F)
    if not 0 <= k <= d + 1:
        raise ValueError(f"slice degree {k} outside 0..{d + 1}")
    if k == d + 1:
        names = dual_names(F.names)
        return ApolarSlice(k, [MPoly(F.nvars, {e: 1}, names) for e in monomials_of_degree(F.nvars, k)])
    return ApolarSlice(k, catalecticant(F, k).kernel())


# essential variables ------------------------------------------------------------
@dataclass
class EssentialReduction:
    """``w = Lam x``; ``F(x) = G(w_0, ..., w_{count-1})``."""

    form: MPoly
    count: int
    kernel: list  # basis of (F^perp)_1 as dual linear forms
    lam: list
    lam_inv: list
    restricted: MPoly

    @property
    def trivial(self) -> bool:
        return self.lam == linalg.identity(self.form.nvars)

    def in_subspace(self, P: ProjPoint, tol: float = 1e-9) -> bool:
        """Whether ``L_P`` is a combination of the essential forms."""
        for K in self.kernel:
            v = K(list(P.coords))
            if P.exact and v != 0:
                return False
            if not P.exact and abs(complex(v)) > tol:
                return False
        return True

    def to_essential(self, P: ProjPoint) -> ProjPoint:
        """Coordinates ``q`` of ``L_P = sum q_j w_j``; P must lie in the subspace."""
        if not self.in_subspace(P):
            raise ValueError(f"{P} is outside the essential subspace")
        T = linalg.transpose(self.lam_inv)
        if P.exact:
            q = linalg.matvec(T, list(P.coords))
            return ProjPoint(q[: self.count])
        q = np.array([[complex(v) for v in row] for row in T]) @ P.as_array()
        return ProjPoint(q[: self.count], exact_=False)

    def from_essential(self, Q: ProjPoint) -> ProjPoint:
        q = list(Q.coords) + [Fraction(0)] * (self.form.nvars - self.count)
        T = linalg.transpose(self.lam)
        if Q.exact:
            return ProjPoint(linalg.matvec(T, q))
        p = np.array([[complex(v) for v in row] for row in T]) @ np.array([complex(v) for v in q])
        return ProjPoint(p, exact_=False)

    def lift_linear(self, L: MPoly) -> MPoly:
        """A linear form in the w's rewritten in the original variables."""
        coeffs = [L.coeff(tuple(int(i == j) for j in range(L.nvars))) for i in range(L.nvars)]
        coeffs += [Fraction(0)] * (self.form.nvars - self.count)
        T = linalg.transpose(self.lam)
        if any(isinstance(c, complex) for c in coeffs):
            p = np.array([[complex(v) for v in row] for row in T]) @ np.array([complex(c) for c in coeffs])
            return MPoly.linear(list(p), self.form.names)
        return MPoly.linear(linalg.matvec(T, coeffs), self.form.names)

    def lift_decomposition(self, D: Decomposition) -> Decomposition:
        if self.trivial and self.count == self.form.nvars:
            return D
        return Decomposition([(c, self.lift_linear(L)) for c, L in D.terms], D.degree, D.exact, D.residual)

    def dual_in_original(self, g: MPoly) -> MPoly:
        """A dual form in the w-duals as a polynomial in the original duals.

        ``g(q)`` with ``q = (Lam^{-1})^T p`` restricted to the first ``count``
        coordinates.
        """
        n = self.form.nvars
        T = linalg.transpose(self.lam_inv)
        rows = [T[j] for j in range(self.count)]
        return g.linear_substitution(rows, dual_names(self.form.names))


def _essential_names(F: MPoly, rows: list, count: int) -> tuple:
    units = []
    for r in rows[:count]:
        nz = [i for i, v in enumerate(r) if v != 0]
        if len(nz) == 1 and r[nz[0]] == 1:
            units.append(nz[0])
        else:
            break
    if len(units) == count:
        return tuple(F.names[i] for i in units)
    if count == 1:
        return ("w",)
    return tuple(f"w{j}" for j in range(count))


def essential_variables(F: MPoly) -> EssentialReduction:
    check_form(F)
    n = F.nvars
    kernel = catalecticant(F, 1).kernel() if F.degree >= 1 else []
    kmat = [[K.coeff(tuple(int(i == j) for j in range(n))) for i in range(n)] for K in kernel]
    count = n - len(kernel)
    if kernel:
        ess = linalg.nullspace(kmat)
    else:
        ess = linalg.identity(n)
    lam = linalg.complete_to_basis(ess, n)
    lam_inv = linalg.inverse(lam)
    names = _essential_names(F, lam, count) + tuple(f"_t{j}" for j in range(n - count))
    G = F.linear_substitution(lam_inv, names)
    extra = set(range(count, n)) & G.support_vars()
    if extra:
        raise AssertionError("essential reduction left trailing variables in the form")
    G = G.restrict(list(range(count)))
    return EssentialReduction(F, count, kernel, lam, lam_inv, G)


# Apolarity Lemma ------------------------------------------------------------------
def decomposition_from_points(F: MPoly, pts: Sequence[ProjPoint], tol: float = 1e-9) -> Decomposition:
    """Solve ``F = sum c_i L_{P_i}^d``; exact when F and the points are exact."""
    d = check_form(F, exact_only=False)
    pts = list(pts)
    if not pts:
        raise InfeasibleError("empty point set")
    if any(len(P) != F.nvars for P in pts):
        raise ValueError("point dimension does not match the form")
    if not distinct_points(pts):
        raise ValueError("points must be pairwise distinct")
    basis = monomials_of_degree(F.nvars, d)
    exact_mode = F.is_exact() and all(P.exact for P in pts)
    if exact_mode:
        cols = [linear_power_coeffs(P.coords, d, basis) for P in pts]
        A = linalg.transpose(cols)
        b = [F.coeff(e) for e in basis]
        sol = linalg.solve(A, b)
        if sol is None:
            raise InfeasibleError(f"F is not in the span of the {len(pts)} powers: the points are not apolar to F")
        terms = [(c, P.linear_form(F.names)) for c, P in zip(sol, pts)]
        return Decomposition(terms, d, True, 0.0)
    # unit max-norm representatives keep the columns comparable in size
    vecs = [P.as_array() / np.max(np.abs(P.as_array())) for P in pts]
    cols = [linear_power_coeffs(list(v), d, basis) for v in vecs]
    A = np.array(cols, dtype=complex).T
    b = np.array([complex(F.coeff(e)) for e in basis], dtype=complex)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    res = float(np.max(np.abs(A @ sol - b)) / np.max(np.abs(b)))
    if res > tol:
        raise InfeasibleError(f"least-squares residual {res:.3g} exceeds {tol:g}: the points are not apolar to F")
    terms = [(complex(c), MPoly.linear(list(v), F.names)) for c, v in zip(sol, vecs)]
    return Decomposition(terms, d, False, res)


def rank_lower_bound(F: MPoly) -> int:
    d = check_form(F)
    return max(catalecticant(F, k).rank for k in range(d // 2 + 1))


def hilbert_function(F: MPoly) -> list[int]:
    d = check_form(F)
    half = [catalecticant(F, k).rank for k in range(d // 2 + 1)]
    return [half[min(k, d - k)] for k in range(d + 1)]


# dispatcher -----------------------------------------------------------------------
def _family(F: MPoly):
    """(tag, reduction) with tag one of quadric, monomial, binary, cubic, split, unsupported."""
    red = essential_variables(F)
    G = red.restricted
    d = G.degree
    if red.count == 1:
        return "monomial", red
    if d == 2:
        return "quadric", red
    if G.is_monomial():
        return "monomial", red
    if red.count == 2:
        return "binary", red
    if red.count == 3 and d == 3:
        return "cubic", red
    return "split", red


def waring_rank(F: MPoly) -> RankResult:
    from . import binaryforms, monomials, planecubics, quadrics, splitforms

    tag, red = _family(F)
    G = red.restricted
    lb = rank_lower_bound(F)
    if tag == "monomial":
        if red.count == 1:
            return RankResult(1, "monomial", True, lb)
        return RankResult(monomials.monomial_rank(G), "monomial", True, lb)
    if tag == "quadric":
        return RankResult(quadrics.quadric_rank(G), "quadric", True, lb)
    if tag == "binary":
        return RankResult(binaryforms.binary_rank(G), "binary", True, lb)
    if tag == "cubic":
        cls = planecubics.classify_cubic(G)
        return RankResult(cls.rank, "cubic-table", cls.certified, lb, note=f"type ({cls.type})")
    res = splitforms.split_rank(G)
    res.lower_bound = lb
    return res


def locus(F: MPoly, *, tol: float = 1e-8) -> LocusDescription:
    """Waring or forbidden locus, expressed in the essential coordinates."""
    from . import binaryforms, monomials, planecubics, quadrics, splitforms

    tag, red = _family(F)
    G = red.restricted
    if tag == "monomial":
        if red.count == 1:
            return LocusDescription("waring", "points", points=[ProjPoint([1])], nvars=1,
                                    note="single essential variable: W_F is the point [1]")
        return monomials.monomial_forbidden(G)
    if tag == "quadric":
        return quadrics.quadric_forbidden(G)
    if tag == "binary":
        return binaryforms.binary_locus(G, tol=tol)
    if tag == "cubic":
        return planecubics.locus_by_type(G)
    return splitforms.split_locus(G)


def membership(F: MPoly, P: ProjPoint, *, tol: float = 1e-8) -> Membership:
    """Whether ``L_P`` appears in some minimal decomposition of F."""
    from . import binaryforms, monomials, planecubics, quadrics, splitforms

    if len(P) != F.nvars:
        raise ValueError("point dimension does not match the form")
    tag, red = _family(F)
    if not red.in_subspace(P):
        return Membership(P, True, P.exact, "outside the essential subspace")
    Q = red.to_essential(P)
    G = red.restricted
    if tag == "monomial":
        if red.count == 1:
            m = Membership(Q, False, Q.exact, "single essential variable")
        else:
            m = monomials.monomial_membership(G, Q)
    elif tag == "quadric":
        m = quadrics.quadric_membership(G, Q)
    elif tag == "binary":
        m = binaryforms.binary_membership(G, Q)
    elif tag == "cubic":
        m = planecubics.cubic_membership(G, Q)
    else:
        m = splitforms.split_locus_membership(G, Q)
    return Membership(P, m.forbidden, m.exact, m.reason)


def decompose(F: MPoly, through: Sequence[ProjPoint] = (), *, seed: int | None = None, tol: float = 1e-9) -> Decomposition:
    """A minimal decomposition, containing the prescribed linear forms when given."""
    from . import binaryforms, monomials, planecubics, quadrics, splitforms

    tag, red = _family(F)
    G = red.restricted
    through = list(through)
    for P in through:
        if len(P) != F.nvars:
            raise ValueError("point dimension does not match the form")
    from .results import ForbiddenPointError

    for P in through:
        if not red.in_subspace(P):
            raise ForbiddenPointError(f"{P} is outside the essential subspace of F", P)
    Qs = [red.to_essential(P) for P in through]
    if tag == "monomial":
        if red.count == 1:
            c = G.coeff((G.degree,))
            D = Decomposition([(c, MPoly.linear([1], G.names))], G.degree, True)
        elif len(Qs) > 1:
            raise UnsupportedFormError("monomials accept at most one prescribed point")
        elif Qs:
            _, D = monomials.monomial_decompose_through_point(G, Qs[0], tol=tol)
        else:
            D = monomials.monomial_decompose(G, tol=tol)
    elif tag == "quadric":
        D = quadrics.quadric_decompose(G, through=Qs)
    elif tag == "binary":
        if Qs:
            D = binaryforms.binary_decompose_greedy(G, Qs, seed=seed, tol=tol)
        else:
            D = binaryforms.binary_decompose(G, seed=seed, tol=tol)[1]
    elif tag == "cubic":
        D = planecubics.cubic_decompose(G, through=Qs, seed=seed, tol=tol)
    else:
        D = splitforms.split_decompose(G, through=Qs, seed=seed, tol=tol)
    return red.lift_decomposition(D)
