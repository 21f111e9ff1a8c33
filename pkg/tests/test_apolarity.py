from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, forms, pt, rational_points
from waringloci import apolarity
from waringloci.apolarity import (
    apolar_slice,
    decomposition_from_points,
    essential_variables,
    rank_lower_bound,
    waring_rank,
)
from waringloci.polycore import linalg
from waringloci.polycore.mpoly import MPoly, coeff_vector, monomials_of_degree
from waringloci.results import InfeasibleError

XYZ = ("X", "Y", "Z")


def span_equal(A, B):
    basis = sorted({e for g in A + B for e in g.terms}, key=str)
    ra = linalg.rank([coeff_vector(g, basis) for g in A])
    rab = linalg.rank([coeff_vector(g, basis) for g in A + B])
    return ra == len(A) == len(B) == rab


# graded pieces ------------------------------------------------------------------------
def test_slice_of_xyz():
    assert apolar_slice(P("x*y*z"), 2).basis == [P(s, XYZ) for s in ("X^2", "Y^2", "Z^2")]


def test_slice_of_binary_cubes():
    assert apolar_slice(P("x^3+y^3"), 2).basis == [P("X*Y", ["X", "Y"])]


def test_net_of_conics_of_conic_plus_line():
    S = apolar_slice(P("x*(y*z+x^2)"), 2)
    assert S.dim == 3
    assert span_equal(S.basis, [P(s, XYZ) for s in ("X^2-6*Y*Z", "Y^2", "Z^2")])


# essential variables -----------------------------------------------------------------------
def test_two_essential_variables():
    F = P("x^2+x*y+0*z", ["x", "y", "z"])
    red = essential_variables(F)
    assert red.count == 2
    assert span_equal(red.kernel, [P("Z", XYZ)])


def test_xyz_is_concise():
    assert essential_variables(P("x*y*z")).count == 3


def test_single_essential_variable():
    red = essential_variables(P("(x+y)^3"))
    assert red.count == 1
    assert red.restricted.nvars == 1 and red.restricted.is_monomial() and red.restricted.degree == 3


@settings(max_examples=30, deadline=None)
@given(forms(2, 3), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_essential_reduction_drops_trailing_variables(G, m):
    # F(x, y, z) = G(l1, l2) with l1, l2 linear: at most two essential variables
    M = [[Fraction(m[0]), Fraction(m[1]), Fraction(m[2])], [Fraction(m[3]), Fraction(m[4]), Fraction(m[5])]]
    F = G.linear_substitution(M, ("x", "y", "z"))
    if F.is_zero():
        return
    red = essential_variables(F)
    assert red.count <= 2
    H = F.linear_substitution(red.lam_inv, ("a", "b", "c"))
    assert all(e[k] == 0 for e in H.terms for k in range(red.count, 3))


# apolarity lemma -------------------------------------------------------------------------
def test_xyz_from_four_points():
    pts = [pt(1, 1, 1), pt(1, -1, -1), pt(1, 1, -1), pt(1, -1, 1)]
    D = decomposition_from_points(P("x*y*z"), pts)
    assert D.exact and D.verify(P("x*y*z"))
    assert D.coefficients == [Fraction(1, 24), Fraction(1, 24), Fraction(-1, 24), Fraction(-1, 24)]


def test_quadric_from_three_points():
    F = P("x^2-2*y*z")
    D = decomposition_from_points(F, [pt(1, 1, 0), pt(1, 0, 1), pt(1, 1, 1)])
    assert D.coefficients == [1, 1, -1]
    assert D.verify(F)


def test_three_points_cannot_give_xyz():
    with pytest.raises(InfeasibleError):
        decomposition_from_points(P("x*y*z"), [pt(1, 1, 1), pt(1, -1, 1), pt(1, 1, -1)])


@settings(max_examples=30, deadline=None)
@given(st.lists(rational_points(3), min_size=2, max_size=4, unique=True),
       st.lists(st.integers(-4, 4).filter(bool), min_size=4, max_size=4),
       st.booleans())
def test_points_succeed_iff_in_span(pts, cs, perturb):
    d = 3
    F = MPoly.zero(3, ("x", "y", "z"))
    for c, p in zip(cs, pts):
        F = F + p.linear_form(("x", "y", "z")) ** d * c
    if perturb:
        F = F + P("x*y*z")
    if F.is_zero():
        return
    basis = monomials_of_degree(3, d)
    rows = [coeff_vector(p.linear_form(("x", "y", "z")) ** d, basis) for p in pts]
    in_span = linalg.rank(rows) == linalg.rank(rows + [coeff_vector(F, basis)])
    try:
        D = decomposition_from_points(F, pts)
        assert in_span and D.reconstruct() == F
    except InfeasibleError:
        assert not in_span


# ranks ------------------------------------------------------------------------------------
@pytest.mark.parametrize("text,bound", [("x*y*z", 3), ("x^2*y^2", 3), ("x^5", 1), ("x^2-2*y*z", 3)])
def test_lower_bound(text, bound):
    assert rank_lower_bound(P(text)) == bound


@pytest.mark.parametrize("text,rank", [("x*y*z", 4), ("x*(x*y+z^2)", 5), ("x^3+y^3+z^3", 3)])
def test_dispatched_rank(text, rank):
    res = waring_rank(P(text))
    assert res.rank == rank and res.certified


@settings(max_examples=25, deadline=None)
@given(st.one_of(forms(2, 4), forms(2, 5), forms(3, 2)))
def test_lower_bound_never_exceeds_rank(F):
    assert rank_lower_bound(F) <= waring_rank(F).rank


@settings(max_examples=15, deadline=None)
@given(st.one_of(forms(2, 4, coeffs=(-3, 3)), forms(3, 2)), st.integers(0, 100))
def test_dispatched_decomposition_is_minimal_and_exactish(F, seed):
    D = apolarity.decompose(F, seed=seed)
    assert len(D) == waring_rank(F).rank
    assert D.verify(F, 1e-8)


def test_unsupported_form_reports_bound():
    F = P("x^4+y^4+z^4+x*y*z*(x+y+z)")
    res = waring_rank(F)
    assert not res.certified
    assert res.rank == res.lower_bound == rank_lower_bound(F)


def test_decompose_lifts_from_essential_variables():
    F = P("(x+y)^3 + (x-y)^3 + 0*z", ["x", "y", "z"])
    D = apolarity.decompose(F, seed=0)
    assert len(D) == 2 and D.verify(F)
