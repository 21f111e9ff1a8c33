from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, pt, rational_points
from waringloci import monomials
from waringloci.apolarity import decomposition_from_points
from waringloci.polycore import apolar_act
from waringloci.polycore.mpoly import MPoly
from waringloci.polycore.points import distinct_points
from waringloci.results import ForbiddenPointError, InfeasibleError

XYZ = ["X", "Y", "Z"]


@pytest.mark.parametrize("text,rank,factors", [
    ("x*y*z", 4, ["X", "Y", "Z"]),
    ("x*y^2*z^3", 12, ["X"]),
    ("x^2*y^2", 3, ["X", "Y"]),
])
def test_rank_and_forbidden_arrangement(text, rank, factors):
    M = P(text)
    assert monomials.monomial_rank(M) == rank
    L = monomials.monomial_forbidden(M)
    names = [n.upper() for n in M.names]
    assert L.factors == [P(f, names) for f in factors]


def test_decomposition_through_all_ones():
    M = P("x*y*z")
    pts, D = monomials.monomial_decompose_through_point(M, pt(1, 1, 1))
    assert set(pts) == {pt(1, s, t) for s in (1, -1) for t in (1, -1)}
    assert D.exact and D.reconstruct() == M
    signs = {p: c for p, c in zip(D.points, D.coefficients)}
    assert signs[pt(1, 1, 1)] == Fraction(1, 24) and signs[pt(1, -1, 1)] == Fraction(-1, 24)


def test_point_on_coordinate_plane_is_forbidden():
    # [1:0:2] lies on V(Y); the four cubes listed alongside it do not even span xyz
    M = P("x*y*z")
    with pytest.raises(ForbiddenPointError):
        monomials.monomial_decompose_through_point(M, pt(1, 0, 2))
    with pytest.raises(InfeasibleError):
        decomposition_from_points(M, [pt(1, 0, 2), pt(1, 0, -2), pt(1, 1, 2), pt(1, 1, -2)])


def test_point_missing_x_is_forbidden():
    with pytest.raises(ForbiddenPointError):
        monomials.monomial_decompose_through_point(P("x*y*z"), pt(0, 1, 1))


exponents = st.lists(st.integers(1, 3), min_size=2, max_size=3)


def _mono(exps):
    names = ("x", "y", "z")[: len(exps)]
    return MPoly(len(exps), {tuple(exps): 1}, names)


@settings(max_examples=40, deadline=None)
@given(exponents)
def test_rank_formula(exps):
    d0 = min(exps)
    assert monomials.monomial_rank(_mono(exps)) * (d0 + 1) == prod(e + 1 for e in exps)


@settings(max_examples=40, deadline=None)
@given(exponents.flatmap(lambda e: st.tuples(st.just(e), rational_points(len(e), -3, 3))))
def test_decomposition_through_point(data):
    exps, p = data
    M = _mono(exps)
    mem = monomials.monomial_membership(M, p)
    if mem.forbidden:
        with pytest.raises(ForbiddenPointError):
            monomials.monomial_decompose_through_point(M, p)
        return
    _, hs = monomials.complete_intersection(M, p)
    assert all(apolar_act(H, M).is_zero() for H in hs)
    pts, D = monomials.monomial_decompose_through_point(M, p)
    assert len(pts) == monomials.monomial_rank(M)
    assert distinct_points(pts)
    assert D.verify(M, 1e-9)
    assert any(q.isclose(p) for q in pts)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 4), min_size=2, max_size=3))
def test_derivative_preserves_rank(exps):
    M = _mono(exps)
    d0 = min(exps)
    for i, e in enumerate(exps):
        if e == d0:
            D = MPoly.var(i, len(exps), [n.upper() for n in M.names])
            assert monomials.monomial_rank(apolar_act(D, M)) == monomials.monomial_rank(M)


def test_forbidden_indices_follow_input_order():
    L = monomials.monomial_forbidden(P("z^3*x*y^2", ["x", "y", "z"]))
    assert L.factors == [P("X", XYZ)]


def test_exponent_five_uses_numeric_roots():
    M = P("x*y^4")
    pts, D = monomials.monomial_decompose_through_point(M, pt(1, 2))
    assert not D.exact and len(pts) == 5 and D.verify(M, 1e-9)
