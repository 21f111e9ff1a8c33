from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, forms, sparse_polys, sym_apolar, sym_binary_disc, sym_catalecticant_rank, to_sym
from waringloci.polycore import apolar_act, catalecticant
from waringloci.polycore.binary import (
    discriminant_binary,
    resultant_binary,
    roots_binary_numeric,
    squarefree_binary,
)
from waringloci.polycore.mpoly import MPoly
from waringloci.polycore.points import ProjPoint
from waringloci.polycore.scalars import I

XY = ("X", "Y")
XYZ = ("X", "Y", "Z")


# apolarity action --------------------------------------------------------------------
def test_second_derivative_of_cube():
    assert apolar_act(P("X^2", ["X"]), P("x^3")) == P("6*x")


def test_square_kills_squarefree_monomial():
    assert apolar_act(P("X^2", XYZ), P("x*y*z")).is_zero()


def test_mixed_derivative():
    assert apolar_act(P("X*Y", XYZ), P("x*y*z")) == P("z", ["x", "y", "z"])


@settings(max_examples=60, deadline=None)
@given(sparse_polys(3, 2), sparse_polys(3, 2), sparse_polys(3, 5))
def test_action_is_compatible_with_products(g, h, F):
    F = F.with_names(("x", "y", "z"))
    assert apolar_act(g * h, F) == apolar_act(g, apolar_act(h, F))


@settings(max_examples=30, deadline=None)
@given(sparse_polys(3, 2), sparse_polys(3, 4))
def test_action_matches_symbolic_differentiation(g, F):
    F = F.with_names(("x", "y", "z"))
    ours = apolar_act(g, F)
    ref, xs = sym_apolar(g, F)
    assert sp.expand(to_sym(ours, xs)[0] - ref) == 0 if not ours.is_zero() else ref == 0


# catalecticants ----------------------------------------------------------------------
def test_first_catalecticant_of_xyz():
    C = catalecticant(P("x*y*z"), 1)
    assert C.rank == 3
    assert C.kernel() == []
    images = {apolar_act(MPoly.var(i, 3, XYZ), P("x*y*z")) for i in range(3)}
    assert images == {P("y*z", ["x", "y", "z"]), P("x*z", ["x", "y", "z"]), P("x*y", ["x", "y", "z"])}


def test_second_catalecticant_kernel_of_xyz():
    assert catalecticant(P("x*y*z"), 2).kernel() == [P(s, XYZ) for s in ("X^2", "Y^2", "Z^2")]


def test_hankel_kernel_of_sum_of_cubes():
    F = P("x^3+y^3")
    assert catalecticant(F, 2).kernel() == [P("X*Y", XY)]
    assert sym_catalecticant_rank(F, 2) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.integers(2, 5).flatmap(lambda d: forms(n, d))))
def test_catalecticant_duality(F):
    d = F.degree
    for k in range(d + 1):
        assert catalecticant(F, k).rank == catalecticant(F, d - k).rank


@settings(max_examples=20, deadline=None)
@given(forms(3, 4))
def test_catalecticant_rank_matches_reference(F):
    for k in (1, 2):
        assert catalecticant(F, k).rank == sym_catalecticant_rank(F, k)


# resultants and discriminants ----------------------------------------------------------
def test_discriminant_of_sum_of_cubes():
    assert discriminant_binary(P("b^3+c^3", ["b", "c"])) == -27


def test_discriminant_of_repeated_factor():
    assert discriminant_binary(P("b^2*c", ["b", "c"])) == 0


def test_resultant_of_coprime_forms():
    r = resultant_binary(P("X*Y", XY), P("X^3-Y^3", XY))
    assert r != 0
    t = sp.Symbol("t")
    assert abs(r) == abs(sp.resultant(t, t**3 - 1, t))


def test_discriminant_cubic_convention():
    # b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 abcd for a X^3 + b X^2 Y + c X Y^2 + d Y^3
    a, b, c, d = 2, -3, 5, 7
    g = MPoly(2, {(3, 0): a, (2, 1): b, (1, 2): c, (0, 3): d}, XY)
    assert discriminant_binary(g) == b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda d: forms(2, d, max_terms=4, coeffs=(-3, 3))))
def test_discriminant_detects_repeated_factors(g):
    sf, _ = squarefree_binary(g)
    assert (discriminant_binary(g) == 0) == (not sf)
    ref = sym_binary_disc(g)
    if ref is not None:
        assert (ref == 0) == (not sf)


# square-free parts ----------------------------------------------------------------------
def test_squarefree_true():
    assert squarefree_binary(P("X*Y", XY))[0]


def test_square_of_linear():
    sf, part = squarefree_binary(P("X^2", XY))
    assert not sf and part == P("X", XY)


def test_squarefree_part_strips_repeated_factor():
    sf, part = squarefree_binary(P("X*(X-Y)^2", XY))
    assert not sf
    assert part == P("X^2-X*Y", XY) or part == P("-X^2+X*Y", XY)


# numeric roots --------------------------------------------------------------------------
def _close_set(found, expected, tol=1e-12):
    left = list(expected)
    for q in found:
        k = next(i for i, e in enumerate(left) if q.isclose(e, tol))
        left.pop(k)
    return not left


def test_roots_of_sum_of_squares():
    roots = roots_binary_numeric(P("X^2+Y^2", XY), 1e-12)
    assert _close_set(roots, [ProjPoint([I, 1]), ProjPoint([-I, 1])])


def test_roots_with_multiplicity():
    roots = roots_binary_numeric(P("X^2*Y", XY))
    assert _close_set(roots, [ProjPoint([0, 1]), ProjPoint([0, 1]), ProjPoint([1, 0])], 1e-8)


def test_fourth_roots_of_unity():
    roots = roots_binary_numeric(P("X^4-Y^4", XY))
    assert _close_set(roots, [ProjPoint([u, 1]) for u in (1, I, -1, -I)], 1e-10)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda d: forms(2, d, max_terms=5)))
def test_root_count_and_residual(g):
    g = g.with_names(XY)
    tol = 1e-6
    roots = roots_binary_numeric(g, tol)
    assert len(roots) == g.degree
    norm = sum(abs(complex(c)) for c in g.terms.values())
    for r in roots:
        v = r.as_array()
        v = v / np.max(np.abs(v))
        val = sum(complex(c) * v[0] ** e[0] * v[1] ** e[1] for e, c in g.terms.items())
        assert abs(val) < tol * norm


def test_exact_points_normalize_to_first_nonzero():
    assert ProjPoint([Fraction(0), 2, 4]).coords == (0, 1, 2)
    with pytest.raises(ValueError):
        ProjPoint([0, 0])
