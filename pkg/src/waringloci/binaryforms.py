"""Binary forms: Sylvester's algorithm, the four-case locus theorem, the
balanced even case, and greedy decompositions through prescribed forms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .apolarity import decomposition_from_points
from .polycore import linalg, symbridge
from .polycore.apolar import apolar_act, catalecticant
from .polycore.binary import (
    discriminant_binary,
    evaluate_numeric,
    interpolate_binary_form,
    roots_binary,
    roots_binary_numeric,
    squarefree_binary,
)
from .polycore.mpoly import MPoly, check_form, dual_names, monomials_of_degree
from .polycore.points import ProjPoint, dedupe
from .results import Decomposition, ForbiddenPointError, InfeasibleError, LocusDescription, Membership

MAX_RETRIES = 200
# fresh samples tried when a numeric solve is badly conditioned
SOLVE_RETRIES = 8
LOCUS_TOL = 1e-8


def ceil_half(d: int) -> int:
    """``ceil((d+1)/2)``, the rank threshold of the locus theorem."""
    return d // 2 + 1


@dataclass
class BinaryApolarPair:
    form: MPoly
    g1: MPoly
    g2: MPoly
    d1: int
    d2: int
    g1_squarefree: bool
    rank: int
    case: str  # "1", "2", "3-odd", "3-even"

    @property
    def d(self) -> int:
        return self.form.degree

    @property
    def h(self) -> int:
        return self.d // 2


def _require_binary(F: MPoly) -> int:
    d = check_form(F)
    if F.nvars != 2:
        raise ValueError(f"binary form expected, got {F.nvars} variables")
    if d < 1:
        raise ValueError("binary form of degree >= 1 expected")
    return d


def _span_contains(vectors: list, v: list) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return linalg.rank(vectors + [v]) == linalg.rank(vectors)


def binary_apolar(F: MPoly) -> BinaryApolarPair:
    d = _require_binary(F)
    names = dual_names(F.names)
    for k in range(1, d + 2):
        if k == d + 1:
            kern = [MPoly(2, {e: 1}, names) for e in monomials_of_degree(2, k)]
        else:
            kern = catalecticant(F, k).kernel()
        if kern:
            break
    d1 = k
    d2 = d + 2 - d1
    if len(kern) >= 2 and d1 == d2:
        g1, g2 = kern[0], kern[1]
    else:
        g1 = kern[0]
        # g2 completes (F^perp)_{d2} modulo g1 * T_{d2 - d1}
        full = catalecticant(F, d2).kernel() if d2 <= d else [MPoly(2, {e: 1}, names) for e in monomials_of_degree(2, d2)]
        basis = monomials_of_degree(2, d2)
        mults = [g1 * MPoly(2, {e: 1}, names) for e in monomials_of_degree(2, d2 - d1)]
        span = [[m.coeff(e) for e in basis] for m in mults]
        g2 = None
        for cand in full:
            v = [cand.coeff(e) for e in basis]
            if not _span_contains(span, v):
                g2 = cand
                break
        if g2 is None:
            raise AssertionError("failed to find the second generator of the apolar ideal")
    sqf = squarefree_binary(g1)[0]
    rank = d1 if (sqf or d1 == d2) else d2
    c = ceil_half(d)
    if rank < c:
        case = "1"
    elif rank > c:
        case = "2"
    else:
        case = "3-odd" if d % 2 else "3-even"
    return BinaryApolarPair(F, g1, g2, d1, d2, sqf, rank, case)


def binary_rank(F: MPoly) -> int:
    return binary_apolar(F).rank


# loci ---------------------------------------------------------------------------------
def _distinct_roots(g: MPoly) -> list[ProjPoint]:
    return [p for p, _ in roots_binary(g)]


def pencil_discriminant(pair: BinaryApolarPair) -> MPoly:
    """``disc(a g1 + b g2)`` as a binary form of degree ``2(d1 - 1)`` in (a, b)."""
    g1, g2 = pair.g1, pair.g2
    deg = 2 * (pair.d1 - 1)

    def disc_at(a, b):
        return discriminant_binary(g1 * a + g2 * b)

    return interpolate_binary_form(disc_at, deg, ("a", "b"))


@dataclass
class EvenCaseLocus:
    points: list
    members: list  # (pencil parameter point, member form)
    exact: bool
    generic: bool
    max_residual: float
    note: str


def _member_roots(member: MPoly, exact: bool) -> tuple[list[ProjPoint], bool]:
    if exact:
        pts = _distinct_roots(member)
        return pts, all(p.exact for p in pts)
    pts = dedupe(roots_binary_numeric(member, 1e-6), 1e-6)
    return pts, False


def even_case_forbidden(pair: BinaryApolarPair) -> EvenCaseLocus:
    """Forbidden points in the balanced even case: all roots of the non
    square-free members of the pencil ``(F^perp)_{d1}``."""
    D = pencil_discriminant(pair)
    h = pair.h
    D_squarefree = discriminant_binary(D) != 0 if D.degree > 1 else True
    params = roots_binary(D)
    points: list[ProjPoint] = []
    members = []
    all_exact = True
    worst = 0.0
    generic = D_squarefree and len(params) == 2 * h
    for t, mult in params:
        if t.exact:
            member = pair.g1 * t.coords[0] + pair.g2 * t.coords[1]
            pts, ex = _member_roots(member, True)
        else:
            a, b = complex(t.coords[0]), complex(t.coords[1])
            member = MPoly(2, {e: complex(v) for e, v in (pair.g1 * a + pair.g2 * b).terms.items()}, pair.g1.names)
            pts, ex = _member_roots(member, False)
        all_exact = all_exact and ex
        members.append((t, member))
        if len(pts) != h:
            generic = False
        norm = sum(abs(complex(c)) for c in member.terms.values())
        for p in pts:
            r = abs(evaluate_numeric(member, p)) / (norm * max(1.0, float(np.max(np.abs(p.as_array())))) ** member.degree)
            worst = max(worst, r)
        points.extend(pts)
    distinct = dedupe(points, LOCUS_TOL)
    if len(distinct) != 2 * h * h:
        generic = False
    note = f"{len(distinct)} forbidden points; generic count 2h^2 = {2 * h * h}"
    if not generic:
        note += " (degenerate sample: genericity check failed)"
    return EvenCaseLocus(distinct, members, all_exact, generic, worst, note)


def binary_locus(F: MPoly, tol: float = LOCUS_TOL) -> LocusDescription:
    pair = binary_apolar(F)
    names = dual_names(F.names)
    if pair.case in ("1", "3-odd", "2"):
        pts = _distinct_roots(pair.g1)
        which = "forbidden" if pair.case == "2" else "waring"
        return LocusDescription(
            which,
            "points",
            equations=[pair.g1.primitive().with_names(names)],
            points=pts,
            exact=all(p.exact for p in pts),
            nvars=2,
            note=f"case {pair.case}: roots of the minimal generator",
        )
    ev = even_case_forbidden(pair)
    return LocusDescription(
        "forbidden",
        "points",
        points=ev.points,
        exact=ev.exact,
        certified=ev.generic or ev.exact,
        nvars=2,
        note=f"case 3-even: {ev.note}; max root residual {ev.max_residual:.2e}",
    )


def _vanishes(g: MPoly, P: ProjPoint, tol: float = 1e-9) -> bool:
    if P.exact and g.is_exact():
        return g(list(P.coords)) == 0
    norm = sum(abs(complex(c)) for c in g.terms.values())
    return abs(evaluate_numeric(g, P)) <= tol * norm * max(1.0, float(np.max(np.abs(P.as_array())))) ** g.degree


def member_through(pair: BinaryApolarPair, P: ProjPoint) -> MPoly:
    """The unique element (up to scalar) of ``(F^perp)_{d1}`` vanishing at P,
    balanced case."""
    a = pair.g1(list(P.coords))
    b = pair.g2(list(P.coords))
    return pair.g1 * b - pair.g2 * a


def binary_membership(F: MPoly, P: ProjPoint, tol: float = 1e-9) -> Membership:
    pair = binary_apolar(F)
    if len(P) != 2:
        raise ValueError("binary forms need points of P^1")
    on_g1 = _vanishes(pair.g1, P, tol)
    if pair.case in ("1", "3-odd"):
        return Membership(P, not on_g1, P.exact, "root of the minimal generator" if on_g1 else "not a root of the minimal generator")
    if pair.case == "2":
        return Membership(P, on_g1, P.exact, "root of the minimal generator" if on_g1 else "not a root of the minimal generator")
    g = member_through(pair, P)
    if P.exact:
        bad = discriminant_binary(g) != 0
        return Membership(P, not bad, True, "pencil member through P " + ("is square-free" if bad else "has a repeated factor"))
    ev = even_case_forbidden(pair)
    hit = any(P.isclose(Q, 1e-7) for Q in ev.points)
    return Membership(P, hit, False, "numeric comparison with the forbidden points")


# decompositions ------------------------------------------------------------------------
def _random_combination(basis: list, rng: random.Random):
    coeffs = [rng.randint(-10, 10) for _ in basis]
    if all(c == 0 for c in coeffs):
        coeffs[0] = 1
    out = basis[0] * coeffs[0]
    for c, b in zip(coeffs[1:], basis[1:]):
        out = out + b * c
    return out


def _numeric_squarefree(h: MPoly, sep: float = 1e-6) -> bool:
    pts = roots_binary_numeric(h, 0.0)
    for i in range(len(pts)):
        for j in range(i):
            if pts[i].isclose(pts[j], sep):
                return False
    return True


def _points_of(h: MPoly, prescribed: Sequence[ProjPoint] = ()) -> list[ProjPoint]:
    """Roots of a square-free h; prescribed roots are kept verbatim."""
    rest = h
    pts = list(prescribed)
    if h.is_exact() and all(P.exact for P in prescribed):
        for P in prescribed:
            lin = MPoly(2, {(1, 0): P.coords[1], (0, 1): -P.coords[0]}, h.names)
            rest = symbridge.exact_div(rest, lin)
        if rest.degree > 0:
            pts += [p for p, _ in roots_binary(rest)]
        return pts
    found = roots_binary_numeric(h, 0.0)
    for P in prescribed:
        j = min(range(len(found)), key=lambda k: float(np.max(np.abs(found[k].as_array() - P.as_array()))) if found[k].dim == P.dim else 1e9)
        found.pop(j)
    return pts + found


def _solve(F: MPoly, pts: list[ProjPoint], tol: float) -> Decomposition:
    if all(p.exact for p in pts):
        return decomposition_from_points(F, pts, tol)
    Fn = MPoly(F.nvars, {e: complex(c) for e, c in F.terms.items()}, F.names)
    pts = [p if not p.exact else p.to_numeric() for p in pts]
    return decomposition_from_points(Fn, pts, tol)


def _sample_squarefree(basis: list, rng: random.Random, seed) -> MPoly:
    exact = all(b.is_exact() for b in basis)
    for _ in range(MAX_RETRIES):
        h = _random_combination(basis, rng) if len(basis) > 1 else basis[0]
        if h.is_zero():
            continue
        ok = discriminant_binary(h) != 0 if exact else _numeric_squarefree(h)
        if ok:
            return h
        if len(basis) == 1:
            break
    raise RuntimeError(f"no square-free element found after {MAX_RETRIES} retries (seed={seed})")


def binary_decompose(F: MPoly, seed: int | None = None, tol: float = 1e-9) -> tuple[list[ProjPoint], Decomposition]:
    pair = binary_apolar(F)
    r = pair.rank
    rng = random.Random(seed)
    if r == pair.d1 and pair.g1_squarefree:
        h = pair.g1
    else:
        basis = catalecticant(F, r).kernel()
        return _sample_and_solve(F, basis, (), rng, seed, tol)
    pts = _points_of(h)
    D = _solve(F, pts, tol)
    return pts, D


def _sample_and_solve(F, basis, prescribed, rng, seed, tol):
    """A nearly repeated root makes the power sum system ill conditioned, so
    numeric solves get a few fresh samples before giving up."""
    err = None
    for _ in range(SOLVE_RETRIES):
        h = _sample_squarefree(basis, rng, seed)
        pts = _points_of(h, prescribed)
        try:
            return pts, _solve(F, pts, tol)
        except InfeasibleError as e:
            if all(p.exact for p in pts):
                raise
            err = e
    raise err


def _vanishing_subspace(basis: list, prescribed: Sequence[ProjPoint]) -> list:
    if not prescribed:
        return basis
    if all(P.exact for P in prescribed):
        M = [[b(list(P.coords)) for b in basis] for P in prescribed]
        ker = linalg.nullspace(M)
        out = []
        for v in ker:
            g = MPoly.zero(2, basis[0].names)
            for c, b in zip(v, basis):
                g = g + b * c
            out.append(g)
        return out
    M = np.array([[evaluate_numeric(b, P) for b in basis] for P in prescribed], dtype=complex)
    _, s, vh = np.linalg.svd(M)
    rank = int(np.sum(s > 1e-10 * max(1.0, s[0] if len(s) else 1.0)))
    out = []
    for v in vh[rank:].conj():
        g = MPoly.zero(2, basis[0].names)
        for c, b in zip(v, basis):
            g = g + MPoly(2, {e: complex(x) * c for e, x in b.terms.items()}, b.names)
        out.append(g)
    return out


def binary_decompose_greedy(F: MPoly, prescribed: Sequence[ProjPoint], seed: int | None = None, tol: float = 1e-9) -> Decomposition:
    """Minimal decomposition whose linear forms include the prescribed ones."""
    pair = binary_apolar(F)
    d, r = pair.d, pair.rank
    c = ceil_half(d)
    prescribed = list(prescribed)
    if len(prescribed) > max(r - c, 0):
        raise ValueError(f"at most r - ceil((d+1)/2) = {max(r - c, 0)} prescribed points allowed, got {len(prescribed)}")
    if len(dedupe(prescribed)) != len(prescribed):
        raise ValueError("prescribed points must be distinct")
    for P in prescribed:
        if len(P) != 2:
            raise ValueError("binary forms need points of P^1")
        m = binary_membership(F, P)
        if m.forbidden:
            cert = pair.g1 if pair.case == "2" else member_through(pair, P)
            raise ForbiddenPointError(f"{P} is forbidden for F: {m.reason} ({cert})", P, cert)
    rng = random.Random(seed)
    basis = catalecticant(F, r).kernel()
    sub = _vanishing_subspace(basis, prescribed)
    if not sub:
        raise ForbiddenPointError("no element of the apolar ideal vanishes at the prescribed points")
    return _sample_and_solve(F, sub, prescribed, rng, seed, tol)[1]


def dual_linear(P: ProjPoint, names=("X", "Y")) -> MPoly:
    """``L^v``: the dual linear form annihilating ``L_P``."""
    return MPoly(2, {(1, 0): P.coords[1], (0, 1): -P.coords[0]}, names)


__all__ = [
    "BinaryApolarPair",
    "binary_apolar",
    "binary_decompose",
    "binary_decompose_greedy",
    "binary_locus",
    "binary_membership",
    "binary_rank",
    "ceil_half",
    "dual_linear",
    "even_case_forbidden",
    "member_through",
    "pencil_discriminant",
]
