"""One test per acceptance criterion; each records a PASS/FAIL line that is
repeated in the terminal summary."""

import itertools
import random
import re
import time
from fractions import Fraction
from math import prod

import numpy as np
import pytest

from conftest import P, binary_above_generic, pt, random_form, record
from waringloci import binaryforms as bf
from waringloci import cli, monomials, oracle, planecubics as pc, quadrics, splitforms as sf
from waringloci.apolarity import waring_rank
from waringloci.oracle import FitConfig, FitProblem
from waringloci.polycore import apolar_act
from waringloci.polycore.binary import roots_binary
from waringloci.polycore.points import ProjPoint
from waringloci.results import ForbiddenPointError

pytestmark = pytest.mark.acceptance

XYZ = ["x", "y", "z"]
DUAL = ["X", "Y", "Z"]


def C(text):
    return P(text, XYZ)


def D(text):
    return P(text, DUAL)


def proportional(A, B):
    e = next(iter(B.terms))
    return A.coeff(e) != 0 and A == B * (A.coeff(e) / B.coeff(e))


def grid(n, lo, hi):
    return [pt(*c) for c in itertools.product(range(lo, hi + 1), repeat=n) if any(c)]


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


# 1 ------------------------------------------------------------------------------------------
def test_criterion_01_monomial_example():
    with Timer() as t:
        M = P("x*y*z")
        pts, Dm = monomials.monomial_decompose_through_point(M, pt(1, 1, 1))
        want = {pt(1, s, u) for s in (1, -1) for u in (1, -1)}
        coeffs = {p: c for p, c in zip(Dm.points, Dm.coefficients)}
        ok = (set(pts) == want and Dm.exact and Dm.reconstruct() == M
              and all(coeffs[p] == Fraction(int(p.coords[1] * p.coords[2]), 24) for p in want))
    ok = ok and t.elapsed < 1
    assert record(1, ok, f"xyz = sum of 4 cubes through [1:+-1:+-1], coefficients +-1/24 ({t.elapsed:.2f}s)")


# 2 ------------------------------------------------------------------------------------------
MONOMIAL_CASES = {"x*y*z": 3, "x*y^2*z^3": 3, "x^2*y^2": 2, "x^2*y^2*z^2": 3}


def _expected_forbidden(M, p):
    (e, _), = M.terms.items()
    low = min(e)
    return prod(p.coords[i] for i in range(M.nvars) if e[i] == low) == 0


def test_criterion_02_monomial_theorem():
    rng = random.Random(2)
    problems = []
    with Timer() as t:
        for text, n in MONOMIAL_CASES.items():
            M = P(text)
            (e, _), = M.terms.items()
            if monomials.monomial_rank(M) * (min(e) + 1) != prod(k + 1 for k in e):
                problems.append(f"rank {text}")
            for p in grid(n, -2, 2):
                if monomials.monomial_membership(M, p).forbidden != _expected_forbidden(M, p):
                    problems.append(f"membership {text} {p}")
            done = 0
            while done < 20:
                c = [rng.randint(-4, 4) for _ in range(n)]
                if not any(c):
                    continue
                p = pt(*c)
                if _expected_forbidden(M, p):
                    continue
                _, hs = monomials.complete_intersection(M, p)
                if not all(apolar_act(H, M).is_zero() for H in hs):
                    problems.append(f"H_i {text} {p}")
                pts, Dm = monomials.monomial_decompose_through_point(M, p)
                if not (len(pts) == monomials.monomial_rank(M) and Dm.verify(M, 1e-9) and any(q.isclose(p) for q in pts)):
                    problems.append(f"decomposition {text} {p}")
                done += 1
    ok = not problems and t.elapsed < 10
    assert record(2, ok, f"rank formula, V(X0..Xm) on the {{-2..2}} grid, 20 decompositions per monomial "
                         f"({t.elapsed:.1f}s){' ' + str(problems[:3]) if problems else ''}")


# 3 ------------------------------------------------------------------------------------------
def test_criterion_03_quadrics():
    rng = random.Random(3)
    with Timer() as t:
        ok = quadrics.dual_quadric(P("x^2+y^2+z^2")) == D("X^2+Y^2+Z^2")
        Q = C("x^2-2*y*z")
        ok = ok and all(not quadrics.quadric_membership(Q, pt(*c)).forbidden for c in ((1, 1, 0), (1, 0, 1), (1, 1, 1)))
        A = quadrics.quadric_matrix(Q)
        count = 0
        while count < 100:
            a = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)]
            if not any(a):
                continue
            count += 1
            lc = quadrics.lambda_coefficient(A, a)
            ok = ok and quadrics.quadric_membership(Q, ProjPoint(a)).forbidden == (lc == 0)
    ok = ok and t.elapsed < 5
    assert record(3, ok, f"dual quadric, x+y, x+z, x+y+z in W, lambda criterion on 100 points ({t.elapsed:.1f}s)")


# 4 ------------------------------------------------------------------------------------------
def test_criterion_04_binary_forms():
    rng = random.Random(4)
    problems = []
    with Timer() as t:
        for d in (3, 4, 5):
            L = bf.binary_locus(P(f"x*y^{d - 1}"))
            if not (L.points == [pt(0, 1)] and L.exact):
                problems.append(f"xy^{d - 1}")
        if set(bf.binary_locus(P("x^3+y^3")).points) != {pt(1, 0), pt(0, 1)}:
            problems.append("x^3+y^3")
        quartics = 0
        while quartics < 5:
            F = random_form(rng, 2, 4)
            pair = bf.binary_apolar(F)
            if pair.rank != 3 or pair.case != "3-even":
                continue
            ev = bf.even_case_forbidden(pair)
            if not ev.generic:
                continue
            quartics += 1
            if not (len(ev.points) == 8 and ev.max_residual < 1e-8):
                problems.append(f"quartic {F}")
        for k in range(10):
            d = 4 + k % 4
            F = binary_above_generic(rng, d)
            pair = bf.binary_apolar(F)
            if pair.rank != bf.ceil_half(d) + 1:
                problems.append(f"rank of {F}")
                continue
            p = next(q for q in (pt(1, j) for j in range(1, 50)) if not bf.binary_membership(F, q).forbidden)
            Dm = bf.binary_decompose_greedy(F, [p], seed=k)
            if not (len(Dm) == pair.rank and Dm.verify(F, 1e-8) and Dm.contains_point(p)):
                problems.append(f"greedy {F}")
            bad = next(q for q, _ in roots_binary(pair.g1) if q.exact)
            try:
                bf.binary_decompose_greedy(F, [bad], seed=k)
                problems.append(f"forbidden accepted {F}")
            except ForbiddenPointError:
                pass
    ok = not problems and t.elapsed < 30
    assert record(4, ok, f"xy^(d-1), x^3+y^3, 5 generic quartics with 8 forbidden points, 10 greedy instances "
                         f"({t.elapsed:.1f}s){' ' + str(problems[:3]) if problems else ''}")


# 5 ------------------------------------------------------------------------------------------
def test_criterion_05_cubic_table():
    with Timer() as t:
        got = {k: (c.type, c.rank) for k, c in ((k, pc.classify_cubic(C(s))) for k, s in pc.NORMAL_FORMS.items())}
    ok = all(got[k] == (k, pc.TABLE_RANK[k]) for k in got) and t.elapsed < 5
    assert record(5, ok, f"10 normal forms classified with their table rank ({t.elapsed:.1f}s)")


# 6 ------------------------------------------------------------------------------------------
def test_criterion_06_delta_cubics():
    names = list(pc.NET_NAMES)
    with Timer() as t:
        n6 = pc.net_of_conics(C("x*(y*z+x^2)"), [D("X^2-6*Y*Z"), D("Y^2"), D("Z^2")])
        n7 = pc.net_of_conics(C("y^2*z-x^3-x*z^2"), [D("X*Y"), D("X^2-3*Z^2"), D("Y^2+X*Z")])
        ok = proportional(n6.delta, P("alpha*beta*gamma-9*alpha^3", names))
        ok = ok and proportional(n7.delta, P("3*alpha^2*beta-12*beta^2*gamma-gamma^3", names))
        for a in (-6, 1, 2, 3):
            n9 = pc.net_of_conics(C(f"x^3+y^3+z^3+{a}*x*y*z"),
                                  [D(f"{a}*X^2-6*Y*Z"), D(f"{a}*Y^2-6*X*Z"), D(f"{a}*Z^2-6*X*Y")])
            ref = P(f"{a**3 - 54}*alpha*beta*gamma-{9 * a}*(alpha^3+beta^3+gamma^3)", names)
            ok = ok and proportional(n9.delta, ref)
    ok = ok and t.elapsed < 5
    assert record(6, ok, f"Delta cubics of the three families up to a rational scalar ({t.elapsed:.1f}s)")


# 7 ------------------------------------------------------------------------------------------
NODAL = ("X^3-6*Y^2*Z+3*X*Z^2", "9*X^4*Y^2-4*Y^6-24*X*Y^4*Z-30*X^2*Y^2*Z^2+4*X^3*Z^3-3*Y^2*Z^4-12*X*Z^5")
SMOOTH = ("X^3+Y^3-5*X*Y*Z+Z^3",
          "27*X^6-58*X^3*Y^3+27*Y^6-18*X^4*Y*Z-18*X*Y^4*Z-109*X^2*Y^2*Z^2-58*X^3*Z^3-58*Y^3*Z^3-18*X*Y*Z^4+27*Z^6")


def test_criterion_07_closed_form_loci():
    cases = [
        ("x*(y*z+x^2)", D("X*Y*Z*(X^2-12*Y*Z)")),
        ("y^2*z-x^3-x*z^2", D(NODAL[0]) * D(NODAL[1])),
        ("x^3+y^3+z^3-6*x*y*z", D(SMOOTH[0]) * D(SMOOTH[1])),
    ]
    problems = []
    labels = []
    with Timer() as t:
        for text, ref in cases:
            F = C(text)
            labels.append(f"{text} (type {pc.classify_cubic(F).type})")
            if not proportional(pc.forbidden_equation_rank4(F).equations[0], ref):
                problems.append(f"equation {text}")
            net = pc.net_of_conics(F)
            for p in grid(3, -3, 3):
                if pc.membership_rank4(F, p, net).forbidden != (ref(list(p.coords)) == 0):
                    problems.append(f"{text} {p}")
    ok = not problems and t.elapsed < 120
    assert record(7, ok, f"membership = closed forms on {{-3..3}}^3 for {', '.join(labels)} "
                         f"({t.elapsed:.1f}s){' ' + str(problems[:3]) if problems else ''}")


# 8 ------------------------------------------------------------------------------------------
def test_criterion_08_rank_five_cubic():
    with Timer() as t:
        L = pc.locus_rank5(C("x*(x*y+z^2)"))
        side = pc.classify_cubic(C("y^2*z-x*z^2-x^3") + C("x^3"))
    ok = L.points == [pt(1, 0, 0)] and L.exact and side.type == 10 and t.elapsed < 1
    assert record(8, ok, f"F_F = {{[1:0:0]}} for x(xy+z^2); z(y^2-xz) is type (10) ({t.elapsed:.2f}s)")


# 9 ------------------------------------------------------------------------------------------
def test_criterion_09_reducible_family():
    with Timer() as t:
        F = P("x0^2*(x1^3+x2^3)")
        r, _ = sf.reducible_family(F)
        m = [sf.reducible_membership(F, pt(*c)) for c in ((1, 1, 0), (1, 0, 0), (0, 1, 1))]
    ok = (r == 6 and not m[0].forbidden and m[1].forbidden and m[2].forbidden
          and all(x.exact for x in m) and t.elapsed < 1)
    assert record(9, ok, f"x0^2(x1^3+x2^3): rank 6, [1:1:0] in W, [1:0:0] and [0:1:1] forbidden ({t.elapsed:.2f}s)")


# 10 -----------------------------------------------------------------------------------------
def test_criterion_10_split_forms():
    rng = random.Random(10)
    names = ["x", "y", "z", "u", "v", "w"]
    with Timer() as t:
        F = C("x^3-y^2*z")
        ok = sf.split_rank(F).rank == 4
        # W_F = W_{x^3} (the point [1:0:0]) union W_{y^2 z} (points [0:b:c] with c != 0)
        for p in grid(3, -2, 2):
            a, b, c = p.coords
            expect = (b == 0 and c == 0) or (a == 0 and c != 0)
            ok = ok and (not sf.split_locus_membership(F, p).forbidden) == expect
        pairs = 0
        while pairs < 10:
            d = rng.randint(3, 5)
            k1, k2 = rng.randint(2, 3), rng.randint(1, 3)
            e1 = [1] + [1] * (k1 - 1)
            for _ in range(d - k1):
                e1[rng.randrange(1, k1)] += 1
            e2 = [1] * k2
            for _ in range(d - k2):
                e2[rng.randrange(k2)] += 1
            if sum(e1) != d or sum(e2) != d:
                continue
            M1 = P("*".join(f"{names[i]}^{k}" for i, k in enumerate(e1)), names)
            M2 = P("*".join(f"{names[k1 + i]}^{k}" for i, k in enumerate(e2)), names)
            ok = ok and sf.length_additivity_check(M1, M2)
            pairs += 1
        try:
            sf.split_locus_membership(C("x^2-2*y*z"), pt(1, 1, 0))
            ok = False
        except ValueError:
            pass
    ok = ok and t.elapsed < 10
    assert record(10, ok, f"x^3-y^2z rank 4 with the union locus, 10 length identities, degree 2 rejected ({t.elapsed:.1f}s)")


# 11 -----------------------------------------------------------------------------------------
ADDITIVE = ["x^2*y^2+u^2*v^2", "x^3+y^3+z^3", "x^2*y^2+z^4", "x^3*y^3+z^6", "x^3*y^3+u^3*v^3"]


def test_criterion_11_additivity_certificates():
    with Timer() as t:
        reps = [sf.strassen_check(P(s)) for s in ADDITIVE]
    ok = all(r.certified and r.lower_bound == sum(r.block_ranks) for r in reps) and t.elapsed < 5
    assert record(11, ok, f"catalecticant bound = sum of block ranks on {len(reps)} split forms ({t.elapsed:.1f}s)")


# 12 -----------------------------------------------------------------------------------------
ORACLE_CASES = [
    "x*y*z", "x*y^2*z^3", "x^2*y^2", "x^2*y^2*z^2",
    "x^2+y^2+z^2", "x^2-2*y*z",
    "x*y^2", "x*y^3", "x*y^4", "x^3+y^3",
    "x^3", "x*y*(x+y)", "x^2*y", "x^3+y^3+z^3", "x*(y*z+x^2)", "x*y*z-(y+z)^3",
    "x^3-y^2*z", "x^3+y^3+z^3-6*x*y*z", "x*(x*y+z^2)",
    "x0^2*(x1^3+x2^3)", "x^2*y^2+u^2*v^2",
]
_ORACLE = {}


def _oracle_runs():
    if not _ORACLE:
        t0 = time.perf_counter()
        for text in ORACLE_CASES:
            F = P(text)
            res = waring_rank(F)
            assert res.certified
            r = res.rank
            up, _ = oracle.fit(F, r)
            # stopping once below 1e-4 does not change the verdict of the r-1 check
            down = oracle.fit(F, r - 1, FitConfig(stop_below=1e-4))[0] if r > 1 else np.inf
            _ORACLE[text] = (r, up, down)
        _ORACLE["elapsed"] = time.perf_counter() - t0
    return _ORACLE


def test_criterion_12_oracle_fits_and_gradients():
    runs = _oracle_runs()
    bad_up = [t for t in ORACLE_CASES if runs[t][1] >= 1e-9]
    rng = np.random.default_rng(12)
    worst = 0.0
    for k in range(20):
        nv = int(rng.integers(2, 4))
        d = int(rng.integers(2, 5))
        F = random_form(random.Random(k), nv, d)
        worst = max(worst, oracle.gradient_check(FitProblem.from_form(F, int(rng.integers(1, 4))), seed=k))
    assert not bad_up and worst < 1e-5 and runs["elapsed"] < 120, (bad_up, worst)


@pytest.mark.xfail(strict=True, reason="forms whose border rank is below their rank admit r-1 term "
                                       "approximations with arbitrarily small residual")
def test_criterion_12_oracle_coherence():
    runs = _oracle_runs()
    bad_up = [t for t in ORACLE_CASES if runs[t][1] >= 1e-9]
    close = [t for t in ORACLE_CASES if runs[t][2] <= 1e-4]
    ok = not bad_up and not close
    detail = (f"fit(F, r) < 1e-9 on all {len(ORACLE_CASES)} certified forms; fit(F, r-1) > 1e-4 fails on "
              f"{len(close)}: {', '.join(f'{t} ({runs[t][2]:.1e})' for t in close)} "
              f"(border rank below rank) ({runs['elapsed']:.0f}s)")
    assert record(12, ok, detail)


# 13 -----------------------------------------------------------------------------------------
def test_criterion_13_figure(tmp_path, capsys):
    out = tmp_path / "figure.svg"
    with Timer() as t:
        code = cli.main(["plot", "x*(y*z+x^2)", "--chart", "z=1", "--out", str(out)])
    capsys.readouterr()
    svg = out.read_text() if out.exists() else ""
    ids = sorted(set(re.findall(r'id="(locus-factor-\d+)"', svg)))
    ok = code == 0 and len(ids) == 4 and t.elapsed < 5
    assert record(13, ok, f"SVG with {len(ids)} locus components for x(yz+x^2) in the chart z=1 ({t.elapsed:.1f}s)")
