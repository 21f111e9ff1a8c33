"""Sums of forms in disjoint sets of variables: block detection, rank
additivity and the union of block loci on the families where it is proven,
the reducible family x0^a (x1^b + ... + xn^b), and rank-preserving derivations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

import networkx as nx

from . import binaryforms, monomials
from .apolarity import apolar_slice, rank_lower_bound
from .polycore import linalg, symbridge
from .polycore.apolar import apolar_act, catalecticant
from .polycore.mpoly import MPoly, check_form, dual_names, monomials_of_degree
from .polycore.points import ProjPoint
from .results import (
    AdditivityReport,
    Decomposition,
    ForbiddenPointError,
    LocusDescription,
    Membership,
    RankResult,
    UnsupportedFormError,
)

MONO_ALL = "monomial-all-exps>=2"
MONO_ONE = "monomial-first-exp-1"
BINARY = "binary-non-max"
BINARY_MAX = "binary-max"
POWERSUM = "x0^a*powersum"
POWERSUM_X0 = "x0^a*powersum-with-x0"
CI = "x0^a*CI"
UNSUPPORTED = "unsupported"

# families of the derivation lemma, for which the locus union is proven
LEMMA_TAGS = (MONO_ALL, BINARY, POWERSUM, POWERSUM_X0, CI)


@dataclass
class Block:
    indices: tuple  # variable indices in the ambient ring
    form: MPoly  # restricted to those variables
    tag: str
    rank: int | None = None
    info: dict = field(default_factory=dict)

    def project(self, P: ProjPoint) -> ProjPoint:
        return ProjPoint([P.coords[i] for i in self.indices], exact_=P.exact)


@dataclass
class SplitDecomposition:
    form: MPoly
    blocks: list
    supported: bool
    theorem: str  # which result backs the locus union, or why not

    @property
    def tags(self) -> list[str]:
        return [b.tag for b in self.blocks]

    @property
    def block_ranks(self) -> list:
        return [b.rank for b in self.blocks]

    @property
    def rank(self) -> int | None:
        rs = self.block_ranks
        return None if any(r is None for r in rs) else sum(rs)


@dataclass
class Derivation:
    operator: MPoly  # linear dual form
    block: tuple
    rank_before: int
    rank_after: int


# pattern recognition --------------------------------------------------------------------
def _reducible_pattern(B: MPoly):
    """(x0 position, a, b, with_x0) when B = x0^a (sum c_i x_i^b [+ c x0^b]), else None."""
    k = B.nvars
    if k < 3:
        return None
    for j in range(k):
        exps = {}
        for e, c in B.terms.items():
            exps[e] = c
        a = min(e[j] for e in exps)
        if a == 0:
            continue
        others = [i for i in range(k) if i != j]
        pure = [e for e in exps if all(e[i] == 0 for i in others)]
        mixed = [e for e in exps if e not in pure]
        if len(pure) > 1 or len(mixed) != len(others):
            continue
        b = B.degree - a
        ok = True
        seen = set()
        for e in mixed:
            nz = [i for i in others if e[i]]
            if len(nz) != 1 or e[j] != a or e[nz[0]] != b:
                ok = False
                break
            seen.add(nz[0])
        if ok and seen == set(others):
            return j, a, b, bool(pure)
    return None


def apolar_generator_degrees(G: MPoly) -> list[int]:
    """Degrees of a minimal generating set of the apolar ideal of G."""
    d = check_form(G)
    n = G.nvars
    names = dual_names(G.names)
    gens: list[MPoly] = []
    degrees: list[int] = []
    for k in range(1, d + 2):
        basis = monomials_of_degree(n, k)
        span = []
        for g in gens:
            for e in monomials_of_degree(n, k - g.degree):
                h = g * MPoly(n, {e: 1}, names)
                span.append([h.coeff(m) for m in basis])
        r = linalg.rank(span) if span else 0
        for cand in apolar_slice(G, k).basis:
            v = [cand.coeff(m) for m in basis]
            if linalg.rank(span + [v]) > r:
                span.append(v)
                r += 1
                gens.append(cand)
                degrees.append(k)
    return degrees


def _ci_pattern(B: MPoly):
    """(x0 position, a, generator degrees) when B = x0^a G with G^perp a
    complete intersection generated in degrees >= a+1 and a >= 2."""
    k = B.nvars
    if k < 2:
        return None
    for j in range(k):
        a = min(e[j] for e in B.terms)
        if a < 2 or any(e[j] != a for e in B.terms):
            continue
        others = [i for i in range(k) if i != j]
        G = MPoly(k, {tuple(e[i] if i != j else 0 for i in range(k)): c for e, c in B.terms.items()}, B.names).restrict(others)
        if G.degree < 1:
            continue
        degs = apolar_generator_degrees(G)
        if len(degs) == len(others) and min(degs) >= a + 1:
            return j, a, degs
    return None


def classify_block(B: MPoly) -> tuple[str, int | None, dict]:
    """(family tag, rank when known, extra data) for a block in its own variables."""
    d = B.degree
    if B.is_monomial():
        (e, _), = B.terms.items()
        tag = MONO_ALL if min(e) >= 2 else MONO_ONE
        return tag, monomials.monomial_rank(B), {}
    if B.nvars == 2:
        r = binaryforms.binary_rank(B)
        return (BINARY if r < d else BINARY_MAX), r, {}
    pat = _reducible_pattern(B)
    if pat is not None:
        j, a, b, with_x0 = pat
        n = B.nvars - 1
        info = {"x0": j, "a": a, "b": b, "n": n}
        if b >= 3 and a + 1 >= b:
            return (POWERSUM_X0 if with_x0 else POWERSUM), (a + 1) * n, info
        return UNSUPPORTED, None, {**info, "why": "x0^a(...) outside a+1 >= b >= 3"}
    ci = _ci_pattern(B)
    if ci is not None:
        j, a, degs = ci
        return CI, prod(degs), {"x0": j, "a": a, "degrees": degs}
    return UNSUPPORTED, None, {}


def _blocks_of(F: MPoly) -> list[tuple]:
    g = nx.Graph()
    for e in F.terms:
        vs = [i for i, k in enumerate(e) if k]
        g.add_nodes_from(vs)
        g.add_edges_from((vs[0], v) for v in vs[1:])
    return sorted(tuple(sorted(c)) for c in nx.connected_components(g))


def split_detect(F: MPoly) -> SplitDecomposition:
    d = check_form(F)
    blocks = []
    for idx in _blocks_of(F):
        terms = {e: c for e, c in F.terms.items() if any(e[i] for i in idx)}
        B = MPoly(F.nvars, terms, F.names).restrict(list(idx))
        if d >= 3:
            tag, r, info = classify_block(B)
        else:
            tag, r, info = UNSUPPORTED, None, {"why": "degree below 3"}
        blocks.append(Block(idx, B, tag, r, info))
    tags = [b.tag for b in blocks]
    if d < 3:
        supported, why = False, "degree-2 sums violate the locus union (use the quadric module)"
    elif all(t in LEMMA_TAGS for t in tags):
        supported, why = True, "derivation lemma families"
    elif len(blocks) == 2 and all(t in (MONO_ALL, MONO_ONE) for t in tags):
        supported, why = True, "two monomials, one with an exponent equal to 1"
    elif len(blocks) == 1 and tags[0] in (MONO_ONE, BINARY_MAX):
        supported, why = True, "a single block handled by its own module"
    else:
        supported, why = False, "some block is outside the proven families"
    return SplitDecomposition(F, blocks, supported, why)


def _require_degree(F: MPoly):
    d = check_form(F)
    if d < 3:
        raise ValueError("split-form results need degree >= 3; degree 2 is handled by the quadric module "
                         "(x^2-2yz = (x+y)^2+(x+z)^2-(x+y+z)^2 breaks the union of block loci)")
    return d


# rank -------------------------------------------------------------------------------------
def split_rank(F: MPoly) -> RankResult:
    _require_degree(F)
    sd = split_detect(F)
    lb = rank_lower_bound(F)
    total = sd.rank
    if sd.supported:
        return RankResult(total, "split", True, lb, note=f"sum of block ranks {sd.block_ranks} ({sd.theorem})")
    if total is not None and total == lb:
        return RankResult(total, "split-catalecticant", True, lb, note="catalecticant bound meets the sum of block ranks")
    note = "unsupported family: lower bound only"
    if total is not None:
        note += f"; block decompositions give rank <= {total}"
    return RankResult(lb, "lower-bound", False, lb, note=note)


def strassen_check(F: MPoly) -> AdditivityReport:
    """Additivity certificate: catalecticant lower bound equal to the sum of block ranks."""
    d = check_form(F)
    sd = split_detect(F) if d >= 3 else None
    if sd is None:
        raise ValueError("strassen-check needs degree >= 3")
    lb = rank_lower_bound(F)
    total = sd.rank
    cert = total is not None and total == lb
    if cert:
        note = "rank_lower_bound equals the sum of block ranks: additivity certified"
    elif total is None:
        note = "some block rank is unknown"
    else:
        note = f"lower bound {lb} < sum {total}: additivity not certified by catalecticants"
    return AdditivityReport([b.indices for b in sd.blocks], sd.tags, sd.block_ranks, total, lb, cert, sd.supported, note)


# reducible family --------------------------------------------------------------------------
def reducible_rank(F: MPoly) -> int:
    """(a+1) n for x0^a (x1^b + ... + xn^b) or x0^a (x0^b + ...), b >= 2, a+1 >= b."""
    pat = _reducible_pattern(F)
    if pat is None:
        raise ValueError("form does not match x0^a(x1^b+...+xn^b) up to permutation and scaling")
    _, a, b, _ = pat
    n = F.nvars - 1
    if not (n >= 2 and b >= 2 and a + 1 >= b):
        raise ValueError("need n >= 2 and a+1 >= b >= 2")
    return (a + 1) * n


def _coordinate_lines(k: int, j: int) -> LocusDescription:
    P = ProjPoint([Fraction(int(i == j)) for i in range(k)])
    return LocusDescription("waring", "coordinate-lines", indices=[i for i in range(k) if i != j], points=[P], nvars=k,
                            note="coordinate lines through the listed point, minus that point")


def reducible_family(F: MPoly) -> tuple[int, LocusDescription]:
    pat = _reducible_pattern(F)
    if pat is None:
        raise ValueError("form does not match x0^a(x1^b+...+xn^b) up to permutation and scaling")
    j, a, b, _ = pat
    if b == 2:
        raise UnsupportedFormError("the locus is open for b = 2")
    if b < 3 or a + 1 < b:
        raise ValueError("need a+1 >= b >= 3")
    return reducible_rank(F), _coordinate_lines(F.nvars, j)


def _nonzero(v, exact: bool, tol: float = 1e-12) -> bool:
    return v != 0 if exact else abs(complex(v)) > tol


def reducible_membership(F: MPoly, P: ProjPoint) -> Membership:
    _, loc = reducible_family(F)
    j = next(i for i in range(F.nvars) if i not in loc.indices)
    nz = [i for i in loc.indices if _nonzero(P.coords[i], P.exact)]
    if len(nz) == 1:
        return Membership(P, False, P.exact, f"on the coordinate line through x{j} and x{nz[0]}")
    why = "the apex point itself" if not nz else "more than one nonzero coordinate off the apex"
    return Membership(P, True, P.exact, why)


# loci -----------------------------------------------------------------------------------------
def _block_locus(b: Block) -> LocusDescription:
    if b.tag in (MONO_ALL, MONO_ONE):
        if b.form.nvars == 1:
            return LocusDescription("waring", "points", points=[ProjPoint([1])], nvars=1)
        return monomials.monomial_forbidden(b.form)
    if b.tag == BINARY:
        return binaryforms.binary_locus(b.form)
    if b.tag in (POWERSUM, POWERSUM_X0):
        return _coordinate_lines(b.form.nvars, b.info["x0"])
    raise UnsupportedFormError(f"no locus description for a block tagged {b.tag}")


def _block_membership(b: Block, Q: ProjPoint) -> Membership:
    if b.tag in (MONO_ALL, MONO_ONE):
        if b.form.nvars == 1:
            return Membership(Q, False, Q.exact, "single-variable block")
        return monomials.monomial_membership(b.form, Q)
    if b.tag == BINARY:
        return binaryforms.binary_membership(b.form, Q)
    if b.tag in (POWERSUM, POWERSUM_X0):
        return reducible_membership(b.form, Q)
    raise UnsupportedFormError(f"locus of a block tagged {b.tag} is not known")


def _require_supported(sd: SplitDecomposition):
    if not sd.supported:
        raise UnsupportedFormError(f"no proven locus for this split form: {sd.theorem} (tags {sd.tags})")


def split_locus(F: MPoly) -> LocusDescription:
    """W_F as the union of the block loci, each inside its coordinate subspace."""
    _require_degree(F)
    sd = split_detect(F)
    _require_supported(sd)
    if len(sd.blocks) == 1 and sd.blocks[0].indices == tuple(range(F.nvars)):
        return _block_locus(sd.blocks[0])
    parts = [(b.indices, _block_locus(b)) for b in sd.blocks]
    exact = all(p.exact for _, p in parts)
    return LocusDescription("waring", "union", parts=parts, exact=exact, certified=all(p.certified for _, p in parts),
                            nvars=F.nvars, note=f"union of block loci ({sd.theorem})")


def split_locus_membership(F: MPoly, P: ProjPoint) -> Membership:
    _require_degree(F)
    if len(P) != F.nvars:
        raise ValueError("point dimension does not match the form")
    sd = split_detect(F)
    _require_supported(sd)
    used = {i for b in sd.blocks for i in b.indices}
    if any(_nonzero(P.coords[i], P.exact) for i in range(F.nvars) if i not in used):
        return Membership(P, True, P.exact, "nonzero coordinate on a variable F does not use")
    hit = [b for b in sd.blocks if any(_nonzero(P.coords[i], P.exact) for i in b.indices)]
    if len(hit) != 1:
        return Membership(P, True, P.exact, "supported on more than one block")
    b = hit[0]
    m = _block_membership(b, b.project(P))
    return Membership(P, m.forbidden, m.exact, f"block {list(b.indices)}: {m.reason}")


# derivations ------------------------------------------------------------------------------------
def _binary_derivation(B: MPoly) -> MPoly:
    pair = binaryforms.binary_apolar(B)
    d = B.degree
    if pair.rank >= d:
        raise ValueError("binary forms of maximal rank (L*M^(d-1)) are excluded")
    names = dual_names(B.names)
    if pair.d1 < pair.d2 and pair.g1_squarefree:
        for a, b in ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, 3)):
            if pair.g1(b, -a) != 0:
                return MPoly.linear([a, b], names)
        raise AssertionError("no linear form avoids the factors of g1")
    if pair.d1 < pair.d2:
        g = pair.g1
    else:
        pdisc = binaryforms.pencil_discriminant(pair)
        roots = [r for r, _ in binaryforms.roots_binary(pdisc) if r.exact]
        if not roots:
            raise UnsupportedFormError("the non-square-free pencil members are not defined over Q(i)")
        s, t = roots[0].coords
        g = pair.g1 * s + pair.g2 * t
    # g / l must stay non-square-free, otherwise the quotient ideal gets a
    # square-free generator of degree d1 - 1 and the rank drops
    _, facs = symbridge.factor_gaussian(g)
    repeated = sum(1 for f, m in facs if f.degree > 0 and m >= 2)
    for f, m in sorted(facs, key=lambda fm: -fm[1]):
        if f.degree != 1:
            continue
        if m >= 3 or repeated >= 2 or (m == 1 and repeated >= 1):
            return f.with_names(names)
    raise UnsupportedFormError("no linear factor of the apolar generator over Q(i) keeps the quotient non-square-free")


def _block_rank(B: MPoly, tag: str, info: dict) -> int:
    if B.is_monomial():
        return monomials.monomial_rank(B)
    if B.nvars == 2:
        return binaryforms.binary_rank(B)
    if tag in (POWERSUM, POWERSUM_X0):
        return reducible_rank(B)
    if tag == CI:
        j = info["x0"]
        others = [i for i in range(B.nvars) if i != j]
        G = MPoly(B.nvars, {tuple(e[i] if i != j else 0 for i in range(B.nvars)): c for e, c in B.terms.items()}, B.names)
        return prod(apolar_generator_degrees(G.restrict(others)))
    raise UnsupportedFormError(f"no rank formula for {tag}")


def find_rank_preserving_derivation(B: MPoly, tag: str | None = None) -> Derivation:
    """The derivation of the lemma for the block's family, with the rank equality checked."""
    check_form(B)
    found, r, info = classify_block(B)
    tag = tag or found
    if tag != found:
        raise ValueError(f"block is tagged {found}, not {tag}")
    names = dual_names(B.names)
    n = B.nvars
    if tag == MONO_ALL:
        (e, _), = B.terms.items()
        j = min(range(n), key=lambda i: e[i])
        D = MPoly.var(j, n, names)
    elif tag == BINARY:
        D = _binary_derivation(B)
    elif tag in (POWERSUM, POWERSUM_X0):
        j = info["x0"]
        D = MPoly.linear([0 if i == j else 1 for i in range(n)], names)
    elif tag == CI:
        D = MPoly.var(info["x0"], n, names)
    else:
        if tag == BINARY_MAX:
            raise ValueError("binary forms of maximal rank (L*M^(d-1)) are excluded")
        raise UnsupportedFormError(f"no rank-preserving derivation known for {tag}")
    image = apolar_act(D, B)
    if tag in (POWERSUM, POWERSUM_X0):
        after = reducible_rank(image)
    elif tag == CI:
        after = _block_rank(image, CI, info)
    elif tag == BINARY:
        after = binaryforms.binary_rank(image)
    else:
        after = monomials.monomial_rank(image)
    before = r
    if after != before:
        raise AssertionError(f"derivation {D} changed the rank from {before} to {after}")
    return Derivation(D, tuple(range(n)), before, after)


# Hilbert length -------------------------------------------------------------------------------
def hilbert_length(F: MPoly) -> int:
    """length T/F^perp, the sum of all catalecticant ranks."""
    d = check_form(F)
    return sum(catalecticant(F, k).rank for k in range(d + 1))


def length_additivity_check(M1: MPoly, M2: MPoly) -> bool:
    """length(M1 + M2) = length(M1) + length(M2) - 2 for monomials in disjoint variables."""
    if not (M1.is_monomial() and M2.is_monomial()):
        raise ValueError("both summands must be monomials")
    if M1.nvars != M2.nvars:
        raise ValueError("monomials must live in the same ring")
    d = check_form(M1)
    if check_form(M2) != d:
        raise ValueError("monomials must have the same degree")
    if d < 3:
        raise ValueError("degree >= 3 required")
    if M1.support_vars() & M2.support_vars():
        raise ValueError("monomials must use disjoint variables")
    (e, _), = M1.terms.items()
    if 1 not in e:
        raise ValueError("the first monomial must have an exponent equal to 1")
    return hilbert_length(M1 + M2) == hilbert_length(M1) + hilbert_length(M2) - 2


# decompositions --------------------------------------------------------------------------------
def _embed(D: Decomposition, idx: tuple, F: MPoly) -> list:
    out = []
    for c, L in D.terms:
        coeffs = [Fraction(0) if D.exact else 0j] * F.nvars
        for j, i in enumerate(idx):
            coeffs[i] = L.coeff(tuple(int(k == j) for k in range(L.nvars)))
        out.append((c, MPoly.linear(coeffs, F.names)))
    return out


def _powersum_decompose(b: Block, pts: list, rng: random.Random, tol: float) -> Decomposition:
    """Split the x0^(a+b) share among the lines {x0, xi}; each binary piece has rank a+1."""
    B = b.form
    j, a, bb = b.info["x0"], b.info["a"], b.info["b"]
    k = B.nvars
    others = [i for i in range(k) if i != j]
    d = a + bb
    target = B.coeff(tuple(d if i == j else 0 for i in range(k)))
    by_line = {i: [] for i in others}
    for Q in pts:
        nz = [i for i in others if _nonzero(Q.coords[i], Q.exact)]
        by_line[nz[0]].append(ProjPoint([Q.coords[j], Q.coords[nz[0]]]))
    pieces = {}
    for i in others:
        piece = {(e[j], e[i]): v for e, v in B.terms.items() if e[i]}
        pieces[i] = MPoly(2, piece, (B.names[j], B.names[i]))
    fixed = {}
    for i, lp in by_line.items():
        if len(lp) > 1:
            raise UnsupportedFormError("at most one prescribed point per coordinate line")
        if lp:
            if not lp[0].exact:
                raise ValueError("prescribed points must be exact")
            fixed[i] = _line_shares(pieces[i], d, lp[0], a)
            if not fixed[i]:
                raise ForbiddenPointError(f"no binary piece on the line of x{i} passes through the prescribed point")
    free = [i for i in others if i not in fixed]
    for _ in range(binaryforms.MAX_RETRIES):
        shares = {i: rng.choice(fixed[i]) for i in fixed}
        for i in free[:-1]:
            shares[i] = Fraction(rng.choice([s for s in range(-10, 11) if s]))
        rest = target - sum(shares.values(), Fraction(0))
        if free:
            shares[free[-1]] = rest
        elif rest != 0:
            continue
        terms, exact, res = [], True, 0.0
        try:
            for i in others:
                H = pieces[i] + MPoly(2, {(d, 0): shares[i]}, pieces[i].names)
                if binaryforms.binary_rank(H) != a + 1:
                    raise ValueError("piece has the wrong rank")
                D = _binary_piece(H, by_line[i], rng, tol)
                exact = exact and D.exact
                res = max(res, D.residual)
                terms.extend(_embed(D, (j, i), B))
        except (ValueError, ForbiddenPointError):
            continue
        return Decomposition(terms, B.degree, exact, res)
    raise UnsupportedFormError("failed to split the power-sum block into binary pieces")


def _line_shares(A: MPoly, d: int, P: ProjPoint, a: int) -> list:
    """Gaussian-rational c with P an apolar point of a rank-(a+1) ``A + c x0^d``."""
    import sympy as sp

    m = a + 1
    basis = monomials_of_degree(2, m)
    M0 = catalecticant(A, m).matrix
    M1 = catalecticant(MPoly(2, {(d, 0): 1}, A.names), m).matrix
    ev = [P.coords[0] ** e[0] * P.coords[1] ** e[1] for e in basis]
    c = sp.Symbol("c")
    conv = symbridge._to_sym_scalar
    rows = [[conv(x) + c * conv(y) for x, y in zip(r0, r1)] for r0, r1 in zip(M0, M1)] + [[conv(v) for v in ev]]
    M = sp.Matrix(rows)
    if M.rows == M.cols:
        conds = [sp.expand(M.det())]
    else:
        from itertools import combinations

        conds = [sp.expand(M.extract(list(rs), list(range(M.cols))).det()) for rs in combinations(range(M.rows), M.cols)]
    conds = [q for q in conds if q != 0]
    if not conds:
        cands = [Fraction(v) for v in range(-10, 11)]
    else:
        g = conds[0]
        for q in conds[1:]:
            g = sp.gcd(g, q)
        if sp.degree(g, c) < 1:
            return []
        cands = []
        for f, _ in sp.factor_list(g, c, extension=sp.I)[1]:
            if sp.degree(f, c) == 1:
                cands.append(symbridge.scalar_from_sympy(sp.solve(f, c)[0]))
    out = []
    for v in cands:
        H = A + MPoly(2, {(d, 0): v}, A.names)
        if binaryforms.binary_rank(H) == a + 1 and not binaryforms.binary_membership(H, P).forbidden:
            out.append(v)
    return out


def _binary_piece(H: MPoly, pts: list, rng: random.Random, tol: float) -> Decomposition:
    if not pts:
        return binaryforms.binary_decompose(H, seed=rng.randint(0, 2**31), tol=tol)[1]
    try:
        return binaryforms.binary_decompose_greedy(H, pts, seed=rng.randint(0, 2**31), tol=tol)
    except ForbiddenPointError:
        raise
    except ValueError:
        # too many prescribed points for the greedy bound: the decomposition is rigid
        _, D = binaryforms.binary_decompose(H, seed=rng.randint(0, 2**31), tol=tol)
        if not all(D.contains_point(P) for P in pts):
            raise ForbiddenPointError("prescribed points are not all in the rigid decomposition")
        return D


def _block_decompose(b: Block, pts: list, rng: random.Random, tol: float) -> Decomposition:
    B = b.form
    if b.tag in (MONO_ALL, MONO_ONE):
        if B.nvars == 1:
            return Decomposition([(B.coeff((B.degree,)), MPoly.linear([1], B.names))], B.degree, True)
        if len(pts) > 1:
            raise UnsupportedFormError("monomial blocks accept at most one prescribed point")
        if pts:
            return monomials.monomial_decompose_through_point(B, pts[0], tol=tol)[1]
        return monomials.monomial_decompose(B, tol=tol)
    if b.tag in (BINARY, BINARY_MAX):
        return _binary_piece(B, pts, rng, tol)
    if b.tag in (POWERSUM, POWERSUM_X0):
        return _powersum_decompose(b, pts, rng, tol)
    raise UnsupportedFormError(f"no explicit decomposition for a block tagged {b.tag}")


def split_decompose(F: MPoly, through: Sequence[ProjPoint] = (), *, seed: int | None = None, tol: float = 1e-9) -> Decomposition:
    """Concatenate minimal block decompositions; prescribed points go to their block."""
    _require_degree(F)
    sd = split_detect(F)
    if not sd.supported and split_rank(F).method != "split-catalecticant":
        raise UnsupportedFormError(f"cannot certify minimality: {sd.theorem}")
    rng = random.Random(seed)
    assigned = {b.indices: [] for b in sd.blocks}
    for P in through:
        if sd.supported:
            m = split_locus_membership(F, P)
            if m.forbidden:
                raise ForbiddenPointError(f"{P} is forbidden for {F}: {m.reason}", P)
        hit = [b for b in sd.blocks if any(_nonzero(P.coords[i], P.exact) for i in b.indices)]
        if len(hit) != 1:
            raise ForbiddenPointError(f"{P} is supported on several blocks", P)
        assigned[hit[0].indices].append(hit[0].project(P))
    terms, exact, res = [], True, 0.0
    for b in sd.blocks:
        D = _block_decompose(b, assigned[b.indices], rng, tol)
        exact = exact and D.exact
        res = max(res, D.residual)
        terms.extend(_embed(D, b.indices, F))
    if not exact:
        terms = [(complex(c), MPoly(L.nvars, {e: complex(v) for e, v in L.terms.items()}, L.names)) for c, L in terms]
    out = Decomposition(terms, F.degree, exact, res)
    if exact and out.reconstruct() != F:
        raise AssertionError("block decompositions do not add up to F")
    if not exact:
        out.residual = out.residual_against(F)
    return out
