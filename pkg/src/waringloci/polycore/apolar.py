"""The apolarity action and catalecticant matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .mpoly import MPoly, dual_names, monomials_of_degree


def _falling(b: int, a: int) -> int:
    out = 1
    for j in range(a):
        out *= b - j
    return out


def apolar_act(g: MPoly, F: MPoly) -> MPoly:
    """Apply the dual polynomial ``g`` to ``F`` as a differential operator."""
    if g.nvars != F.nvars:
        raise ValueError(f"ambient mismatch: operator in {g.nvars} variables, form in {F.nvars}")
    out: dict = {}
    for a, c in g.terms.items():
        for b, f in F.terms.items():
            if any(ai > bi for ai, bi in zip(a, b)):
                continue
            w = 1
            for ai, bi in zip(a, b):
                w *= _falling(bi, ai)
            e = tuple(bi - ai for ai, bi in zip(a, b))
            out[e] = out.get(e, 0) + c * f * w
    return MPoly(F.nvars, out, F.names)


@dataclass
class CatalecticantMatrix:
    """Matrix of ``T_k -> S_{d-k}``; columns index ``T_k``, rows ``S_{d-k}``."""

    form: MPoly
    k: int
    source_basis: list
    target_basis: list
    matrix: list
    rank: int = field(init=False)

    def __post_init__(self):
        self.rank = linalg.rank(self.matrix) if self.matrix and self.matrix[0] else 0

    @property
    def d(self) -> int:
        return self.form.degree

    def kernel_vectors(self) -> list[list]:
        if not self.target_basis:
            return [list(r) for r in linalg.identity(len(self.source_basis))]
        return linalg.nullspace(self.matrix)

    def kernel(self) -> list[MPoly]:
        """Basis of ``(F^perp)_k`` in reduced row-echelon form, as dual forms."""
        names = dual_names(self.form.names)
        return [
            MPoly(self.form.nvars, dict(zip(self.source_basis, v)), names)
            for v in self.kernel_vectors()
        ]

    def shape(self):
        return len(self.target_basis), len(self.source_basis)


def catalecticant(F: MPoly, k: int) -> CatalecticantMatrix:
    if F.is_zero() or not F.is_homogeneous():
        raise ValueError("catalecticant needs a nonzero homogeneous form")
    d = F.degree
    if not 0 <= k <= d:
        raise ValueError(f"catalecticant degree {k} outside 0..{d}")
    n = F.nvars
    src = monomials_of_degree(n, k)
    tgt = monomials_of_degree(n, d - k)
    index = {e: i for i, e in enumerate(tgt)}
    M = [[Fraction(0)] * len(src) for _ in tgt]
    for j, a in enumerate(src):
        img = apolar_act(MPoly(n, {a: 1}), F)
        for e, c in img.terms.items():
            M[index[e]][j] = c
    return CatalecticantMatrix(F, k, src, tgt, M)


def annihilates(g: MPoly, F: MPoly) -> bool:
    return apolar_act(g, F).is_zero()
