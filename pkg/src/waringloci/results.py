"""Result objects shared by the family modules, the dispatcher and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .polycore.mpoly import MPoly
from .polycore.points import ProjPoint


class ForbiddenPointError(ValueError):
    """A prescribed linear form lies in the forbidden locus."""

    def __init__(self, message: str, point: ProjPoint | None = None, certificate: MPoly | None = None):
        super().__init__(message)
        self.point = point
        self.certificate = certificate


class UnsupportedFormError(ValueError):
    """The form is outside every family with a proven answer."""


class InfeasibleError(ValueError):
    """A linear system has no solution (e.g. points not apolar to F)."""


@dataclass
class Decomposition:
    """``F = sum c_i L_i^d``; scalars are kept separate from the linear forms."""

    terms: list  # list of (coefficient, linear MPoly)
    degree: int
    exact: bool = True
    residual: float = 0.0

    def __len__(self):
        return len(self.terms)

    @property
    def coefficients(self) -> list:
        return [c for c, _ in self.terms]

    @property
    def linear_forms(self) -> list[MPoly]:
        return [L for _, L in self.terms]

    @property
    def points(self) -> list[ProjPoint]:
        out = []
        for _, L in self.terms:
            coords = [L.coeff(tuple(int(i == j) for j in range(L.nvars))) for i in range(L.nvars)]
            out.append(ProjPoint(coords, exact_=self.exact))
        return out

    def reconstruct(self) -> MPoly:
        nv = self.terms[0][1].nvars
        out = MPoly.zero(nv, self.terms[0][1].names)
        for c, L in self.terms:
            out = out + (L**self.degree) * c
        return out

    def residual_against(self, F: MPoly) -> float:
        diff = self.reconstruct() - F
        num = max((abs(complex(v)) for v in diff.terms.values()), default=0.0)
        den = max(abs(complex(v)) for v in F.terms.values())
        return num / den

    def verify(self, F: MPoly, tol: float = 1e-9) -> bool:
        if self.exact:
            return self.reconstruct() == F
        return self.residual_against(F) < tol

    def contains_point(self, P: ProjPoint, tol: float = 1e-8) -> bool:
        return any(P == Q if (P.exact and Q.exact) else P.isclose(Q, tol) for Q in self.points)


@dataclass
class ApolarSlice:
    degree: int
    basis: list  # dual MPoly, reduced row-echelon

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class LocusDescription:
    """Tagged description of a Waring or forbidden locus.

    ``describes`` is ``"forbidden"`` or ``"waring"``. Kinds:

    * ``hypersurface``: common zeros of ``equations``; ``factors`` lists the
      distinct irreducible factors when known,
    * ``points``: the finite set ``points``,
    * ``everything`` / ``empty``,
    * ``coordinate-lines``: points with at most one nonzero coordinate among
      ``indices``, minus ``points`` (the reducible family),
    * ``union``: ``parts`` is a list of (variable indices, sub-locus) inside
      coordinate subspaces (split forms).
    """

    describes: str
    kind: str
    equations: list = field(default_factory=list)
    factors: list = field(default_factory=list)
    points: list = field(default_factory=list)
    indices: list = field(default_factory=list)
    parts: list = field(default_factory=list)
    exact: bool = True
    certified: bool = True
    note: str = ""
    nvars: int = 0

    def describes_waring(self) -> bool:
        return self.describes == "waring"


@dataclass
class Membership:
    point: ProjPoint
    forbidden: bool
    exact: bool = True
    reason: str = ""

    @property
    def in_waring_locus(self) -> bool:
        return not self.forbidden


@dataclass
class RankResult:
    rank: int
    method: str
    certified: bool = True
    lower_bound: int = 0
    witness: Optional[Decomposition] = None
    note: str = ""


@dataclass
class CubicClassification:
    type: int
    rank: int
    singular_points: list = field(default_factory=list)
    singular_exact: bool = True
    f2: Optional[MPoly] = None
    f3: Optional[MPoly] = None
    aronhold_S: object = None
    aronhold_T: object = None
    certified: bool = True
    essential_count: int = 3
    change: Optional[list] = None  # columns map local coords to original ones

    @property
    def smooth(self) -> bool:
        return self.essential_count == 3 and not self.singular_points


@dataclass
class NetOfConics:
    basis: list  # three dual conics
    matrices: list  # symmetric 3x3 exact matrices
    delta: MPoly  # cubic in the net coordinates (alpha, beta, gamma)


@dataclass
class AdditivityReport:
    blocks: list
    tags: list
    block_ranks: list
    rank: Optional[int]
    lower_bound: int
    certified: bool
    supported: bool
    note: str = ""


def complex_array(values) -> np.ndarray:
    return np.array([complex(v) for v in values], dtype=complex)
