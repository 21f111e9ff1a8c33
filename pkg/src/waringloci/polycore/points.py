"""Projective points with exact or numeric coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .mpoly import MPoly
from .scalars import QQi, exact, format_exact, is_exact

NUMERIC_ZERO = 1e-12


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """``[p_0 : ... : p_n]`` scaled so that the first nonzero coordinate is 1.

    A point ``P`` stands for the linear form ``L_P = sum p_i x_i``; a dual
    form ``g`` vanishes at ``P`` when ``g(p) = 0``.
    """

    coords: tuple
    exact: bool

    def __init__(self, coords: Sequence, exact_: bool | None = None):
        vals = list(coords)
        if not vals:
            raise ValueError("empty coordinate vector")
        if exact_ is None:
            exact_ = all(is_exact(v) for v in vals)
        if exact_:
            vals = [exact(v) for v in vals]
            piv = next((v for v in vals if v != 0), None)
            if piv is None:
                raise ValueError("all coordinates are zero")
            vals = [v / piv for v in vals]
        else:
            vals = [complex(v) for v in vals]
            scale = max(abs(v) for v in vals)
            if scale == 0:
                raise ValueError("all coordinates are zero")
            piv = next(v for v in vals if abs(v) > NUMERIC_ZERO * scale)
            vals = [v / piv for v in vals]
            # snap roundoff noise on what should be exact zeros and ones
            vals = [0j if abs(v) <= NUMERIC_ZERO * scale / abs(piv) else v for v in vals]
        object.__setattr__(self, "coords", tuple(vals))
        object.__setattr__(self, "exact", bool(exact_))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.exact and other.exact:
            return self.coords == other.coords
        return self.isclose(other)

    def __hash__(self):
        if self.exact:
            return hash(self.coords)
        return hash(len(self.coords))

    def isclose(self, other: "ProjPoint", tol: float = 1e-8) -> bool:
        if len(self) != len(other):
            return False
        a, b = self.as_array(), other.as_array()
        return bool(np.max(np.abs(a - b)) <= tol * max(1.0, np.max(np.abs(a))))

    def as_array(self) -> np.ndarray:
        return np.array([complex(v) for v in self.coords], dtype=complex)

    def to_numeric(self) -> "ProjPoint":
        return ProjPoint(self.as_array(), exact_=False)

    def is_rational(self) -> bool:
        return self.exact and all(isinstance(v, Fraction) for v in self.coords)

    def linear_form(self, names=None) -> MPoly:
        return MPoly.linear(list(self.coords), names)

    def support(self) -> list[int]:
        if self.exact:
            return [i for i, v in enumerate(self.coords) if v != 0]
        return [i for i, v in enumerate(self.coords) if abs(v) > 1e-10]

    def __str__(self):
        if self.exact:
            return "[" + ":".join(format_exact(v) for v in self.coords) + "]"
        return "[" + ":".join(_fmt_complex(v) for v in self.coords) + "]"

    def __repr__(self):
        return f"ProjPoint({self})"


def _fmt_imag(im: float) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im:.12g}*i"


def _fmt_complex(v: complex) -> str:
    re, im = v.real, v.imag
    if abs(im) < 1e-15:
        return f"{re:.12g}"
    if abs(re) < 1e-15:
        return _fmt_imag(im)
    sign = "+" if im >= 0 else "-"
    return f"{re:.12g}{sign}{_fmt_imag(abs(im))}"


def distinct_points(points: Sequence[ProjPoint], tol: float = 1e-8) -> bool:
    for i in range(len(points)):
        for j in range(i):
            if points[i] == points[j] if points[i].exact and points[j].exact else points[i].isclose(points[j], tol):
                return False
    return True


def dedupe(points: Sequence[ProjPoint], tol: float = 1e-8) -> list[ProjPoint]:
    out: list[ProjPoint] = []
    for p in points:
        if not any((p == q) if (p.exact and q.exact) else p.isclose(q, tol) for q in out):
            out.append(p)
    return out


__all__ = ["ProjPoint", "distinct_points", "dedupe", "QQi"]
