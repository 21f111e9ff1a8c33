"""Sparse multivariate polynomials with exact or complex coefficients.

Primal forms (in ``S``) and dual operators (in ``T``) share this type; the
index ``i`` of ``x_i`` corresponds to ``X_i``. Terms are keyed by exponent
tuples and never store zero coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .scalars import QQi, exact, is_exact


def default_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("x",)
    if n == 2:
        return ("x", "y")
    if n == 3:
        return ("x", "y", "z")
    return tuple(f"x{i}" for i in range(n))


def dual_names(names: Sequence[str]) -> tuple[str, ...]:
    """Uppercase counterparts (``x -> X``); all-uppercase names map back down."""
    return tuple(s.upper() if s != s.upper() else s.lower() for s in names)


def _canon(c):
    if isinstance(c, (Rational, QQi)):
        return exact(c)
    return complex(c)


def monomials_of_degree(nvars: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``k`` in graded-lex descending order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def multinomial(exps: Sequence[int]) -> int:
    out = factorial(sum(exps))
    for e in exps:
        out //= factorial(e)
    return out


def _grlex_key(e):
    return (sum(e), e)


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms", "names", "_hash")

    def __init__(self, nvars: int, terms: Mapping | None = None, names: Sequence[str] | None = None):
        self.nvars = int(nvars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != self.nvars or min(e, default=0) < 0:
                    raise ValueError(f"bad exponent vector {e} for {self.nvars} variables")
                c = _canon(c)
                if c != 0:
                    clean[e] = c
        self._terms = clean
        if names is None:
            names = default_names(self.nvars)
        names = tuple(names)
        if len(names) != self.nvars:
            raise ValueError("names length does not match number of variables")
        self.names = names
        self._hash = None

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, nvars, names=None):
        return cls(nvars, {}, names)

    @classmethod
    def const(cls, c, nvars, names=None):
        return cls(nvars, {(0,) * nvars: c}, names)

    @classmethod
    def var(cls, i, nvars, names=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, names)

    @classmethod
    def monomial(cls, exps, coeff=1, names=None):
        return cls(len(exps), {tuple(exps): coeff}, names)

    @classmethod
    def linear(cls, coeffs: Sequence, names=None):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms, names)

    # basic properties -------------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        """Terms in canonical graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def coeff(self, exps) -> object:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self._terms.values())

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    def support_vars(self) -> set[int]:
        out = set()
        for e in self._terms:
            out.update(i for i, v in enumerate(e) if v)
        return out

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def with_names(self, names) -> "MPoly":
        return MPoly(self.nvars, self._terms, names)

    def dual(self) -> "MPoly":
        """Same polynomial, printed in the dual (uppercase) alphabet."""
        return self.with_names(dual_names(self.names))

    # equality -----------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction, QQi, complex, float)):
            return self == MPoly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"ambient mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        return MPoly.const(other, self.nvars, self.names)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return MPoly(self.nvars, t, self.names)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self._terms.items()}, self.names)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MPoly":
        return MPoly(self.nvars, {e: c * v for e, v in self._terms.items()}, self.names)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction, QQi, complex, float)):
                return self.scale(other)
            return NotImplemented
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MPoly(self.nvars, t, self.names)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, c):
        if isinstance(c, MPoly):
            return NotImplemented
        if is_exact(c):
            return self.scale(1 / exact(c))
        return self.scale(1 / complex(c))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = MPoly.const(1, self.nvars, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # calculus and evaluation ----------------------------------------------------
    def diff(self, i: int, times: int = 1) -> "MPoly":
        t = {}
        for e, c in self._terms.items():
            if e[i] < times:
                continue
            f = 1
            for j in range(times):
                f *= e[i] - j
            ne = list(e)
            ne[i] -= times
            t[tuple(ne)] = c * f
        return MPoly(self.nvars, t, self.names)

    def __call__(self, *values):
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = values[0]
        if len(values) != self.nvars:
            raise ValueError("wrong number of coordinates")
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(values, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    evaluate = __call__

    def linear_substitution(self, matrix: Sequence[Sequence], names=None) -> "MPoly":
        """Substitute ``x_i = sum_j matrix[i][j] * u_j``; result lives in the u's."""
        m = len(matrix[0]) if matrix else 0
        if len(matrix) != self.nvars:
            raise ValueError("substitution matrix must have one row per variable")
        forms = [MPoly.linear(list(row), names) for row in matrix]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = forms[i] ** k
            return cache[key]

        out = MPoly.zero(m, names)
        for e, c in self._terms.items():
            term = MPoly.const(c, m, names)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out if names is None else out.with_names(names)

    def restrict(self, indices: Sequence[int], names=None) -> "MPoly":
        """Drop to the listed variables; the others must not occur."""
        keep = list(indices)
        t = {}
        for e, c in self._terms.items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise ValueError("polynomial involves a dropped variable")
            t[tuple(e[i] for i in keep)] = c
        if names is None:
            names = tuple(self.names[i] for i in keep)
        return MPoly(len(keep), t, names)

    def embed(self, nvars: int, positions: Sequence[int], names=None) -> "MPoly":
        """Place variable ``j`` at index ``positions[j]`` of a larger ambient."""
        t = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for j, p in enumerate(positions):
                ne[p] = e[j]
            t[tuple(ne)] = c
        return MPoly(nvars, t, names)

    def permute(self, perm: Sequence[int], names=None) -> "MPoly":
        """New polynomial whose variable ``k`` is old variable ``perm[k]``."""
        t = {tuple(e[p] for p in perm): c for e, c in self._terms.items()}
        if names is None:
            names = tuple(self.names[p] for p in perm)
        return MPoly(self.nvars, t, names)

    # normal forms ---------------------------------------------------------------
    def primitive(self) -> "MPoly":
        """Content-1 integer form with positive leading coefficient (rational
        input), or leading coefficient 1 otherwise."""
        if self.is_zero():
            return self
        _, lc = self.leading()
        if self.is_rational():
            from math import gcd, lcm

            den = 1
            for c in self._terms.values():
                den = lcm(den, c.denominator)
            nums = [int(c * den) for c in self._terms.values()]
            g = 0
            for v in nums:
                g = gcd(g, v)
            f = Fraction(den, g)
            if lc < 0:
                f = -f
            return self.scale(f)
        return self.scale(1 / lc)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __repr__(self):
        from ..frontend import print_poly

        return f"MPoly({print_poly(self)!r})"

    def __str__(self):
        from ..frontend import print_poly

        return print_poly(self)


def linear_power_coeffs(point: Sequence, d: int, basis: Sequence[tuple[int, ...]]) -> list:
    """Coefficients of ``(sum p_i x_i)^d`` on a degree-``d`` monomial basis."""
    out = []
    for e in basis:
        v = multinomial(e)
        for p, k in zip(point, e):
            if k:
                v = v * p**k
        out.append(v)
    return out


def coeff_vector(F: MPoly, basis: Sequence[tuple[int, ...]]) -> list:
    return [F.coeff(e) for e in basis]


def from_coeff_vector(vec: Sequence, basis: Sequence[tuple[int, ...]], names=None) -> MPoly:
    nv = len(basis[0]) if basis else 0
    return MPoly(nv, {e: c for e, c in zip(basis, vec)}, names)


def binom_dim(nvars: int, k: int) -> int:
    return comb(nvars - 1 + k, k)


def check_form(F: MPoly, *, exact_only: bool = True) -> int:
    """Validate a nonzero homogeneous (exact) form and return its degree."""
    if F.is_zero():
        raise ValueError("zero polynomial is not a form")
    if not F.is_homogeneous():
        raise ValueError("form must be homogeneous")
    if exact_only and not F.is_exact():
        raise ValueError("form must have exact coefficients")
    return F.degree


def as_polys(items: Iterable) -> list[MPoly]:
    return list(items)
