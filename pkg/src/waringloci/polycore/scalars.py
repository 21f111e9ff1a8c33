"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Exact values are kept in the smallest field that holds them, so a Gaussian
rational with zero imaginary part is always returned as a ``Fraction``.
Numeric values are plain Python ``complex``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class QQi:
    """Gaussian rational ``re + im*i`` with exact ``Fraction`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # construction helpers -------------------------------------------------
    @staticmethod
    def make(re, im):
        """Return ``re + im*i`` as a Fraction when ``im == 0``."""
        im = Fraction(im)
        if im == 0:
            return Fraction(re)
        return QQi(re, im)

    @staticmethod
    def _parts(v):
        if isinstance(v, QQi):
            return v.re, v.im
        if isinstance(v, (int, Fraction)):
            return Fraction(v), Fraction(0)
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, o):
        p = QQi._parts(o)
        if p is None:
            if isinstance(o, (complex, float)):
                return complex(self) + o
            return NotImplemented
        return QQi.make(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, o):
        p = QQi._parts(o)
        if p is None:
            if isinstance(o, (complex, float)):
                return complex(self) - o
            return NotImplemented
        return QQi.make(self.re - p[0], self.im - p[1])

    def __rsub__(self, o):
        p = QQi._parts(o)
        if p is None:
            if isinstance(o, (complex, float)):
                return o - complex(self)
            return NotImplemented
        return QQi.make(p[0] - self.re, p[1] - self.im)

    def __mul__(self, o):
        p = QQi._parts(o)
        if p is None:
            if isinstance(o, (complex, float)):
                return complex(self) * o
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return QQi.make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, o):
        p = QQi._parts(o)
        if p is None:
            if isinstance(o, (complex, float)):
                return complex(self) / o
            return NotImplemented
        c, d = p
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b = self.re, self.im
        return QQi.make((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, o):
        p = QQi._parts(o)
        if p is None:
            if isinstance(o, (complex, float)):
                return o / complex(self)
            return NotImplemented
        return QQi(p[0], p[1]) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** (-k))
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return QQi(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __eq__(self, o):
        p = QQi._parts(o)
        if p is None:
            if isinstance(o, complex):
                return complex(self) == o
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        return format_exact(self)


I = QQi(0, 1)


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction, QQi))


def exact(v):
    """Coerce an int/Fraction/QQi to its canonical exact representative."""
    if isinstance(v, QQi):
        return QQi.make(v.re, v.im)
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(v.numerator, v.denominator)
    raise TypeError(f"not an exact scalar: {v!r}")


def to_complex(v) -> complex:
    if isinstance(v, QQi):
        return complex(v)
    return complex(v)


def real_imag(v):
    """Exact (re, im) parts of an exact scalar."""
    if isinstance(v, QQi):
        return v.re, v.im
    return Fraction(v), Fraction(0)


def conjugate(v):
    if isinstance(v, QQi):
        return v.conjugate()
    if isinstance(v, complex):
        return v.conjugate()
    return v


def _fmt_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_exact(v) -> str:
    """Text form accepted back by the parser, e.g. ``-3/2``, ``1/2-3*i``."""
    re, im = real_imag(v)
    if im == 0:
        return _fmt_fraction(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{_fmt_fraction(im)}*i"
    if re == 0:
        return ims
    sep = "" if ims.startswith("-") else "+"
    return f"{_fmt_fraction(re)}{sep}{ims}"


def gaussian_denominator(v) -> int:
    """Common denominator of both parts."""
    re, im = real_imag(v)
    from math import lcm

    return lcm(re.denominator, im.denominator)
