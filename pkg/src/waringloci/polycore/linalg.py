"""Exact dense linear algebra over Q and Q(i).

Matrices are lists of row lists. Pivoting always takes the first nonzero
entry, so echelon forms and kernel bases are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalars import exact

Matrix = list


def to_exact(A: Sequence[Sequence]) -> Matrix:
    return [[exact(v) for v in row] for row in A]


def shape(A) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A) -> Matrix:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def matmul(A, B) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A, v) -> list:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in A]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(A) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    M = [list(row) for row in A]
    rows, cols = shape(M)
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols: int | None = None) -> list[list]:
    """Right kernel basis, itself brought to reduced row-echelon form."""
    if not A:
        n = ncols or 0
        return [list(r) for r in identity(n)]
    R, piv = rref(A)
    n = len(A[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    if not basis:
        return []
    K, kp = rref(basis)
    return [row for row in K[: len(kp)]]


def row_space_basis(A) -> list[list]:
    R, piv = rref(A)
    return R[: len(piv)]


def solve(A, b) -> list | None:
    """One solution of ``A x = b`` (free variables set to 0), or None."""
    rows, cols = shape(A)
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for i, pc in enumerate(piv):
        x[pc] = R[i][cols]
    return x


def det(A):
    n = len(A)
    M = [list(row) for row in A]
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            out = -out
        out = out * M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return out


def inverse(A) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def adjugate(A) -> Matrix:
    """``adj(A)`` via cofactors (valid for singular A too)."""
    n = len(A)
    if n == 1:
        return [[Fraction(1)]]
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(A) if k != i]
            out[j][i] = (-1) ** (i + j) * det(minor)
    return out


def det_generic(A):
    """Cofactor expansion for entries in any commutative ring (e.g. MPoly)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = A[0][j] * det_generic(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def complete_to_basis(rows: Sequence[Sequence], n: int) -> Matrix:
    """Extend independent rows by standard unit vectors to an invertible matrix."""
    rows = [list(r) for r in rows]
    out = list(rows)
    for i in range(n):
        if len(out) == n:
            break
        e = [Fraction(int(j == i)) for j in range(n)]
        if rank(out + [e]) > len(out):
            out.append(e)
    return out
