"""Exact elimination: Bareiss determinants and rational solves.

Everything operates on Python ints and ``Fraction``; callers may pass an
``ExactMatrix`` or a nested list.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .matrixcore import ExactMatrix


class SingularMatrixError(ArithmeticError):
    pass


def _rows(M) -> list[list]:
    if isinstance(M, ExactMatrix):
        return M.tolist()
    return [list(r) for r in M]


def _square(rows: list[list]) -> int:
    s = len(rows)
    if any(len(r) != s for r in rows):
        raise ValueError("matrix is not square")
    return s


def det_bareiss(M) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination.

    Every intermediate value is a minor of ``M``, so all divisions are exact.
    A zero pivot is replaced by swapping in a lower row; if the whole column
    below is zero the determinant is zero.
    """
    a = _rows(M)
    s = _square(a)
    if s == 0:
        return 1
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in a for x in r):
        raise TypeError("det_bareiss expects integer entries")
    a = [[int(x) for x in r] for r in a]
    sign = 1
    prev = 1
    for k in range(s - 1):
        if a[k][k] == 0:
            for i in range(k + 1, s):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, s):
            ri = a[i]
            lead = ri[k]
            for j in range(k + 1, s):
                ri[j] = (piv * ri[j] - lead * rk[j]) // prev
            ri[k] = 0
        prev = piv
    return sign * a[s - 1][s - 1]


def solve_exact(M, rhs: Sequence) -> list[Fraction]:
    """Solve M x = rhs exactly.

    Forward elimination is fraction-free on the augmented integer matrix
    (rational right-hand sides are cleared by their common denominator);
    back substitution is done in ``Fraction``.
    """
    a = _rows(M)
    s = _square(a)
    if len(rhs) != s:
        raise ValueError("right-hand side has the wrong length")
    rhs = [Fraction(x) for x in rhs]
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in a for x in r):
        # rational system: plain Gaussian elimination over Q
        return _solve_rational([[Fraction(x) for x in r] for r in a], rhs)
    den = math.lcm(*(x.denominator for x in rhs)) if rhs else 1
    aug = [[int(x) for x in r] + [int(b * den)] for r, b in zip(a, rhs)]
    prev = 1
    for k in range(s):
        if aug[k][k] == 0:
            for i in range(k + 1, s):
                if aug[i][k] != 0:
                    aug[k], aug[i] = aug[i], aug[k]
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        piv = aug[k][k]
        rk = aug[k]
        for i in range(k + 1, s):
            ri = aug[i]
            lead = ri[k]
            for j in range(k + 1, s + 1):
                ri[j] = (piv * ri[j] - lead * rk[j]) // prev
            ri[k] = 0
        prev = piv
    x = [Fraction(0)] * s
    for i in range(s - 1, -1, -1):
        acc = Fraction(aug[i][s])
        row = aug[i]
        for j in range(i + 1, s):
            if row[j]:
                acc -= row[j] * x[j]
        x[i] = acc / row[i]
    return [v / den for v in x]


def _solve_rational(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    s = len(a)
    aug = [r[:] + [v] for r, v in zip(a, b)]
    for k in range(s):
        p = next((i for i in range(k, s) if aug[i][k] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        aug[k], aug[p] = aug[p], aug[k]
        for i in range(k + 1, s):
            f = aug[i][k] / aug[k][k]
            if f:
                for j in range(k, s + 1):
                    aug[i][j] -= f * aug[k][j]
    x = [Fraction(0)] * s
    for i in range(s - 1, -1, -1):
        acc = aug[i][s] - sum(aug[i][j] * x[j] for j in range(i + 1, s))
        x[i] = acc / aug[i][i]
    return x


def inverse_exact(M) -> list[list[Fraction]]:
    """Exact rational inverse, column by column."""
    a = _rows(M)
    s = _square(a)
    cols = [solve_exact(a, [1 if i == j else 0 for i in range(s)]) for j in range(s)]
    return [[cols[j][i] for j in range(s)] for i in range(s)]


class BlockTriangularSolver:
    """Solver for a matrix that is block lower triangular in its given order.

    ``sizes`` lists the sides of the consecutive diagonal blocks.  The
    inverse of each diagonal block is formed once; solves are then forward
    substitution over blocks, skipping zero entries.  Set ``upper=True``
    for a block upper triangular matrix (e.g. the transpose).
    """

    def __init__(self, M, sizes: Sequence[int], upper: bool = False):
        a = _rows(M)
        s = _square(a)
        if sum(sizes) != s:
            raise ValueError("block sizes do not cover the matrix")
        self.size = s
        self.upper = upper
        starts = []
        pos = 0
        for b in sizes:
            starts.append(pos)
            pos += b
        self.blocks = list(zip(starts, sizes))
        for bi, (st, sz) in enumerate(self.blocks):
            lo, hi = (st + sz, s) if not upper else (0, st)
            for i in range(st, st + sz):
                if any(a[i][j] != 0 for j in range(lo, hi)):
                    raise ValueError(f"matrix is not block {'upper' if upper else 'lower'} triangular")
        self._rows = [[(j, v) for j, v in enumerate(r) if v != 0] for r in a]
        self._inv = []
        for st, sz in self.blocks:
            sub = [r[st:st + sz] for r in a[st:st + sz]]
            self._inv.append(inverse_exact(sub))

    def solve(self, rhs: Sequence) -> list[Fraction]:
        s = self.size
        if len(rhs) != s:
            raise ValueError("right-hand side has the wrong length")
        x: list[Fraction] = [Fraction(0)] * s
        seq = range(len(self.blocks))
        if self.upper:
            seq = reversed(seq)
        for bi in seq:
            st, sz = self.blocks[bi]
            r = []
            for i in range(st, st + sz):
                acc = Fraction(rhs[i])
                for j, v in self._rows[i]:
                    if (j < st or j >= st + sz) and x[j]:
                        acc -= v * x[j]
                r.append(acc)
            inv = self._inv[bi]
            for li in range(sz):
                x[st + li] = sum((inv[li][lj] * r[lj] for lj in range(sz) if r[lj]), Fraction(0))
        return x

    def inverse(self) -> list[list[Fraction]]:
        s = self.size
        cols = [self.solve([1 if i == j else 0 for i in range(s)]) for j in range(s)]
        return [[cols[j][i] for j in range(s)] for i in range(s)]


def matvec(M, x: Sequence) -> list:
    return [sum((v * xi for v, xi in zip(r, x) if v and xi), 0) for r in _rows(M)]
