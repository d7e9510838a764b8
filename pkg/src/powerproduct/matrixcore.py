"""Exact integer matrices and the power-product operator.

Matrices are held in numpy arrays.  When every entry provably fits in a
signed 64-bit word the array is ``int64`` (fast construction and zero
counting); otherwise it is an ``object`` array of Python ints or
``Fraction`` values.  Either way the entries are exact: nothing here ever
touches floating point, and all elimination code converts to Python ints
before doing arithmetic.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .compositions import (
    ExponentSet,
    count_weak_compositions,
    enumerate_B,
    multinomial,
)

INT64_MAX = 2**63 - 1


class ExactMatrix:
    """Immutable dense matrix of exact integers or rationals.

    Parameters
    ----------
    entries : array_like
        2-d nested sequence or array.  Python ints, numpy ints and
        ``Fraction`` are accepted; floats are rejected.
    order : ExponentSet, optional
        Exponents indexing rows and columns (square power-product matrices).
    """

    __slots__ = ("_a", "order")

    def __init__(self, entries, order: ExponentSet | None = None):
        a = np.array(entries, copy=True) if isinstance(entries, np.ndarray) else _to_array(entries)
        self._init(a, order)

    @classmethod
    def _wrap(cls, a: np.ndarray, order: ExponentSet | None = None) -> "ExactMatrix":
        # takes ownership of ``a`` without copying
        self = cls.__new__(cls)
        self._init(a, order)
        return self

    def _init(self, a: np.ndarray, order):
        if a.ndim != 2:
            raise ValueError("ExactMatrix needs a 2-d array")
        if a.dtype.kind == "f":
            raise TypeError("floating point entries are not exact")
        if a.dtype != np.int64 and a.dtype != object:
            a = a.astype(object)
        a.setflags(write=False)
        if order is not None and not (len(order) == a.shape[0] == a.shape[1]):
            raise ValueError("order length does not match matrix side")
        self._a = a
        self.order = order

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def __getitem__(self, ij):
        v = self._a[ij]
        return int(v) if isinstance(v, np.integer) else v

    def tolist(self) -> list[list]:
        """Entries as nested lists of Python ints / Fractions."""
        if self._a.dtype == np.int64:
            return self._a.tolist()
        return [[_exact(x) for x in row] for row in self._a]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    def __repr__(self):
        return f"ExactMatrix({self.tolist()!r})"

    def permuted(self, perm: Sequence[int], order: ExponentSet | None = None) -> "ExactMatrix":
        """Symmetric permutation: entry (i, j) of the result is (perm[i], perm[j])."""
        p = np.asarray(perm, dtype=np.intp)
        return ExactMatrix._wrap(self._a[np.ix_(p, p)], order)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(np.ascontiguousarray(self._a.T), self.order)

    def scale_columns(self, factors: Sequence[int]) -> "ExactMatrix":
        """M · diag(factors), computed in Python ints."""
        if len(factors) != self.cols:
            raise ValueError("one factor per column required")
        rows = self.tolist()
        return ExactMatrix([[x * f for x, f in zip(r, factors)] for r in rows], self.order)

    def nonzero_mask(self) -> np.ndarray:
        return np.asarray(self._a != 0, dtype=bool)

    # -- serialization -------------------------------------------------
    def to_json(self) -> str:
        doc = {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_exact(x) for x in row] for row in self.tolist()],
            "order": None if self.order is None else [list(m) for m in self.order],
            "order_tag": None if self.order is None else self.order.order_tag,
        }
        if self.order is not None:
            doc["n"] = self.order.n
            doc["d"] = self.order.d
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        doc = json.loads(text)
        entries = [[parse_exact(x) for x in row] for row in doc["entries"]]
        if len(entries) != doc["rows"] or any(len(r) != doc["cols"] for r in entries):
            raise ValueError("entries do not match declared dimensions")
        order = None
        if doc.get("order") is not None:
            members = tuple(tuple(m) for m in doc["order"])
            order = ExponentSet(len(members[0]), sum(members[0]), members, doc["order_tag"])
        if not entries:
            return cls(np.zeros((doc["rows"], doc["cols"]), dtype=object), order)
        return cls(entries, order)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.tolist():
            w.writerow([format_exact(x) for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ExactMatrix":
        rows = [[parse_exact(x) for x in r] for r in csv.reader(io.StringIO(text)) if r]
        return cls(rows)


def format_exact(x) -> str:
    """Decimal string for ints, ``p/q`` for non-integral rationals."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(int(x))


def parse_exact(s: str):
    s = s.strip()
    if "/" in s:
        f = Fraction(s)
        return f.numerator if f.denominator == 1 else f
    return int(s)


def _exact(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _to_array(entries) -> np.ndarray:
    rows = [list(r) for r in entries]
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged rows")
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if isinstance(x, (float, np.floating)):
                raise TypeError("floating point entries are not exact")
            out[i, j] = _exact(x) if isinstance(x, Fraction) else int(x)
    return out


def _as_int_array(M) -> np.ndarray:
    if isinstance(M, ExactMatrix):
        return M.array
    if isinstance(M, np.ndarray):
        return M
    return _to_array(M)


def power_product(A, B) -> ExactMatrix:
    """A ⊛ B: entry (i, j) is prod_k A[i, k] ** B[k, j], with 0**0 = 1.

    ``B`` must hold nonnegative integers.
    """
    a = _as_int_array(A)
    b = _as_int_array(B)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("power_product needs 2-d operands")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"inner dimensions differ: {a.shape} vs {b.shape}")
    if b.size and min(int(x) for x in b.flat) < 0:
        raise ValueError("negative exponent")
    n, m = a.shape
    q = b.shape[1]
    dtype = _safe_dtype(a, b)
    a = a.astype(dtype)
    b = b.astype(dtype)
    out = np.ones((n, q), dtype=dtype)
    for k in range(m):
        out *= np.power(a[:, k][:, None], b[k, :][None, :])
    return ExactMatrix._wrap(out)


def _safe_dtype(a: np.ndarray, b: np.ndarray):
    # |prod_k a_ik^b_kj| <= amax^(column sum of b); partial products are bounded too
    if a.size == 0 or b.size == 0:
        return np.int64
    amax = max(abs(int(x)) for x in a.flat)
    colsum = max(int(s) for s in b.sum(axis=0)) if b.shape[0] else 0
    if amax <= 1 or colsum == 0:
        return np.int64
    if colsum * math.log2(amax) < 62:
        return np.int64
    return object


def exponent_matrix(order: ExponentSet) -> np.ndarray:
    """The n × s matrix whose columns are the exponents, i.e. B(n, d)."""
    return np.array([list(m) for m in order], dtype=np.int64).T


def _resolve_order(n: int, d: int, order: ExponentSet | None) -> ExponentSet:
    if order is None:
        return enumerate_B(n, d)
    if order.n != n or order.d != d or not order.is_full_B():
        raise ValueError(f"order does not enumerate B({n},{d})")
    return order


def power_product_matrix(order: ExponentSet) -> ExactMatrix:
    """Bᵀ ⊛ B for an arbitrary exponent set (also used for k-composition blocks)."""
    B = exponent_matrix(order)
    M = power_product(np.ascontiguousarray(B.T), B)
    return ExactMatrix._wrap(M.array, order)


def build_V(n: int, d: int, order: ExponentSet | None = None) -> ExactMatrix:
    """Power-product matrix V(n, d) with rows/columns indexed by ``order``."""
    return power_product_matrix(_resolve_order(n, d, order))


def build_Vhat(n: int, d: int, order: ExponentSet | None = None) -> ExactMatrix:
    """V̂(n, d): entry (i, j) = multinomial(d, α^j) · (α^i)^(α^j), built entry by entry."""
    order = _resolve_order(n, d, order)
    coef = [multinomial(d, a) for a in order]
    rows = []
    for ai in order:
        row = []
        for aj, c in zip(order, coef):
            p = 1
            for x, e in zip(ai, aj):
                p *= x**e
            row.append(c * p)
        rows.append(row)
    # every entry is a term of d^d = (sum α_i)^d expanded, so int64 suffices below that
    if d * math.log2(max(d, 2)) < 62:
        return ExactMatrix._wrap(np.array(rows, dtype=np.int64), order)
    return ExactMatrix(rows, order)


def vhat_from_v(V: ExactMatrix) -> ExactMatrix:
    """V̂ = V · diag(multinomial(d, α)) for a V that carries its order."""
    if V.order is None:
        raise ValueError("V must carry its exponent order")
    d = V.order.d
    return V.scale_columns([multinomial(d, a) for a in V.order])


def build_A(k: int, a: int, b: int) -> ExactMatrix:
    """(k+1) × (k+1) matrix with 1-indexed entry (a-i+1)^(k-j+1) · (b+i-1)^(j-1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rows = [
        [(a - i + 1) ** (k - j + 1) * (b + i - 1) ** (j - 1) for j in range(1, k + 2)]
        for i in range(1, k + 2)
    ]
    return ExactMatrix(rows)


def identity(s: int) -> ExactMatrix:
    return ExactMatrix(np.eye(s, dtype=np.int64))


def side_of(n: int, d: int) -> int:
    return count_weak_compositions(n, d)
