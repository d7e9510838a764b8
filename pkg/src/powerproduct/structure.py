"""Block structure and sparsity of power-product matrices.

The canonical order groups exponents by support size and sorts each group
with the logically reverse lexicographical (lrlex) order.  In that order
V(n, d) is block lower triangular, and every diagonal block of the
support-size-k group equals the power-product matrix of the
k-compositions of d.
"""
from __future__ import annotations

import csv
import functools
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .compositions import (
    Exponent,
    ExponentSet,
    count_weak_compositions,
    enumerate_B,
    enumerate_k_compositions,
    support,
    support_size,
)
from .exact import BlockTriangularSolver
from .matrixcore import ExactMatrix, build_V, power_product_matrix

SMALLER, EQUAL, LARGER = -1, 0, 1


class DecompositionError(AssertionError):
    """The canonical order failed to expose the expected block structure."""


def _log(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 if x != 0 else 0 for x in v)


def lrlex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare two exponents in lrlex order; returns -1, 0 or 1.

    Support patterns are compared first: at the first index where they
    differ, the vector with a nonzero entry there is smaller.  With equal
    patterns, the vector with the larger value at the first differing
    index is smaller.
    """
    if len(a) != len(b):
        raise ValueError("exponents have different lengths")
    la, lb = _log(a), _log(b)
    if la != lb:
        for x, y in zip(la, lb):
            if x != y:
                return SMALLER if x > y else LARGER
    for x, y in zip(a, b):
        if x != y:
            return SMALLER if x > y else LARGER
    return EQUAL


def lrlex_key(a: Sequence[int]) -> tuple:
    """Sort key equivalent to :func:`lrlex_compare`."""
    return tuple(-x for x in _log(a)), tuple(-x for x in a)


def canonical_key(a: Sequence[int]) -> tuple:
    return (support_size(a),) + lrlex_key(a)


def canonical_block_order(B: ExponentSet) -> ExponentSet:
    """Reorder by support size ascending, then lrlex within each size."""
    members = sorted(B.members, key=canonical_key)
    return B.reordered(members, "canonical-block")


@functools.lru_cache(maxsize=None)
def canonical_B(n: int, d: int) -> ExponentSet:
    return canonical_block_order(enumerate_B(n, d))


@functools.lru_cache(maxsize=None)
def composition_block(d: int, k: int) -> ExactMatrix:
    """Power-product matrix of the k-compositions of d (descending lex order)."""
    return power_product_matrix(enumerate_k_compositions(d, k))


@dataclass(frozen=True)
class BlockGroup:
    k: int
    multiplicity: int
    block: ExactMatrix

    @property
    def side(self) -> int:
        return self.block.rows


@dataclass(frozen=True)
class BlockDecomposition:
    """Canonical permutation of B(n, d) plus the distinct diagonal blocks.

    ``permutation[i]`` is the position, in the lex order of
    :func:`~powerproduct.compositions.enumerate_B`, of the i-th exponent
    of the canonical order.
    """

    n: int
    d: int
    permutation: tuple[int, ...]
    order: ExponentSet
    groups: tuple[BlockGroup, ...]
    verified: bool = False

    @property
    def p(self) -> int:
        return min(self.n, self.d)

    def diagonal_sizes(self) -> list[int]:
        """Sides of the consecutive diagonal blocks, in canonical order."""
        return [g.side for g in self.groups for _ in range(g.multiplicity)]

    def support_runs(self) -> list[tuple[int, int, tuple[int, ...]]]:
        """(start, stop, support) for each same-support run of the canonical order."""
        runs = []
        start = 0
        members = self.order.members
        for i in range(1, len(members) + 1):
            if i == len(members) or support(members[i]) != support(members[start]):
                runs.append((start, i, support(members[start])))
                start = i
        return runs


def block_decompose(n: int, d: int, verify: bool = True, size_cap: int = 5000) -> BlockDecomposition:
    """Block lower-triangular decomposition of V(n, d).

    With ``verify`` the full matrix is built in canonical order and checked:
    every entry above the diagonal blocks is zero, same-support exponents
    are contiguous, and each diagonal block equals its group's
    k-composition block.  Verification needs an s × s matrix and is refused
    above ``size_cap``.
    """
    lex = enumerate_B(n, d)
    canon = canonical_B(n, d)
    perm = tuple(lex.index(a) for a in canon)
    groups = tuple(
        BlockGroup(k, math.comb(n, k), composition_block(d, k)) for k in range(1, min(n, d) + 1)
    )
    dec = BlockDecomposition(n, d, perm, canon, groups)
    if sum(g.multiplicity * g.side for g in groups) != len(canon):
        raise DecompositionError("block sides do not add up to s(n, d)")
    if not verify:
        return dec
    s = len(canon)
    if s > size_cap:
        raise ValueError(f"s({n},{d}) = {s} exceeds size cap {size_cap}")
    V = build_V(n, d, canon)
    _check_decomposition(dec, V)
    return BlockDecomposition(n, d, perm, canon, groups, verified=True)


def _check_decomposition(dec: BlockDecomposition, V: ExactMatrix) -> None:
    a = V.array
    runs = dec.support_runs()
    seen = set()
    for _, _, sup in runs:
        if sup in seen:
            raise DecompositionError(f"support {sup} is not contiguous in canonical order")
        seen.add(sup)
    blocks = {g.k: g.block.array for g in dec.groups}
    sizes = dec.diagonal_sizes()
    if [stop - start for start, stop, _ in runs] != sizes:
        raise DecompositionError("support runs do not match block sides")
    for start, stop, sup in runs:
        if np.any(a[start:stop, stop:] != 0):
            raise DecompositionError(f"nonzero entry above diagonal block at rows {start}:{stop}")
        if not np.array_equal(a[start:stop, start:stop], blocks[len(sup)]):
            raise DecompositionError(f"diagonal block for support {sup} differs from k-composition block")


def nnz_formula(n: int, d: int) -> int:
    """Closed-form nonzero count of V(n, d)."""
    count_weak_compositions(n, d)
    return sum(
        math.comb(n, k) * math.comb(d - 1, k - 1) * math.comb(d + k - 1, d)
        for k in range(1, min(n, d) + 1)
    )


def sparsity(n: int, d: int) -> Fraction:
    """1 - nnz / s², exact."""
    s = count_weak_compositions(n, d)
    return 1 - Fraction(nnz_formula(n, d), s * s)


def nnz_count(M: ExactMatrix) -> int:
    return int(np.count_nonzero(M.array != 0))


def sparsity_of(M: ExactMatrix) -> Fraction:
    return 1 - Fraction(nnz_count(M), M.rows * M.cols)


@dataclass(frozen=True)
class InversePatternReport:
    n: int
    d: int
    holds: bool
    counterexample: tuple[Exponent, Exponent] | None = None
    inverse_nnz: int = 0
    nnz: int = 0


def exact_inverse_V(n: int, d: int, size_cap: int = 400):
    """Exact rational inverse of V(n, d) via block forward substitution.

    Returns ``(order, V, inverse_rows)``, all indexed by the canonical
    order.  ``size_cap`` bounds the side s(n, d).
    """
    s = count_weak_compositions(n, d)
    if s > size_cap:
        raise ValueError(f"s({n},{d}) = {s} exceeds inversion size cap {size_cap}")
    dec = block_decompose(n, d, verify=False)
    V = build_V(n, d, dec.order)
    solver = BlockTriangularSolver(V, dec.diagonal_sizes())
    return dec.order, V, solver.inverse()


def inverse_pattern_check(n: int, d: int, size_cap: int = 400) -> InversePatternReport:
    """Check that every zero of V(n, d) is also a zero of its inverse."""
    order, V, inv = exact_inverse_V(n, d, size_cap)
    a = V.array
    bad = None
    inv_nnz = 0
    for i, row in enumerate(inv):
        for j, x in enumerate(row):
            if x != 0:
                inv_nnz += 1
                if a[i, j] == 0 and bad is None:
                    bad = (order[i], order[j])
    return InversePatternReport(n, d, bad is None, bad, inv_nnz, nnz_count(V))


@dataclass(frozen=True)
class SparsityRow:
    n: int
    d: int
    nnz: int
    s: int
    sparsity: Fraction


def sparsity_table(n_values: Iterable[int], d_values: Iterable[int]) -> list[SparsityRow]:
    """Grid of exact sparsities, rows ordered by n then d."""
    n_values, d_values = list(n_values), list(d_values)
    if not n_values or not d_values:
        raise ValueError("ranges must be nonempty")
    rows = []
    for n in n_values:
        for d in d_values:
            rows.append(SparsityRow(n, d, nnz_formula(n, d), count_weak_compositions(n, d), sparsity(n, d)))
    return rows


def sparsity_csv(rows: Sequence[SparsityRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "d", "nnz", "s_nd", "sparsity", "sparsity_exact"])
    for r in rows:
        frac = r.sparsity
        w.writerow([r.n, r.d, r.nnz, r.s, _decimal6(frac), f"{frac.numerator}/{frac.denominator}"])
    return buf.getvalue()


def _decimal6(x: Fraction) -> str:
    # round half up at 6 places, exact
    scaled = (x * 10**6 * 2 + 1) // 2
    q, r = divmod(int(scaled), 10**6)
    return f"{q}.{r:06d}"
