"""Weak and strict compositions of an integer.

Exponent vectors are plain tuples of ints.  ``enumerate_B`` returns the
weak compositions of ``d`` into ``n`` parts (the columns of ``B(n, d)``) in
descending lexicographic order; reordering into block form is done by
:mod:`powerproduct.structure`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

Exponent = tuple[int, ...]

ORDER_TAGS = ("input", "lex", "canonical-block")


@dataclass(frozen=True)
class ExponentSet:
    """An ordered, duplicate-free collection of exponent vectors of equal length."""

    n: int
    d: int
    members: tuple[Exponent, ...]
    order_tag: str = "input"

    def __post_init__(self):
        if self.order_tag not in ORDER_TAGS:
            raise ValueError(f"unknown order tag {self.order_tag!r}")
        for m in self.members:
            if len(m) != self.n:
                raise ValueError(f"exponent {m} does not have length {self.n}")
        if len(set(self.members)) != len(self.members):
            raise ValueError("duplicate exponents")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def index(self, alpha: Sequence[int]) -> int:
        return self._positions[tuple(alpha)]

    @property
    def _positions(self) -> dict[Exponent, int]:
        pos = self.__dict__.get("_pos")
        if pos is None:
            pos = {m: i for i, m in enumerate(self.members)}
            object.__setattr__(self, "_pos", pos)
        return pos

    def is_full_B(self) -> bool:
        """True when the members are exactly the weak compositions of d into n parts."""
        if len(self.members) != count_weak_compositions(self.n, self.d):
            return False
        return all(min(m) >= 0 and sum(m) == self.d for m in self.members)

    def reordered(self, members: Sequence[Exponent], order_tag: str) -> "ExponentSet":
        return ExponentSet(self.n, self.d, tuple(members), order_tag)


def _check_positive(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def count_weak_compositions(n: int, d: int) -> int:
    """Number of weak compositions of ``d`` into ``n`` parts, C(d+n-1, d)."""
    _check_positive(n=n, d=d)
    return math.comb(d + n - 1, d)


def iter_weak_compositions(total: int, parts: int) -> Iterator[Exponent]:
    """Yield nonnegative ``parts``-vectors summing to ``total`` in descending lex order.

    Successor stepping: take the last position before the final one that is
    still positive, move one unit from it to its right neighbour and gather
    everything to the right into that neighbour.
    """
    if parts < 1 or total < 0:
        return
    a = [0] * parts
    a[0] = total
    while True:
        yield tuple(a)
        i = parts - 2
        while i >= 0 and a[i] == 0:
            i -= 1
        if i < 0:
            return
        tail = sum(a[i + 1:])
        a[i] -= 1
        a[i + 1] = tail + 1
        for j in range(i + 2, parts):
            a[j] = 0


def iter_compositions(total: int, parts: int) -> Iterator[Exponent]:
    """Yield positive ``parts``-vectors summing to ``total`` in descending lex order.

    ``iter_compositions(0, 0)`` yields the empty composition once.
    """
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts < 0 or total < parts:
        return
    for w in iter_weak_compositions(total - parts, parts):
        yield tuple(x + 1 for x in w)


def enumerate_B(n: int, d: int) -> ExponentSet:
    """All weak compositions of ``d`` into ``n`` parts, descending lex order."""
    _check_positive(n=n, d=d)
    return ExponentSet(n, d, tuple(iter_weak_compositions(d, n)), "lex")


def enumerate_k_compositions(d: int, k: int) -> ExponentSet:
    """All compositions of ``d`` into exactly ``k`` positive parts."""
    _check_positive(d=d, k=k)
    if k > d:
        raise ValueError(f"no {k}-compositions of {d}")
    return ExponentSet(k, d, tuple(iter_compositions(d, k)), "lex")


def multinomial(d: int, alpha: Sequence[int]) -> int:
    """d! / (alpha_1! ... alpha_n!) for an exponent of degree d."""
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative entry in {tuple(alpha)}")
    if sum(alpha) != d:
        raise ValueError(f"|{tuple(alpha)}| != {d}")
    out = 1
    left = d
    for a in alpha:
        out *= math.comb(left, a)
        left -= a
    return out


def support(alpha: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, a in enumerate(alpha) if a != 0)


def support_size(alpha: Sequence[int]) -> int:
    """Zero norm: number of nonzero coordinates."""
    return sum(1 for a in alpha if a != 0)
