"""Brute-force checks of the combinatorial identities behind nonsingularity.

Every sum is evaluated exactly with ``Fraction`` by enumerating
compositions.  The couple set and the sign-reversing involution on it are
built literally from their definitions so that the enumeration can
confirm (or refute) each step.
"""
from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .compositions import iter_compositions, multinomial


@functools.lru_cache(maxsize=None)
def signless_stirling(m: int, k: int) -> int:
    """c(m, k) from c(m, k) = c(m-1, k-1) + (m-1) c(m-1, k), c(0, 0) = 1."""
    if m < 0 or k < 0:
        raise ValueError("negative argument")
    if k > m:
        return 0
    if m == 0:
        return 1
    if k == 0:
        return 0
    return signless_stirling(m - 1, k - 1) + (m - 1) * signless_stirling(m - 1, k)


def _prod(xs) -> int:
    return math.prod(xs)


def gf_identity_sides(m: int, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of sum_k sum_{a in comp(m, k)} (-n)^k / (k! a_1...a_k) = (-1)^m C(n, m)."""
    if not 0 <= m < n:
        raise ValueError("need n > m >= 0")
    lhs = Fraction(0)
    for k in range(m + 1):
        w = Fraction((-n) ** k, math.factorial(k))
        for a in iter_compositions(m, k):
            lhs += w / _prod(a)
    return lhs, Fraction((-1) ** m * math.comb(n, m))


def verify_gf_identity(m: int, n: int) -> bool:
    lhs, rhs = gf_identity_sides(m, n)
    return lhs == rhs


def stirling_gf_sides(m: int, z: int) -> tuple[Fraction, Fraction]:
    """sum_k z^k c(m, k) / m!  against the composition sum at the same z."""
    comp = sum(
        (Fraction(z**k, math.factorial(k) * _prod(a)) for k in range(m + 1) for a in iter_compositions(m, k)),
        Fraction(0),
    )
    stir = Fraction(sum(z**k * signless_stirling(m, k) for k in range(m + 1)), math.factorial(m))
    return comp, stir


def _check_b(n: int, r: int, b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(b)
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    if len(b) != r or any(x < 1 for x in b):
        raise ValueError("b must be r positive integers")
    return b


def weighted_composition_sum(n: int, r: int, b: Sequence[int]) -> Fraction:
    """sum_{k=r}^n sum_{a in comp(n, k)} (-1)^(n-k) (n-k)! C(n-r, k-r) a_1^b_1...a_r^b_r / (n! n^(n-k) a_1...a_k)."""
    b = _check_b(n, r, b)
    total = Fraction(0)
    nf = math.factorial(n)
    for k in range(r, n + 1):
        w = Fraction((-1) ** (n - k) * math.factorial(n - k) * math.comb(n - r, k - r), nf * n ** (n - k))
        for a in iter_compositions(n, k):
            num = _prod(x**e for x, e in zip(a, b))
            total += w * Fraction(num, _prod(a))
    return total


def alternating_composition_sum(n: int, r: int, b: Sequence[int]) -> int:
    """sum_{s=r}^n (-1)^s C(n, s) sum_{a in comp(s, r)} a_1^(b_1-1)...a_r^(b_r-1)."""
    b = _check_b(n, r, b)
    return sum(
        (-1) ** s * math.comb(n, s) * _division_count(s, b)
        for s in range(r, n + 1)
    )


def _division_count(s: int, b: Sequence[int]) -> int:
    return sum(_prod(x ** (e - 1) for x, e in zip(a, b)) for a in iter_compositions(s, len(b)))


def rearrangement_sides(n: int, r: int, b: Sequence[int]) -> tuple[Fraction, Fraction]:
    b = _check_b(n, r, b)
    lhs = weighted_composition_sum(n, r, b)
    pre = Fraction((-1) ** r * math.factorial(n - r), math.factorial(n) * n ** (n - r))
    return lhs, pre * alternating_composition_sum(n, r, b)


def verify_rearrangement(n: int, r: int, b: Sequence[int]) -> bool:
    lhs, rhs = rearrangement_sides(n, r, b)
    return lhs == rhs


def delta_value(n: int, r: int, b: Sequence[int]) -> Fraction:
    """multinomial(n; b) times :func:`weighted_composition_sum`."""
    b = _check_b(n, r, b)
    if sum(b) != n:
        raise ValueError("|b| must equal n")
    return multinomial(n, b) * weighted_composition_sum(n, r, b)


def verify_delta_identity(n: int, r: int, b: Sequence[int]) -> bool:
    return delta_value(n, r, b) == (1 if n == r else 0)


# -- couples -------------------------------------------------------------


def cut_points(b: Sequence[int]) -> tuple[int, ...]:
    """Partial sums c_j = b_1 + ... + b_j (1-based positions)."""
    return tuple(itertools.accumulate(b))


@dataclass(frozen=True)
class Couple:
    """A pair (S, θ) with S ⊆ [n] and θ ∈ S^n; positions and values are 1-based."""

    n: int
    b: tuple[int, ...]
    S: frozenset[int]
    theta: tuple[int, ...]

    @property
    def weight(self) -> int:
        return (-1) ** len(self.S)

    def is_valid(self) -> bool:
        n, S, th = self.n, self.S, self.theta
        if not S or not S <= set(range(1, n + 1)) or len(th) != n:
            return False
        if any(t not in S for t in th) or th[-1] != max(S):
            return False
        for c in cut_points(self.b):
            v = th[c - 1]
            if any(th[k] > v for k in range(c - 1)):
                return False
            if any(th[k] <= v for k in range(c, n)):
                return False
        return True


def _check_couple_args(n: int, b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(b)
    if any(x < 1 for x in b) or sum(b) != n:
        raise ValueError("b must be positive with |b| = n")
    return b


def _thetas(n: int, b: tuple[int, ...], S: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All θ ∈ S^n meeting the couple conditions, by pruned depth-first search."""
    cuts = set(cut_points(b))
    top = max(S)
    th = [0] * n
    placed_cuts: list[int] = []

    def rec(k: int):
        # k is the 0-based position being filled
        if k == n:
            yield tuple(th)
            return
        choices = (top,) if k == n - 1 else S
        for v in choices:
            if any(v <= th[c] for c in placed_cuts):
                continue
            if (k + 1) in cuts and any(th[j] > v for j in range(k)):
                continue
            th[k] = v
            if (k + 1) in cuts:
                placed_cuts.append(k)
                yield from rec(k + 1)
                placed_cuts.pop()
            else:
                yield from rec(k + 1)

    yield from rec(0)


def enumerate_couples(n: int, b: Sequence[int]) -> list[Couple]:
    """Every couple (S, θ) for the given b, S running over nonempty subsets of [n]."""
    b = _check_couple_args(n, b)
    out = []
    for size in range(1, n + 1):
        for S in itertools.combinations(range(1, n + 1), size):
            fs = frozenset(S)
            out.extend(Couple(n, b, fs, th) for th in _thetas(n, b, S))
    return out


def couples_for_subset(n: int, b: Sequence[int], S: Sequence[int]) -> list[Couple]:
    b = _check_couple_args(n, b)
    fs = frozenset(S)
    return [Couple(n, b, fs, th) for th in _thetas(n, b, sorted(fs))]


def division_count(n: int, b: Sequence[int], S: Sequence[int]) -> int:
    """Number of couples with first component S predicted by counting divisions of S."""
    b = _check_couple_args(n, b)
    return _division_count(len(set(S)), b)


def couple_weight_sum(n: int, b: Sequence[int]) -> int:
    return sum(c.weight for c in enumerate_couples(n, b))


class InvolutionNotApplicable(ValueError):
    pass


def involution(x: Couple) -> Couple:
    """The sign-reversing map on couples, case by case.

    Φ is the set of values of θ, U = S minus Φ and V the non-members of S
    below max S.  If U ∪ V is nonempty its maximum u is removed from or
    added to S.  Otherwise S = {1..m}; with W the values repeated in θ,
    either m+1 is added and θ_n raised by one (max W = m), or m is removed
    and θ_n lowered by one (max W < m, or W empty).
    """
    n, S, th = x.n, set(x.S), x.theta
    top = max(S)
    phi_vals = set(th)
    U = S - phi_vals
    V = {w for w in range(1, n + 1) if w not in S and w < top}
    if U | V:
        u = max(U | V)
        S2 = S - {u} if u in S else S | {u}
        return Couple(n, x.b, frozenset(S2), th)
    W = [v for v, c in Counter(th).items() if c >= 2]
    if W:
        w = max(W)
        if w == top:
            if not w < n:
                raise InvolutionNotApplicable(f"max W = max S = {w} is not below n = {n}")
            return Couple(n, x.b, frozenset(S | {top + 1}), th[:-1] + (th[-1] + 1,))
        return Couple(n, x.b, frozenset(S - {top}), th[:-1] + (th[-1] - 1,))
    if len(S) != n:
        raise InvolutionNotApplicable("W is empty but S is not all of [n]")
    return Couple(n, x.b, frozenset(S - {n}), th[:-1] + (th[-1] - 1,))


@dataclass
class InvolutionReport:
    n: int
    b: tuple[int, ...]
    ok: bool
    checked: int
    size: int
    failure: dict | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "b": list(self.b),
            "ok": self.ok,
            "checked": self.checked,
            "couples": self.size,
            "failure": self.failure,
        }


def _couple_dict(c: Couple) -> dict:
    return {"S": sorted(c.S), "theta": list(c.theta), "valid": c.is_valid()}


def involution_check(n: int, b: Sequence[int]) -> InvolutionReport:
    """Apply the involution to every couple and check closure, self-inverse and sign reversal.

    Stops at the first couple where a check fails and records it.
    """
    b = _check_couple_args(n, b)
    if not n > len(b) >= 1:
        raise ValueError("need n > r >= 1")
    C = enumerate_couples(n, b)
    members = set(C)
    for i, x in enumerate(C):
        try:
            y = involution(x)
        except InvolutionNotApplicable as e:
            return InvolutionReport(n, b, False, i, len(C), {"couple": _couple_dict(x), "reason": str(e)})
        reason = None
        if y not in members:
            reason = "image is not a couple"
        elif y == x:
            reason = "fixed point"
        elif y.weight != -x.weight:
            reason = "weight not reversed"
        else:
            try:
                z = involution(y)
            except InvolutionNotApplicable as e:
                z, reason = None, f"second application: {e}"
            if reason is None and z != x:
                reason = "not self-inverse"
        if reason:
            return InvolutionReport(
                n, b, False, i, len(C),
                {"couple": _couple_dict(x), "image": _couple_dict(y), "reason": reason},
            )
    if len(C) % 2:
        return InvolutionReport(n, b, False, len(C), len(C), {"reason": "odd number of couples"})
    return InvolutionReport(n, b, True, len(C), len(C))


# -- sweeps ----------------------------------------------------------------


def all_b(n: int, strict: bool = False) -> Iterator[tuple[int, ...]]:
    """All compositions b of n; with ``strict`` only those with fewer than n parts."""
    for r in range(1, n + 1):
        if strict and r >= n:
            continue
        yield from iter_compositions(n, r)


@dataclass
class VerificationReport:
    identity: str
    passed: bool
    params: dict
    checked: int
    counterexample: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "passed": self.passed,
            "params": self.params,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }


def sweep_gf(m_max: int = 8, n_max: int = 12) -> VerificationReport:
    checked = 0
    for m in range(0, m_max + 1):
        for n in range(m + 1, n_max + 1):
            lhs, rhs = gf_identity_sides(m, n)
            checked += 1
            if lhs != rhs:
                return VerificationReport("gf", False, {"m_max": m_max, "n_max": n_max}, checked,
                                          {"m": m, "n": n, "lhs": str(lhs), "rhs": str(rhs)})
    return VerificationReport("gf", True, {"m_max": m_max, "n_max": n_max}, checked)


def sweep_rearrangement(n_max: int = 7) -> VerificationReport:
    checked = 0
    for n in range(1, n_max + 1):
        for b in all_b(n):
            lhs, rhs = rearrangement_sides(n, len(b), b)
            checked += 1
            if lhs != rhs:
                return VerificationReport("rearrangement", False, {"n_max": n_max}, checked,
                                          {"n": n, "b": list(b), "lhs": str(lhs), "rhs": str(rhs)})
    return VerificationReport("rearrangement", True, {"n_max": n_max}, checked)


def sweep_delta(n_max: int = 7) -> VerificationReport:
    checked = 0
    for n in range(1, n_max + 1):
        for b in all_b(n):
            v = delta_value(n, len(b), b)
            checked += 1
            if v != (1 if n == len(b) else 0):
                return VerificationReport("delta", False, {"n_max": n_max}, checked,
                                          {"n": n, "b": list(b), "value": str(v)})
    return VerificationReport("delta", True, {"n_max": n_max}, checked)


def sweep_couples(n_max: int = 5) -> VerificationReport:
    """Couple weight sum against the alternating sum (and zero), plus per-subset counts."""
    checked = 0
    for n in range(2, n_max + 1):
        for b in all_b(n, strict=True):
            C = enumerate_couples(n, b)
            wsum = sum(c.weight for c in C)
            alt = alternating_composition_sum(n, len(b), b)
            checked += 1
            if wsum != alt or wsum != 0:
                return VerificationReport("couples", False, {"n_max": n_max}, checked,
                                          {"n": n, "b": list(b), "weight_sum": wsum, "alternating_sum": alt})
            per = Counter(c.S for c in C)
            for size in range(1, n + 1):
                for S in itertools.combinations(range(1, n + 1), size):
                    if per.get(frozenset(S), 0) != division_count(n, b, S):
                        return VerificationReport("couples", False, {"n_max": n_max}, checked,
                                                  {"n": n, "b": list(b), "S": list(S),
                                                   "count": per.get(frozenset(S), 0),
                                                   "divisions": division_count(n, b, S)})
    return VerificationReport("couples", True, {"n_max": n_max}, checked)


def sweep_involution(n_max: int = 5) -> VerificationReport:
    checked = 0
    failures = []
    for n in range(2, n_max + 1):
        for b in all_b(n, strict=True):
            rep = involution_check(n, b)
            checked += 1
            if not rep.ok:
                failures.append(rep)
    params = {"n_max": n_max}
    if failures:
        first = failures[0]
        ce = {"n": first.n, "b": list(first.b), **(first.failure or {})}
        notes = [f"{len(failures)} of {checked} (n, b) cases fail; failing b: "
                 + ", ".join(f"{r.n}:{list(r.b)}" for r in failures)]
        return VerificationReport("involution", False, params, checked, ce, notes)
    return VerificationReport("involution", True, params, checked)
