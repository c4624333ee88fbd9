"""Power sums, elementary symmetric functions and integer multiset recovery.

Equal power sums p_1..p_m force equal multisets of size m: Newton's
identities turn (p_1, ..., p_m) into (e_1, ..., e_m), which fix the monic
polynomial whose roots are the multiset.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

FACTOR_LIMIT = 2**63


class NotRealizable(ValueError):
    """The power sums do not come from any integer multiset."""


class TooLargeToFactor(ValueError):
    """Trailing coefficient beyond the trial-division limit."""


@dataclass(frozen=True)
class IntMultiset:
    """Integer multiset stored as sorted (value, multiplicity) pairs."""

    items: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged = Counter()
        for value, mult in self.items:
            if mult < 0:
                raise ValueError(f"multiplicity {mult} of {value} is negative")
            merged[int(value)] += int(mult)
        object.__setattr__(
            self, "items", tuple(sorted((v, m) for v, m in merged.items() if m > 0))
        )

    @classmethod
    def of(cls, values: Iterable[int]) -> "IntMultiset":
        return cls(tuple(Counter(values).items()))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "IntMultiset":
        return cls(tuple(counts.items()))

    @property
    def entries(self) -> dict[int, int]:
        return dict(self.items)

    @property
    def m(self) -> int:
        return sum(mult for _, mult in self.items)

    def elements(self) -> list[int]:
        return [v for v, mult in self.items for _ in range(mult)]

    def __len__(self):
        return self.m

    def to_dict(self) -> dict:
        return {"elements": [[v, mult] for v, mult in self.items]}

    @classmethod
    def from_dict(cls, data: dict) -> "IntMultiset":
        return cls(tuple((int(v), int(mult)) for v, mult in data["elements"]))


@dataclass(frozen=True)
class PowerSums:
    values: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ElementarySymmetric:
    values: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.values)


def power_sums(X: IntMultiset, r_max: int) -> PowerSums:
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    return PowerSums(tuple(
        sum(mult * v**r for v, mult in X.items) for r in range(1, r_max + 1)
    ))


def elementary_from_power(ps: PowerSums | Iterable[int]) -> ElementarySymmetric:
    """Newton recursion r e_r = sum_{i=1}^r (-1)^{i-1} e_{r-i} p_i, exactly.

    Raises ``NotRealizable`` when some e_r is not an integer.
    """
    p = tuple(ps.values if isinstance(ps, PowerSums) else ps)
    if not p:
        raise ValueError("need at least one power sum")
    e = [1]
    for r in range(1, len(p) + 1):
        total = sum((-1) ** (i - 1) * e[r - i] * p[i - 1] for i in range(1, r + 1))
        er = Fraction(total, r)
        if er.denominator != 1:
            raise NotRealizable(f"e_{r} = {er} is not an integer")
        e.append(int(er))
    return ElementarySymmetric(tuple(e[1:]))


def elementary_direct(X: IntMultiset, j_max: int | None = None) -> ElementarySymmetric:
    """e_1..e_m from expanding prod (1 + x t); independent of the Newton path."""
    m = X.m if j_max is None else j_max
    coeffs = [1]
    for x in X.elements():
        coeffs = [a + x * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    coeffs += [0] * (m + 1 - len(coeffs))
    return ElementarySymmetric(tuple(coeffs[1:m + 1]))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n > FACTOR_LIMIT:
        raise TooLargeToFactor(f"|{n}| exceeds the factoring limit 2**63")
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _synthetic_div(c: list[int], root: int) -> list[int] | None:
    """Divide the polynomial c (highest power first) by (t - root), or None if inexact."""
    out = [c[0]]
    for a in c[1:-1]:
        out.append(a + root * out[-1])
    if c[-1] + root * out[-1] != 0:
        return None
    return out


def reconstruct_multiset(ps: PowerSums | Iterable[int]) -> IntMultiset:
    """The unique integer multiset of size m with power sums p_1..p_m.

    Builds t^m - e_1 t^{m-1} + ... + (-1)^m e_m and extracts its integer roots
    by trial division over divisors of the trailing nonzero coefficient.
    """
    e = elementary_from_power(ps).values
    m = len(e)
    # highest power first
    c = [1] + [(-1) ** j * e[j - 1] for j in range(1, m + 1)]
    counts = Counter()
    while len(c) > 1 and c[-1] == 0:
        c.pop()
        counts[0] += 1
    if len(c) > 1:
        for d in _divisors(c[-1]):
            for root in (d, -d):
                while len(c) > 1:
                    q = _synthetic_div(c, root)
                    if q is None:
                        break
                    c = q
                    counts[root] += 1
            if len(c) == 1:
                break
    if len(c) > 1:
        raise NotRealizable(f"degree {len(c) - 1} factor has no integer roots")
    return IntMultiset.from_counts(counts)


def equal_by_power_sums(X: IntMultiset, Y: IntMultiset) -> bool:
    """True iff p_r(X) == p_r(Y) for r = 1..m (m = |X| = |Y|)."""
    if X.m != Y.m:
        raise ValueError(f"multisets differ in size: {X.m} != {Y.m}")
    if X.m == 0:
        return True
    return power_sums(X, X.m) == power_sums(Y, Y.m)
