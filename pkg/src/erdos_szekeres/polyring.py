"""Exact integer polynomials and pure power products.

A polynomial is a tuple of Python ints ``(a_0, a_1, ..., a_N)``; index k holds
the coefficient of z**k.  Trailing zeros are stripped and the zero polynomial
is the single coefficient ``(0,)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Sequence

import numpy as np

# |coefficients| of a product of j factors never exceed 2**j, so int64 is
# exact for up to 62 factors.
_INT64_SAFE_FACTORS = 62


class DegeneratePolynomialError(ValueError):
    """Raised when an operation needs a nonzero polynomial or a nonempty product."""


@dataclass(frozen=True)
class ExponentSequence:
    """Canonical (sorted) multiset of positive exponents s_1 <= ... <= s_n."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.exponents)
        for s in values:
            if isinstance(s, bool) or not isinstance(s, (int, np.integer)):
                raise TypeError(f"exponent {s!r} is not an integer")
            if s < 1:
                raise ValueError(f"exponent {s} is not a positive integer")
        object.__setattr__(self, "exponents", tuple(sorted(int(s) for s in values)))

    @classmethod
    def parse(cls, text: str) -> "ExponentSequence":
        """Parse a comma separated list such as ``"1,2,4"``."""
        text = text.strip()
        if not text:
            return cls(())
        values = []
        for part in text.split(","):
            part = part.strip()
            try:
                values.append(int(part))
            except ValueError:
                raise ValueError(f"exponent {part!r} is not an integer") from None
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def gcd(self) -> int:
        return math.gcd(*self.exponents) if self.exponents else 0

    def is_primitive(self) -> bool:
        return self.gcd == 1

    def primitive(self) -> "ExponentSequence":
        g = self.gcd
        if g <= 1:
            return self
        return ExponentSequence(tuple(s // g for s in self.exponents))

    def scaled(self, c: int) -> "ExponentSequence":
        return ExponentSequence(tuple(c * s for s in self.exponents))

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def __str__(self):
        return ",".join(map(str, self.exponents))

    def to_dict(self) -> dict:
        return {"s": list(self.exponents)}

    @classmethod
    def from_dict(cls, data: dict) -> "ExponentSequence":
        return cls(tuple(int(s) for s in data["s"]))


def _normalize(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial with exact integer coefficients, lowest power first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    @property
    def degree(self) -> int:
        if self.is_zero():
            raise DegeneratePolynomialError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __call__(self, x: int) -> int:
        """Exact Horner evaluation at an integer (or Fraction) point."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def nonzero_terms(self) -> list[tuple[int, int]]:
        return [(k, a) for k, a in enumerate(self.coeffs) if a]

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def to_dict(self) -> dict:
        return {"coeffs": [str(a) for a in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "IntPolynomial":
        return cls(tuple(int(a) for a in data["coeffs"]))

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(coeffs))


def _require_nonzero(p: IntPolynomial) -> None:
    if p.is_zero():
        raise DegeneratePolynomialError("operation requires a nonzero polynomial")


def mul_one_minus_pow(p: IntPolynomial, s: int) -> IntPolynomial:
    """Return p(z) * (1 - z**s), i.e. c'[k] = c[k] - c[k - s]."""
    if s < 1:
        raise ValueError(f"exponent {s} is not a positive integer")
    _require_nonzero(p)
    c = p.coeffs
    out = list(c) + [0] * s
    for k, a in enumerate(c):
        out[k + s] -= a
    return IntPolynomial(tuple(out))


def expand_product(s: ExponentSequence | Sequence[int]) -> IntPolynomial:
    """Expand prod_j (1 - z**s_j) exactly.

    The empty product is the constant 1; callers that check bounds treat it
    as degenerate.
    """
    if not isinstance(s, ExponentSequence):
        s = ExponentSequence(tuple(s))
    N = sum(s.exponents)
    if s.n <= _INT64_SAFE_FACTORS:
        c = np.zeros(N + 1, dtype=np.int64)
        c[0] = 1
        top = 0
        for e in s.exponents:
            # reversed order so each source value is read before it is overwritten
            c[e:top + e + 1] -= c[0:top + 1].copy()
            top += e
        return IntPolynomial(tuple(int(a) for a in c))
    p = IntPolynomial((1,))
    for e in s.exponents:
        p = mul_one_minus_pow(p, e)
    return p


def divide_by_one_minus_z(p: IntPolynomial) -> tuple[IntPolynomial, bool]:
    """Exact synthetic division by (1 - z).

    Returns ``(q, True)`` with p = (1 - z) q when p(1) = 0, else ``(p, False)``.
    """
    _require_nonzero(p)
    c = p.coeffs
    if sum(c) != 0:
        return p, False
    # p = (1 - z) q  gives  q[k] = a_0 + ... + a_k
    q = list(accumulate(c[:-1]))
    return IntPolynomial(tuple(q)), True


def multiplicity_at_one(p: IntPolynomial) -> int:
    """Largest n such that (1 - z)**n divides p."""
    _require_nonzero(p)
    n = 0
    while True:
        p, ok = divide_by_one_minus_z(p)
        if not ok:
            return n
        n += 1


def divide_by_one_minus_pow(p: IntPolynomial, s: int) -> tuple[IntPolynomial, bool]:
    """Exact division by (1 - z**s); returns ``(p, False)`` when not divisible."""
    _require_nonzero(p)
    c = p.coeffs
    N = len(c) - 1
    if N < s:
        return p, False
    q = [0] * (N - s + 1)
    for k in range(N - s + 1):
        q[k] = c[k] + (q[k - s] if k >= s else 0)
    for k in range(N - s + 1, N + 1):
        if c[k] != -(q[k - s] if k - s >= 0 else 0):
            return p, False
    return IntPolynomial(tuple(q)), True


def factor_pure_product(p: IntPolynomial) -> ExponentSequence | None:
    """Recover s with p == prod (1 - z**s_j), or None if p is not of that form.

    The lowest nonconstant term of such a product sits at the smallest
    exponent with a negative coefficient, so peeling factors greedily from
    the bottom is complete.
    """
    if p.is_zero() or p.coeffs[0] != 1:
        return None
    found = []
    while len(p.coeffs) > 1:
        s = next(k for k in range(1, len(p.coeffs)) if p.coeffs[k])
        if p.coeffs[s] > 0:
            return None
        p, ok = divide_by_one_minus_pow(p, s)
        if not ok:
            return None
        found.append(s)
    return ExponentSequence(tuple(found))
