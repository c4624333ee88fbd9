"""Moments of coefficient vectors and the divisibility-by-(1 - z)**n criterion."""

from __future__ import annotations

from dataclasses import dataclass

from .newton import IntMultiset, power_sums
from .norms import coeff_norms
from .polyring import DegeneratePolynomialError, IntPolynomial, multiplicity_at_one


class NotPlusMinusOne(ValueError):
    """Some coefficient lies outside {-1, 0, 1}; no PTE witness can be read off."""


@dataclass(frozen=True)
class SignedSplit:
    """X holds k with multiplicity a_k > 0, Y holds k with multiplicity -a_k."""

    X: IntMultiset
    Y: IntMultiset

    def to_dict(self) -> dict:
        return {"X": self.X.to_dict(), "Y": self.Y.to_dict()}


@dataclass(frozen=True)
class PTEWitness:
    a_list: tuple[int, ...]
    b_list: tuple[int, ...]
    agreement_order: int

    @property
    def r(self) -> int:
        return len(self.a_list)

    def to_dict(self) -> dict:
        return {
            "a_list": [str(a) for a in self.a_list],
            "b_list": [str(b) for b in self.b_list],
            "agreement_order": self.agreement_order,
            "r": self.r,
        }


@dataclass(frozen=True)
class L2BoundReport:
    n: int
    l1: int
    l2_squared: int
    l1_ok: bool
    l2_ok: bool

    @property
    def degenerate(self) -> bool:
        return self.n == 0

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "l1": str(self.l1),
            "l2_squared": str(self.l2_squared),
            "l1_ok": self.l1_ok,
            "l2_ok": self.l2_ok,
            "degenerate": self.degenerate,
        }


def _check(p: IntPolynomial) -> None:
    if p.is_zero():
        raise DegeneratePolynomialError("moments of the zero polynomial are all zero")


def power_moments(p: IntPolynomial, r_max: int) -> list[int]:
    """[sum_k a_k k**r for r = 0..r_max], with 0**0 = 1."""
    _check(p)
    terms = p.nonzero_terms()
    out = []
    weights = [a for _, a in terms]
    for r in range(r_max + 1):
        out.append(sum(weights))
        weights = [w * k for w, (k, _) in zip(weights, terms)]
    return out


def factorial_moments(p: IntPolynomial, r_max: int) -> list[int]:
    """[sum_k a_k (k)_r for r = 0..r_max]; entry r is the r-th derivative at z = 1."""
    _check(p)
    terms = p.nonzero_terms()
    out = []
    weights = [a for _, a in terms]
    for r in range(r_max + 1):
        out.append(sum(weights))
        weights = [w * (k - r) for w, (k, _) in zip(weights, terms)]
    return out


def vanishing_order_by_moments(p: IntPolynomial) -> int:
    """Largest n with sum_k a_k k**r = 0 for every r < n."""
    _check(p)
    terms = p.nonzero_terms()
    weights = [a for _, a in terms]
    n = 0
    # a nonzero polynomial of degree N has a nonzero moment with r <= N
    while sum(weights) == 0:
        n += 1
        weights = [w * k for w, (k, _) in zip(weights, terms)]
    return n


def signed_split(p: IntPolynomial) -> SignedSplit:
    _check(p)
    X = IntMultiset(tuple((k, a) for k, a in p.nonzero_terms() if a > 0))
    Y = IntMultiset(tuple((k, -a) for k, a in p.nonzero_terms() if a < 0))
    return SignedSplit(X, Y)


def verify_l2_bound(p: IntPolynomial) -> L2BoundReport:
    """Check sum|a_k|**2 >= 2n and sum|a_k| >= 2n with n the exact order at z = 1."""
    n = multiplicity_at_one(p)
    norms = coeff_norms(p)
    return L2BoundReport(
        n=n,
        l1=norms.l1,
        l2_squared=norms.l2_squared,
        l1_ok=norms.l1 >= 2 * n,
        l2_ok=norms.l2_squared >= 2 * n,
    )


def _power_sums_from_zero(values, r_max):
    return [sum(v**r for v in values) for r in range(r_max + 1)]


def pte_witness(p: IntPolynomial) -> PTEWitness:
    """Read a Prouhet-Tarry-Escott pair off a polynomial with coefficients in {-1, 0, 1}.

    The exponents of +1 and -1 coefficients share power sums of order
    0..n-1, n being the order of vanishing at z = 1.  Raises
    ``NotPlusMinusOne`` when some |a_k| > 1.
    """
    _check(p)
    bad = [(k, a) for k, a in p.nonzero_terms() if abs(a) != 1]
    if bad:
        k, a = bad[0]
        raise NotPlusMinusOne(f"coefficient {a} at z**{k} is not +-1")
    a_list = tuple(k for k, a in p.nonzero_terms() if a == 1)
    b_list = tuple(k for k, a in p.nonzero_terms() if a == -1)
    n = multiplicity_at_one(p)
    if n >= 1:
        if _power_sums_from_zero(a_list, n - 1) != _power_sums_from_zero(b_list, n - 1):
            raise AssertionError(f"power sums of {a_list} and {b_list} disagree below order {n}")
        if len(a_list) < n:
            raise AssertionError(f"witness size {len(a_list)} below order {n}")
    return PTEWitness(a_list, b_list, n)


def split_power_sums_agree(split: SignedSplit, n: int) -> bool:
    """p_r(X) == p_r(Y) for r = 0..n-1 (sizes included)."""
    if n <= 0:
        return True
    if split.X.m != split.Y.m:
        return False
    if n == 1:
        return True
    return power_sums(split.X, n - 1) == power_sums(split.Y, n - 1)
