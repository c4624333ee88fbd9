"""End-to-end checks of the coefficient and sup-norm lower bounds on products.

For P = prod (1 - z**s_j) with n factors the chain being checked is

    max|P|**2 >= 2 sum a_k**2 >= 4n,

the first step holding because every zero of P lies on the unit circle.
Floating comparisons use ``FLOAT_TOL``; integer comparisons are exact.
"""

from __future__ import annotations

import json
import math
import random
import warnings
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterator

from ._parallel import parallel_map
from .moments import verify_l2_bound
from .norms import SupNormEnclosure, coeff_norms, mean_square_on_grid, sup_norm_enclosure
from .polyring import (
    DegeneratePolynomialError,
    ExponentSequence,
    IntPolynomial,
    expand_product,
    factor_pure_product,
)

FLOAT_TOL = 1e-9
DEFAULT_GRID = 2**14


class HypothesisNotGuaranteed(UserWarning):
    """Polynomial not recognised as a pure power product; zeros may leave the circle."""


@dataclass(frozen=True)
class BoundReport:
    s: ExponentSequence
    n: int
    l2_squared: int
    l1: int
    enclosure: SupNormEnclosure
    bound_2sqrt_n: float
    bound_sqrt_2_l2: float
    l2_ok: bool
    l1_ok: bool
    consistent: bool
    slack: float

    def to_dict(self) -> dict:
        return {
            "s": list(self.s.exponents),
            "n": self.n,
            "l1": str(self.l1),
            "l2_squared": str(self.l2_squared),
            "l1_ok": self.l1_ok,
            "l2_ok": self.l2_ok,
            "enclosure": self.enclosure.to_dict(),
            "bound_2sqrt_n": self.bound_2sqrt_n,
            "bound_sqrt_2_l2": self.bound_sqrt_2_l2,
            "consistent": self.consistent,
            "slack": self.slack,
        }


@dataclass(frozen=True)
class ORReport:
    rms_sq: float
    l2_squared: int
    upper_ok: bool
    lower_slack: float
    is_product: bool

    def to_dict(self) -> dict:
        return {
            "rms_sq": self.rms_sq,
            "l2_squared": str(self.l2_squared),
            "upper_ok": self.upper_ok,
            "lower_slack": self.lower_slack,
            "is_product": self.is_product,
        }


def is_consistent(n: int, l2_squared: int, enclosure: SupNormEnclosure) -> bool:
    two_sqrt_n = 2.0 * math.sqrt(n)
    sqrt_2_l2 = math.sqrt(2.0 * l2_squared)
    return (
        l2_squared >= 2 * n
        and enclosure.upper >= two_sqrt_n - FLOAT_TOL
        and enclosure.upper >= sqrt_2_l2 - FLOAT_TOL
        # chain: sqrt(2 l2) >= 2 sqrt(n) follows from l2 >= 2n
        and sqrt_2_l2 >= two_sqrt_n - FLOAT_TOL
    )


def verify_main_bound(s: ExponentSequence, M: int = DEFAULT_GRID) -> BoundReport:
    if s.n < 1:
        raise DegeneratePolynomialError("the empty product has no bound to check")
    p = expand_product(s)
    l2 = verify_l2_bound(p)
    enc = sup_norm_enclosure(p, M)
    two_sqrt_n = 2.0 * math.sqrt(s.n)
    consistent = (
        l2.n == s.n and l2.l1_ok and l2.l2_ok and is_consistent(s.n, l2.l2_squared, enc)
    )
    return BoundReport(
        s=s,
        n=s.n,
        l2_squared=l2.l2_squared,
        l1=l2.l1,
        enclosure=enc,
        bound_2sqrt_n=two_sqrt_n,
        bound_sqrt_2_l2=math.sqrt(2.0 * l2.l2_squared),
        l2_ok=l2.l2_ok,
        l1_ok=l2.l1_ok,
        consistent=consistent,
        slack=enc.lower - two_sqrt_n,
    )


def verify_or_inequality(
    p: IntPolynomial | ExponentSequence, M: int = DEFAULT_GRID
) -> ORReport:
    """Compare the certified sup-norm against 2 sum a_k**2.

    The inequality is only guaranteed when all zeros are on the unit circle;
    a polynomial that is not a pure power product is still checked but
    triggers ``HypothesisNotGuaranteed``.
    """
    if isinstance(p, ExponentSequence):
        p = expand_product(p)
        is_product = True
    else:
        is_product = factor_pure_product(p) is not None
        if not is_product:
            warnings.warn(
                "polynomial is not a pure power product; the inequality may fail",
                HypothesisNotGuaranteed,
                stacklevel=2,
            )
    l2 = coeff_norms(p).l2_squared
    enc = sup_norm_enclosure(p, M)
    rms_M = max(M, len(p.coeffs))
    return ORReport(
        rms_sq=mean_square_on_grid(p, rms_M),
        l2_squared=l2,
        upper_ok=enc.upper**2 >= 2 * l2 - FLOAT_TOL,
        lower_slack=enc.lower**2 - 2 * l2,
        is_product=is_product,
    )


@dataclass(frozen=True)
class ExhaustiveFamily:
    n_max: int
    s_max: int
    n_min: int = 1

    def members(self) -> Iterator[ExponentSequence]:
        for n in range(self.n_min, self.n_max + 1):
            for combo in combinations_with_replacement(range(1, self.s_max + 1), n):
                yield ExponentSequence(combo)


@dataclass(frozen=True)
class RandomFamily:
    count: int
    n: int
    s_max: int
    seed: int

    def members(self) -> Iterator[ExponentSequence]:
        rng = random.Random(self.seed)
        for _ in range(self.count):
            yield ExponentSequence(tuple(rng.randint(1, self.s_max) for _ in range(self.n)))


@dataclass
class BatchSummary:
    count: int = 0
    failures: list[ExponentSequence] = field(default_factory=list)
    distinct_primitive: int = 0
    reports: list[BoundReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "failures": [list(s.exponents) for s in self.failures],
            "distinct_primitive": self.distinct_primitive,
        }

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict()) + "\n" for r in self.reports)


def _verify_one(args):
    s, M = args
    return verify_main_bound(s, M)


def batch_verify(family, M: int = DEFAULT_GRID, jobs: int = 1) -> BatchSummary:
    """Run ``verify_main_bound`` over every member; report order follows the family."""
    members = list(family.members())
    reports = parallel_map(_verify_one, [(s, M) for s in members], jobs)
    return BatchSummary(
        count=len(reports),
        failures=[r.s for r in reports if not r.consistent],
        distinct_primitive=len({s.primitive() for s in members}),
        reports=reports,
    )
