"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary.  Tolerances are fixed here and never loosened.
"""

import json
import math
import random
import time
from functools import lru_cache
from itertools import combinations_with_replacement

from erdos_szekeres.moments import pte_witness, vanishing_order_by_moments
from erdos_szekeres.newton import IntMultiset, power_sums, reconstruct_multiset
from erdos_szekeres.norms import (
    coeff_norms,
    mean_square_on_grid,
    refine_enclosure,
    sup_norm_enclosure,
)
from erdos_szekeres.polyring import (
    ExponentSequence,
    IntPolynomial,
    expand_product,
    multiplicity_at_one,
)
from erdos_szekeres.search import exhaustive_search
from erdos_szekeres.theorems import ExhaustiveFamily, RandomFamily, batch_verify

GRID = 2**14
FLOAT_TOL = 1e-9
EQUALITY_TOL = 1e-6
PARSEVAL_REL = 1e-9
F1_WIDTH = 1e-6
F2_TOL = 1e-4
SUP_12 = 16 / (3 * math.sqrt(3))

EXHAUSTIVE = ExhaustiveFamily(n_max=3, s_max=8)
RANDOM = RandomFamily(count=1000, n=6, s_max=12, seed=1)

RESULTS: list[str] = []


def record(cid, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  {cid:<4} {title}"
    if detail:
        line += f"  [{detail}]"
    RESULTS.append(line)
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def family_batches(jobs=1):
    start = time.perf_counter()
    batches = (batch_verify(EXHAUSTIVE, GRID, jobs=jobs), batch_verify(RANDOM, GRID, jobs=jobs))
    return batches, time.perf_counter() - start


def family_products():
    for fam in (EXHAUSTIVE, RANDOM):
        yield from fam.members()


def test_c1_coefficient_bound_exact():
    start = time.perf_counter()
    count = failures = 0
    for s in family_products():
        p = expand_product(s)
        norms = coeff_norms(p)
        n = multiplicity_at_one(p)
        count += 1
        if not (n == s.n and norms.l2_squared >= 2 * n and norms.l1 >= 2 * n):
            failures += 1
    elapsed = time.perf_counter() - start
    record(
        "C1", "sum a_k^2 >= 2n and sum |a_k| >= 2n (exact integers)",
        failures == 0 and count == 1164 and elapsed < 60,
        f"{count} products, {failures} failures, {elapsed:.1f}s",
    )


def test_c2_sup_norm_bound():
    (ex, rnd), elapsed = family_batches()
    bad = 0
    for r in ex.reports + rnd.reports:
        e = r.enclosure
        width_term = math.pi * e.lipschitz_bound / e.grid_size
        if not (
            e.grid_size == GRID
            and e.upper >= 2 * math.sqrt(r.n) - FLOAT_TOL
            and e.lower >= 2 * math.sqrt(r.n) - width_term - FLOAT_TOL
            and r.consistent
        ):
            bad += 1
    record(
        "C2", "upper >= 2 sqrt(n), lower >= 2 sqrt(n) - pi L / M at M = 2^14",
        bad == 0 and ex.ok and rnd.ok,
        f"{ex.count + rnd.count} products, {bad} failures, {elapsed:.1f}s",
    )


def test_c3_or_consistency():
    (ex, rnd), _ = family_batches()
    bad = sum(
        1 for r in ex.reports + rnd.reports
        if not r.enclosure.upper**2 >= 2 * r.l2_squared - FLOAT_TOL
    )
    p = expand_product(ExponentSequence((1,)))
    e = refine_enclosure(p, sup_norm_enclosure(p, GRID), 1e-9)
    two_l2 = 2 * coeff_norms(p).l2_squared
    tight = abs(e.upper**2 - two_l2) <= EQUALITY_TOL and abs(e.lower**2 - two_l2) <= EQUALITY_TOL
    record(
        "C3", "upper^2 >= 2 sum a_k^2; equality sup^2 = 4 = 2 l2^2 at s = (1)",
        bad == 0 and tight and two_l2 == 4,
        f"{bad} failures, s=(1) sup^2 in [{e.lower**2:.9f}, {e.upper**2:.9f}]",
    )


def test_c4_power_sums_injective_and_invertible():
    start = time.perf_counter()
    total = collisions = bad_round_trips = 0
    for m in range(1, 6):
        seen = {}
        for xs in combinations_with_replacement(range(-4, 5), m):
            X = IntMultiset.of(xs)
            ps = power_sums(X, m)
            total += 1
            if ps.values in seen:
                collisions += 1
            seen[ps.values] = X
            if reconstruct_multiset(ps) != X:
                bad_round_trips += 1
    elapsed = time.perf_counter() - start
    record(
        "C4", "multisets m <= 5 in [-4, 4]: power sums injective, reconstruction exact",
        collisions == 0 and bad_round_trips == 0 and elapsed < 120,
        f"{total} multisets, {collisions} collisions, {bad_round_trips} bad, {elapsed:.1f}s",
    )


def random_polynomials(count=10_000, seed=2024):
    rng = random.Random(seed)
    made = 0
    while made < count:
        p = IntPolynomial(tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, 51))))
        if p.is_zero():
            continue
        made += 1
        yield p


def test_c5_divisibility_cross_oracle():
    disagreements = checked = 0
    orders = []
    for p in random_polynomials():
        a, b = vanishing_order_by_moments(p), multiplicity_at_one(p)
        checked += 1
        disagreements += a != b
        orders.append(a)
    for s in family_products():
        p = expand_product(s)
        checked += 1
        disagreements += vanishing_order_by_moments(p) != multiplicity_at_one(p)
    record(
        "C5", "moment vanishing order == exact (1 - z) multiplicity",
        disagreements == 0,
        f"{checked} polynomials, {disagreements} disagreements, max random order {max(orders)}",
    )


def parseval_products(count=100, seed=6):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 16)
        yield ExponentSequence(tuple(rng.randint(1, 4096 // n) for _ in range(n)))


def parseval_errors():
    out = []
    for s in parseval_products():
        p = expand_product(s)
        N = p.degree
        M = 1 << N.bit_length()  # smallest power of two exceeding N
        l2 = coeff_norms(p).l2_squared
        out.append((s, M, abs(mean_square_on_grid(p, M) - l2) / l2))
    return out


def test_c6_discrete_parseval():
    errs = parseval_errors()
    worst = max(e for _, _, e in errs)
    record(
        "C6", "|mean_square_on_grid - l2^2| <= 1e-9 l2^2 for M > N",
        all(s.n and sum(s.exponents) <= 4096 and M > sum(s.exponents) for s, M, _ in errs)
        and worst <= PARSEVAL_REL,
        f"{len(errs)} products, worst relative error {worst:.2e}",
    )


@lru_cache(maxsize=None)
def small_n_records(jobs=1):
    start = time.perf_counter()
    one = exhaustive_search(1, 8, GRID, refine_width=F1_WIDTH, jobs=jobs)
    two = exhaustive_search(2, 8, GRID, jobs=jobs)
    return one, two, time.perf_counter() - start


def test_c7_exact_small_n():
    one, two, elapsed = small_n_records()
    ok1 = one.best_s.exponents == (1,) and one.enclosure.width <= F1_WIDTH and one.enclosure.contains(2.0)
    ok2 = two.best_s.exponents == (1, 2) and abs(two.objective - SUP_12) <= F2_TOL
    record(
        "C7", "f(1) = 2 within width 1e-6; exhaustive n = 2, s <= 8 gives (1,2) at 16/(3 sqrt 3)",
        ok1 and ok2 and elapsed < 60,
        f"f(1) in [{one.enclosure.lower:.9f}, {one.enclosure.upper:.9f}], "
        f"f(2) <= {two.objective:.7f}, {elapsed:.1f}s",
    )


def test_c8_pte_witness():
    w = pte_witness(expand_product(ExponentSequence((1, 2))))
    sums_equal = all(
        sum(a**k for a in w.a_list) == sum(b**k for b in w.b_list) for k in range(2)
    )
    record(
        "C8", "s = (1,2) gives PTE pair {0,3} / {1,2} of size r = 2 >= n = 2",
        set(w.a_list) == {0, 3} and set(w.b_list) == {1, 2} and sums_equal
        and w.r == 2 and w.agreement_order == 2,
        f"a={list(w.a_list)} b={list(w.b_list)} order={w.agreement_order}",
    )


def test_c9_nonzero_coefficient_count():
    short = [s for s in EXHAUSTIVE.members() if sum(1 for a in expand_product(s) if a) < s.n + 1]
    record(
        "C9", "every product with n <= 3, s <= 8 has >= n + 1 nonzero coefficients",
        not short,
        f"{len(short)} violations",
    )


def criteria_jsonl(jobs):
    """Everything criteria 1-7 compute, serialised; must not depend on ``jobs``."""
    lines = []
    (ex, rnd), _ = family_batches(jobs)
    lines.append(ex.to_jsonl())
    lines.append(rnd.to_jsonl())
    for p in random_polynomials(count=500):
        lines.append(json.dumps([vanishing_order_by_moments(p), multiplicity_at_one(p)]) + "\n")
    for s, M, err in parseval_errors():
        lines.append(json.dumps({"s": list(s.exponents), "M": M, "err": err}) + "\n")
    one, two, _ = small_n_records(jobs)
    lines.append(json.dumps(one.to_dict()) + "\n")
    lines.append(json.dumps(two.to_dict()) + "\n")
    return "".join(lines).encode()


def test_c10_determinism():
    serial = criteria_jsonl(1)
    family_batches.cache_clear()
    small_n_records.cache_clear()
    again = criteria_jsonl(1)
    parallel = criteria_jsonl(2)
    record(
        "C10", "byte-identical JSONL across repeated runs and worker counts",
        serial == again == parallel,
        f"{len(serial)} bytes, jobs 1 vs 2",
    )
