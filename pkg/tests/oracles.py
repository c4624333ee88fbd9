"""Independent reference computations used only by the tests.

Nothing here imports the package's evaluation or division code paths.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import combinations, combinations_with_replacement

import numpy as np
import sympy


def naive_convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def naive_expand(s):
    c = [1]
    for e in s:
        c = naive_convolve(c, [1] + [0] * (e - 1) + [-1])
    return c


def dense_sup(coeffs, samples=400_001):
    """max |p(e^{it})| over a dense grid of [0, pi] by direct summation."""
    t = np.linspace(0.0, math.pi, samples)
    z = np.exp(1j * t)
    acc = np.zeros_like(z)
    for a in reversed(coeffs):
        acc = acc * z + a
    return float(np.abs(acc).max())


def product_sup(s, samples=400_001):
    t = np.linspace(0.0, math.pi, samples)
    v = np.ones_like(t)
    for e in s:
        v = v * np.abs(1 - np.exp(1j * e * t))
    return float(v.max())


def sympy_multiplicity(coeffs):
    z = sympy.symbols("z")
    p = sympy.Poly(list(reversed(coeffs)), z)
    f = sympy.Poly(1 - z, z)
    n = 0
    while True:
        q, r = p.div(f)
        if not r.is_zero:
            return n
        p, n = q, n + 1


def multisets(m, lo, hi):
    return combinations_with_replacement(range(lo, hi + 1), m)


def brute_power_sums(xs, r_max):
    return tuple(sum(x**r for x in xs) for r in range(1, r_max + 1))


def brute_elementary(xs):
    return tuple(
        sum(math.prod(c) for c in combinations(xs, j)) for j in range(1, len(xs) + 1)
    )


def brute_multiset_with_power_sums(target, lo, hi):
    m = len(target)
    return [Counter(xs) for xs in multisets(m, lo, hi) if brute_power_sums(xs, m) == tuple(target)]
