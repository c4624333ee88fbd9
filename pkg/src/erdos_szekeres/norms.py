"""Coefficient norms and certified enclosures of max |p(z)| on |z| = 1.

The enclosure uses only coefficient data.  With t -> p(e^{it}) and
L = sum k |a_k| bounding |d/dt p(e^{it})|, every point of the circle is
within pi/M of a grid angle 2 pi m / M, so

    grid_max <= max |p| <= grid_max + pi L / M.

Floating evaluation error is bounded a priori by ``evaluation_error`` and the
interval is widened by it on both sides.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .polyring import DegeneratePolynomialError, IntPolynomial

TWO_PI = 2.0 * math.pi
_EPS = float(np.finfo(float).eps)
_EXACT_FLOAT = 2**53
_LIMB_BITS = 52


class PrecisionWarning(UserWarning):
    """Coefficients exceed 2**53 and are evaluated through split limbs."""


class RefinementCapReached(RuntimeError):
    """Refinement stopped at its iteration or size cap before reaching the target width.

    The best enclosure obtained so far is attached as ``enclosure``.
    """

    def __init__(self, message, enclosure):
        super().__init__(message)
        self.enclosure = enclosure


@dataclass(frozen=True)
class CoefficientNorms:
    l1: int
    l2_squared: int
    linf: int
    nonzero_count: int

    def to_dict(self) -> dict:
        return {
            "l1": str(self.l1),
            "l2_squared": str(self.l2_squared),
            "linf": str(self.linf),
            "nonzero_count": self.nonzero_count,
        }


@dataclass(frozen=True)
class SupNormEnclosure:
    lower: float
    upper: float
    argmax_angle: float
    grid_size: int
    lipschitz_bound: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "argmax_angle": self.argmax_angle,
            "grid_size": self.grid_size,
            "lipschitz": self.lipschitz_bound,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SupNormEnclosure":
        return cls(
            lower=float(data["lower"]),
            upper=float(data["upper"]),
            argmax_angle=float(data["argmax_angle"]),
            grid_size=int(data["grid_size"]),
            lipschitz_bound=float(data["lipschitz"]),
        )


def coeff_norms(p: IntPolynomial) -> CoefficientNorms:
    if p.is_zero():
        raise DegeneratePolynomialError("norms of the zero polynomial are not reported")
    l1 = l2 = linf = count = 0
    for a in p.coeffs:
        if a:
            m = abs(a)
            l1 += m
            l2 += m * m
            linf = max(linf, m)
            count += 1
    return CoefficientNorms(l1=l1, l2_squared=l2, linf=linf, nonzero_count=count)


def lipschitz_bound(p: IntPolynomial) -> float:
    """sum k |a_k|, a bound on |d/dt p(e^{it})|; rounded up to a float."""
    L = sum(k * abs(a) for k, a in enumerate(p.coeffs))
    return math.nextafter(float(L), math.inf) if L else 0.0


def default_grid_size(p: IntPolynomial) -> int:
    return max(2**12, 4 * len(p.coeffs))


def _fold(coeffs, M: int) -> list[int]:
    # z**M = 1 on the grid, so exponents reduce mod M exactly
    if len(coeffs) <= M:
        return list(coeffs)
    folded = [0] * M
    for k, a in enumerate(coeffs):
        if a:
            folded[k % M] += a
    return folded


def _limbs(values: list[int]):
    """Split integers into float-exact limbs: value = sum_j 2**(52 j) * limb_j."""
    big = max((abs(v) for v in values), default=0)
    if big <= _EXACT_FLOAT:
        yield 1.0, np.asarray(values, dtype=float)
        return
    warnings.warn(
        f"coefficients up to 2**{big.bit_length()} exceed double precision; "
        "evaluating by limbs with a widened error bound",
        PrecisionWarning,
        stacklevel=3,
    )
    mask = (1 << _LIMB_BITS) - 1
    rest = [abs(v) for v in values]
    signs = np.array([-1.0 if v < 0 else 1.0 for v in values])
    j = 0
    while any(rest):
        limb = np.array([float(r & mask) for r in rest]) * signs
        yield math.ldexp(1.0, _LIMB_BITS * j), limb
        rest = [r >> _LIMB_BITS for r in rest]
        j += 1


def grid_values(p: IntPolynomial, M: int, weights=None) -> np.ndarray:
    """Complex values sum_k w_k a_k e^{2 pi i k m / M} for m = 0..M-1.

    ``weights`` (an integer per coefficient, e.g. k for the derivative) is
    applied exactly before folding.
    """
    if M < 1:
        raise ValueError(f"grid size {M} must be at least 1")
    coeffs = p.coeffs
    if weights is not None:
        coeffs = [w * a for w, a in zip(weights, coeffs)]
    folded = _fold(coeffs, M)
    out = np.zeros(M, dtype=complex)
    for scale, limb in _limbs(folded):
        # ifft carries e^{+i...}; undo its 1/M normalization
        out += scale * (np.fft.ifft(limb, M) * M)
    return out


def evaluation_error(p: IntPolynomial, M: int) -> float:
    """A priori bound on |computed - exact| for every value of ``grid_values``.

    Float FFT roundoff per output is at most a small multiple of
    log2(M) * eps * sum|a_k|; the constant below is generous.
    """
    l1 = sum(abs(a) for a in p.coeffs)
    return (4.0 * math.log2(max(M, 2)) + 8.0) * _EPS * float(l1)


def mean_square_on_grid(p: IntPolynomial, M: int) -> float:
    """(1/M) sum_m |p(e^{2 pi i m / M})|^2; equals sum a_k^2 when M > deg p."""
    v = grid_values(p, M)
    return float(np.mean(v.real**2 + v.imag**2))


def sup_norm_enclosure(p: IntPolynomial, M: int | None = None) -> SupNormEnclosure:
    """Grid maximum plus Lipschitz certificate for max_{|z|=1} |p(z)|."""
    if p.is_zero():
        raise DegeneratePolynomialError("sup-norm enclosure needs a nonzero polynomial")
    if M is None:
        M = default_grid_size(p)
    if M < 1:
        raise ValueError(f"grid size {M} must be at least 1")
    mod = np.abs(grid_values(p, M))
    # real coefficients: |p| at t and 2 pi - t agree, so search [0, pi] on the
    # pointwise max of mirrored values; first maximum means smallest angle wins
    half = mod[: M // 2 + 1]
    mirrored = np.maximum(half, mod[(-np.arange(half.size)) % M])
    m = int(np.argmax(mirrored))
    top = float(mirrored[m])
    err = evaluation_error(p, M)
    L = lipschitz_bound(p)
    return SupNormEnclosure(
        lower=max(0.0, top - err),
        upper=top + math.pi * L / M + err,
        argmax_angle=TWO_PI * m / M,
        grid_size=M,
        lipschitz_bound=L,
    )


class _DirectEvaluator:
    """Value and t-derivative of p(e^{it}) at arbitrary angles, in chunks."""

    def __init__(self, p: IntPolynomial, chunk_elems: int = 2**21):
        terms = p.nonzero_terms()
        self.k = np.array([k for k, _ in terms], dtype=float)
        self.a = np.array([float(a) for _, a in terms])
        self.rows = max(1, chunk_elems // max(1, len(terms)))
        weight = sum(abs(a) * (1.0 + TWO_PI * k) for k, a in terms)
        dweight = sum(abs(a) * k * (1.0 + TWO_PI * k) for k, a in terms)
        # angle reduction k*t, sin/cos and pairwise summation each cost a few ulps
        factor = (math.log2(max(len(terms), 2)) + 8.0) * _EPS
        self.err_value = factor * weight
        self.err_deriv = factor * dweight

    def __call__(self, t: np.ndarray):
        vals = np.empty(t.shape, dtype=complex)
        ders = np.empty(t.shape, dtype=complex)
        for lo in range(0, t.size, self.rows):
            tt = t[lo:lo + self.rows]
            phase = np.exp(1j * np.outer(tt, self.k))
            terms = phase * self.a
            vals[lo:lo + self.rows] = terms.sum(axis=1)
            ders[lo:lo + self.rows] = 1j * (terms * self.k).sum(axis=1)
        return vals, ders


def _arc_upper(vals, ders, h, L, L2):
    """Upper bound of |p(e^{it})| on arcs |t - c| <= h from value and derivative at c."""
    first = np.abs(vals) + L * h
    second = np.maximum(np.abs(vals + ders * h), np.abs(vals - ders * h)) + 0.5 * L2 * h * h
    return np.minimum(first, second)


def refine_enclosure(
    p: IntPolynomial,
    e: SupNormEnclosure,
    target_width: float,
    max_iter: int = 60,
    max_arcs: int = 2**20,
) -> SupNormEnclosure:
    """Tighten ``e`` to width <= target_width by local branch and bound.

    Arcs of half-width h around the current sample angles are kept only if
    their bound can still beat the best sampled value; survivors are bisected
    (doubling the resolution locally) each round.  Raises
    ``RefinementCapReached`` carrying the best enclosure if the caps hit.
    """
    if p.is_zero():
        raise DegeneratePolynomialError("refinement needs a nonzero polynomial")
    if e.width <= target_width:
        return e
    M = e.grid_size
    L = e.lipschitz_bound
    L2 = float(sum(k * k * abs(a) for k, a in enumerate(p.coeffs)))
    evaluate = _DirectEvaluator(p)
    err_grid = evaluation_error(p, M)
    k_weights = range(len(p.coeffs))

    # |p| is symmetric under t -> -t, so arcs covering [0, pi] suffice
    half = M // 2 + 1
    centers = TWO_PI * np.arange(half) / M
    vals = grid_values(p, M)[:half]
    ders = 1j * grid_values(p, M, weights=k_weights)[:half]
    err_v = max(err_grid, evaluate.err_value)
    err_d = max(evaluation_error(IntPolynomial(tuple(k * a for k, a in enumerate(p.coeffs))), M),
                evaluate.err_deriv)
    h = math.pi / M

    best_val = -1.0
    best_angle = e.argmax_angle
    lower, upper = e.lower, e.upper
    resolution = M
    for _ in range(max_iter + 1):
        mods = np.abs(vals)
        order = np.lexsort((centers, -mods))
        i = int(order[0])
        if mods[i] > best_val or (mods[i] == best_val and centers[i] < best_angle):
            best_val, best_angle = float(mods[i]), float(centers[i])
        bounds = (_arc_upper(vals, ders, h, L, L2) + err_v + err_d * h) * (1.0 + 8.0 * _EPS)
        lower = max(lower, best_val - err_v)
        upper = min(upper, float(bounds.max()))
        if upper - lower <= target_width:
            break
        keep = bounds >= best_val - err_v
        centers, vals, ders = centers[keep], vals[keep], ders[keep]
        if 2 * centers.size > max_arcs:
            raise RefinementCapReached(
                f"{2 * centers.size} arcs would exceed the cap of {max_arcs}",
                _enclosure(lower, upper, best_angle, resolution, L),
            )
        h /= 2.0
        resolution *= 2
        centers = np.concatenate([centers - h, centers + h])
        centers = np.abs(np.where(centers > math.pi, centers - TWO_PI, centers))
        vals, ders = evaluate(centers)
    else:
        raise RefinementCapReached(
            f"width {upper - lower:.3g} above target {target_width:.3g} after {max_iter} rounds",
            _enclosure(lower, upper, best_angle, resolution, L),
        )
    return _enclosure(lower, upper, best_angle, resolution, L)


def _enclosure(lower, upper, angle, resolution, L) -> SupNormEnclosure:
    return SupNormEnclosure(
        lower=float(lower),
        upper=float(upper),
        argmax_angle=float(angle) % TWO_PI,
        grid_size=int(resolution),
        lipschitz_bound=L,
    )
