"""Detectors for LSB-style embedding: RS analysis, the pairs-of-values
chi-square attack, and difference-image-histogram (DIH) ratio estimation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pgm import as_gray_image


class InsufficientDataError(ValueError):
    pass


class EstimateUndefinedError(ValueError):
    pass


# ---------------------------------------------------------------------------
# chi-square distribution via the regularized incomplete gamma function

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 100_000


def _gamma_series(a: float, x: float) -> float:
    """P(a, x) by its power series; converges quickly for x < a + 1."""
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cont_frac(a: float, x: float) -> float:
    """Q(a, x) by the modified Lentz continued fraction; for x >= a + 1."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _check_chi2_args(x: float, dof: int) -> None:
    if dof < 1:
        raise ValueError(f"dof must be >= 1, got {dof}")
    if x < 0 or math.isnan(x):
        raise ValueError(f"x must be >= 0, got {x}")


def chi_square_cdf(x: float, dof: int) -> float:
    """P(dof/2, x/2), the chi-square CDF."""
    _check_chi2_args(x, dof)
    a, y = dof / 2.0, x / 2.0
    if y == 0:
        return 0.0
    if math.isinf(y):
        return 1.0
    if y < a + 1.0:
        return _gamma_series(a, y)
    return 1.0 - _gamma_cont_frac(a, y)


def chi_square_sf(x: float, dof: int) -> float:
    """1 - chi_square_cdf, evaluated without cancellation in the far tail."""
    _check_chi2_args(x, dof)
    a, y = dof / 2.0, x / 2.0
    if y == 0:
        return 1.0
    if math.isinf(y):
        return 0.0
    if y < a + 1.0:
        return 1.0 - _gamma_series(a, y)
    return _gamma_cont_frac(a, y)


# ---------------------------------------------------------------------------
# RS analysis

def flip_f1(x):
    """0<->1, 2<->3, ..., 254<->255."""
    return np.asarray(x) ^ 1 if not isinstance(x, int) else x ^ 1


def flip_fneg1(x):
    """-1<->0, 1<->2, ..., 255<->256. Output may leave 0..255."""
    if isinstance(x, int):
        return ((x + 1) ^ 1) - 1
    return ((np.asarray(x, dtype=np.int32) + 1) ^ 1) - 1


@dataclass(frozen=True)
class RsReport:
    rm: float
    sm: float
    rm_neg: float
    sm_neg: float
    groups_total: int

    def as_row(self) -> tuple[float, float, float, float]:
        return self.rm, self.sm, self.rm_neg, self.sm_neg


def _smoothness(groups: np.ndarray) -> np.ndarray:
    return np.abs(np.diff(groups, axis=1)).sum(axis=1)


def rs_analyze(img, mask=(0, 1, 1, 0), group_size: int | None = None) -> RsReport:
    """Regular/singular group percentages under the mask M and its negation -M.

    Groups are non-overlapping runs of ``group_size`` horizontally adjacent
    pixels, scanned row by row; partial groups at the right edge are dropped.
    """
    img = as_gray_image(img)
    mask = np.asarray(mask, dtype=bool)
    group_size = group_size or len(mask)
    if group_size % len(mask):
        raise ValueError(f"mask length {len(mask)} does not divide group size {group_size}")
    h, w = img.shape
    per_row = w // group_size
    if per_row == 0:
        raise InsufficientDataError(f"image width {w} is narrower than a group ({group_size})")

    groups = img[:, :per_row * group_size].astype(np.int32).reshape(-1, group_size)
    full_mask = np.tile(mask, group_size // len(mask))
    f0 = _smoothness(groups)
    pos = np.where(full_mask, flip_f1(groups), groups)
    neg = np.where(full_mask, flip_fneg1(groups), groups)
    fp = _smoothness(pos)
    fn = _smoothness(neg)
    total = groups.shape[0]
    pct = 100.0 / total
    return RsReport(
        rm=float((fp > f0).sum() * pct),
        sm=float((fp < f0).sum() * pct),
        rm_neg=float((fn > f0).sum() * pct),
        sm_neg=float((fn < f0).sum() * pct),
        groups_total=total,
    )


# ---------------------------------------------------------------------------
# pairs-of-values chi-square attack

@dataclass(frozen=True)
class PovCurve:
    fractions: np.ndarray
    p_values: np.ndarray

    @property
    def points(self):
        return list(zip(self.fractions.tolist(), self.p_values.tolist()))


def pov_statistic(pixels) -> tuple[float, int]:
    """Chi-square statistic over the value pairs (2i, 2i+1) and the number of pairs kept."""
    hist = np.bincount(np.asarray(pixels, dtype=np.uint8).ravel(), minlength=256)
    even, odd = hist[0::2].astype(np.float64), hist[1::2].astype(np.float64)
    keep = (even + odd) > 0
    expected = (even[keep] + odd[keep]) / 2.0
    chi2 = float(((even[keep] - expected) ** 2 / expected).sum())
    return chi2, int(keep.sum())


def pov_p_value(pixels) -> float:
    chi2, kept = pov_statistic(pixels)
    if kept < 2:
        return 0.0
    return chi_square_sf(chi2, kept - 1)


def pov_fractions(step: float = 0.01) -> np.ndarray:
    if not 0 < step <= 1:
        raise ValueError(f"step must lie in (0, 1], got {step}")
    count = math.ceil(round(1.0 / step, 9))
    fr = np.minimum(np.arange(1, count + 1) * step, 1.0)
    fr[-1] = 1.0
    return fr


def pov_analyze(img, step: float = 0.01) -> PovCurve:
    """Embedding probability over cumulative row-major prefixes of the image."""
    flat = as_gray_image(img).ravel()
    n = flat.size
    fractions = pov_fractions(step)
    p = np.empty_like(fractions)
    for i, t in enumerate(fractions):
        p[i] = pov_p_value(flat[:math.ceil(round(t * n, 9))])
    return PovCurve(fractions, p)


# ---------------------------------------------------------------------------
# difference image histogram

@dataclass(frozen=True)
class DihEstimate:
    ratio: float


_OFFSET = 255  # histogram index of difference 0


def difference_histogram(img) -> np.ndarray:
    """Histogram of horizontal differences x[i, j+1] - x[i, j], indexed from -255."""
    x = np.asarray(img, dtype=np.int32)
    d = x[:, 1:] - x[:, :-1]
    return np.bincount((d + _OFFSET).ravel(), minlength=2 * _OFFSET + 1)


def dih_estimate(img) -> DihEstimate:
    """Estimated LSB-replacement ratio from difference-image histograms.

    Three horizontal difference histograms are used: ``h`` of the image, ``f``
    of the image with every LSB flipped, and ``g`` of the image with every LSB
    cleared. ``g`` is untouched by LSB embedding; each zeroed difference 2i
    spreads into 2i-1, 2i, 2i+1 with transfer weights that embedding at ratio p
    mixes with q = p/2. With r = 1 - p:

      * the share of zeroed-0 pairs landing on an odd difference, ``g0 - h0``,
        moves as ``r**2 * S + (1 - r**2) * g0 / 2``;
      * the per-class imbalance ``D_i`` (pairs landing on 2i+1 minus pairs
        landing on 2i-1) shrinks as ``r * D_i``, and
        ``D_i = sum_{j>=i} (h[2j+1] - f[2j+1])``.

    In a cover, an odd difference is equally likely to come from either
    neighbouring zeroed class, which sums to ``S + sum_{i>=1} D_i -
    sum_{i<=-1} D_i = 0``. Substituting the stego quantities gives
    ``(g0/2) r**2 + A r + (g0 - h0 - g0/2) = 0``; the estimate is 1 - r for
    its non-negative root.
    """
    img = as_gray_image(img)
    if img.shape[1] < 2:
        raise InsufficientDataError("need at least two columns for a difference image")
    h = difference_histogram(img)
    if np.count_nonzero(h) < 2:
        raise EstimateUndefinedError("difference histogram has all its mass in one bin")
    f = difference_histogram(img ^ 1)
    g = difference_histogram(img & 0xFE)

    g0 = float(g[_OFFSET])
    if g0 == 0:
        raise EstimateUndefinedError("no pixel pairs share a zeroed value")
    s0 = g0 - float(h[_OFFSET])

    # odd differences 2i+1 for i = -128..127 -> histogram index 2i+1+255
    i = np.arange(-128, 128)
    odd = (h[2 * i + 1 + _OFFSET] - f[2 * i + 1 + _OFFSET]).astype(np.float64)
    D = np.cumsum(odd[::-1])[::-1]  # D[i] = sum over j >= i
    imbalance = D[i >= 1].sum() - D[i <= -1].sum()

    a, b, c = g0 / 2.0, imbalance, s0 - g0 / 2.0
    disc = b * b - 4 * a * c
    if disc < 0:
        r = -b / (2 * a)
    else:
        r = (-b + math.sqrt(disc)) / (2 * a)
    return DihEstimate(ratio=1.0 - r)
