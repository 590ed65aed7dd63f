"""Quantitative diagnostics: sup-norm comparison away from jumps,
box-counting dimension of profile graphs, asymptotic-shadow gaps for
near-polynomial dispersion relations, jump detection, and a discrete
Chebyshev lower bound on how well any few-piece quadratic can track a
profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .dispersion import DispersionSpec, asymptotic_shadow, omega
from .fourier_core import (
    DEFAULT_TRUNCATION,
    FourierSeries,
    GridFunction,
    coeffs_of_step_sigma,
    evaluate_series,
)
from .piecewise import TWO_PI, PiecewisePolynomial
from .revival import RationalTime

DEFAULT_EXCLUSION = 0.1
DEFAULT_COMPARE_GRID = 4096  # >= 2*M+1 at the default truncation
DEFAULT_SCALES = tuple(2.0 ** -s for s in range(4, 11))


@dataclass(frozen=True)
class ComparisonReport:
    sup_error_excluded: float
    jump_set: tuple  # breakpoints, Fractions in units of pi
    exclusion_radius: float
    grid_n: int


def _circular_distance(x: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Distance on the circle from each x to the nearest of the points."""
    if len(points) == 0:
        return np.full_like(x, np.inf)
    d = np.abs(x[:, None] - points[None, :])
    d = np.minimum(d, TWO_PI - d)
    return d.min(axis=1)


def compare_profiles(
    a: GridFunction, b: PiecewisePolynomial, delta: float = DEFAULT_EXCLUSION
) -> ComparisonReport:
    """Sup of |a - b| over samples farther than delta from every breakpoint."""
    limit = math.pi / (4 * b.q_den)
    if not 0 < delta < limit:
        raise ValueError(f"delta must lie in (0, {limit:.4g}) for this breakpoint grid")
    x = a.x()
    dist = _circular_distance(x, b.break_floats())
    mask = dist > delta
    if not mask.any():
        raise ValueError("exclusion radius leaves no samples")
    vals = b.evaluate(x[mask])
    err = float(np.max(np.abs(a.samples[mask] - vals)))
    return ComparisonReport(err, tuple(b.breaks), delta, a.n)


def box_counting_dimension(g, scales=DEFAULT_SCALES) -> float:
    """Box-counting slope of the graph {(x_m, Re g_m)} in the unit square.

    Degenerate (constant) input has dimension 1 by convention.
    """
    samples = g.samples if isinstance(g, GridFunction) else np.asarray(g)
    y = np.real(samples).astype(float)
    n = len(y)
    scales = sorted(scales, reverse=True)
    if len(scales) < 2:
        raise ValueError("need at least two scales")
    lo, hi = float(np.min(y)), float(np.max(y))
    if hi - lo < 1e-12:
        return 1.0
    yn = (y - lo) / (hi - lo)
    counts = []
    for eps in scales:
        cols = int(round(1.0 / eps))
        edges = (np.arange(n) * cols) // n
        total = 0
        for c in range(cols):
            seg = yn[edges == c]
            if len(seg) == 0:
                continue
            total += int(np.floor(seg.max() / eps)) - int(np.floor(seg.min() / eps)) + 1
        counts.append(total)
    logs = np.log(1.0 / np.asarray(scales))
    logn = np.log(np.asarray(counts, dtype=float))
    slope = np.polyfit(logs, logn, 1)[0]
    return float(slope)


def weierstrass_profile(n: int = 2 ** 16, terms: int = 20) -> GridFunction:
    """Calibration curve sum_m 2^(-m/2) cos(2^m x); graph dimension 3/2."""
    x = TWO_PI * np.arange(n) / n
    y = np.zeros(n)
    for m in range(terms):
        y += 2.0 ** (-m / 2.0) * np.cos(2.0 ** m * x)
    return GridFunction(y.astype(complex))


def asymptotic_gap(
    spec: DispersionSpec, t, M: int = DEFAULT_TRUNCATION, grid: int = 4096
) -> float:
    """Sup-norm gap between the cosine-evolved step under omega and under its
    integral-polynomial shadow (times its multiplier).

    The shadow includes the constant term of the large-k expansion so the
    per-mode phase residual is O(1/k^2) and the gap is t-uniformly bounded.
    """
    lead = asymptotic_shadow(spec)
    if lead is None:
        raise ValueError("dispersion has no integral-polynomial shadow")
    t_val = t.value if isinstance(t, RationalTime) else float(t)
    sig = coeffs_of_step_sigma(M)
    k = sig.k_array()
    w_full = np.asarray(omega(spec, k), dtype=float)
    p_vals = np.array([lead.polynomial(int(ki)) for ki in k], dtype=float)
    w_poly = np.abs(lead.multiplier * p_vals)
    diff = FourierSeries(sig.coeffs * (np.cos(w_full * t_val) - np.cos(w_poly * t_val)))
    prof = evaluate_series(diff, grid)
    return float(np.max(np.abs(prof.samples)))


def mean_value_gap_bound(
    spec: DispersionSpec, t, M: int = DEFAULT_TRUNCATION
) -> float:
    """Per-mode triangle bound sum_k |fhat(k)| |cos(omega t) - cos(shadow t)|.

    Dominates the measured gap for the same truncation; the summand decays
    like 1/k^2 once the shadow absorbs the constant phase offset.
    """
    lead = asymptotic_shadow(spec)
    if lead is None:
        raise ValueError("dispersion has no integral-polynomial shadow")
    t_val = t.value if isinstance(t, RationalTime) else float(t)
    sig = coeffs_of_step_sigma(M)
    k = sig.k_array()
    w_full = np.asarray(omega(spec, k), dtype=float)
    p_vals = np.array([lead.polynomial(int(ki)) for ki in k], dtype=float)
    w_poly = np.abs(lead.multiplier * p_vals)
    per_mode = np.abs(sig.coeffs) * np.abs(
        np.cos(w_full * t_val) - np.cos(w_poly * t_val)
    )
    return float(np.sum(per_mode))


def detect_jumps(
    g: GridFunction, threshold_ratio: float = 0.4, merge_radius: float | None = None
) -> list:
    """Positions of the dominant jump discontinuities of a sampled profile.

    Looks for clusters of large first differences and returns their weighted
    centers; merge_radius defaults to eight grid spacings.
    """
    y = np.real(g.samples)
    n = g.n
    dx = TWO_PI / n
    if merge_radius is None:
        merge_radius = 8 * dx
    d = np.abs(np.diff(np.append(y, y[0])))
    thr = threshold_ratio * float(np.max(d))
    idx = np.nonzero(d > thr)[0]
    if len(idx) == 0:
        return []
    mids = (idx + 0.5) * dx
    weights = d[idx]
    clusters = [[0]]
    for i in range(1, len(idx)):
        gap = mids[i] - mids[clusters[-1][-1]]
        if gap <= merge_radius:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    # wrap-around: first and last cluster may be the same jump near x = 0
    out = []
    for cl in clusters:
        w = weights[cl]
        out.append(float(np.sum(mids[cl] * w) / np.sum(w)))
    if len(out) > 1 and (out[0] + TWO_PI - out[-1]) <= merge_radius:
        w_first = sum(weights[i] for i in clusters[0])
        w_last = sum(weights[i] for i in clusters[-1])
        merged = ((out[0] + TWO_PI) * w_first + out[-1] * w_last) / (w_first + w_last)
        out = [merged % TWO_PI] + out[1:-1]
    return sorted(out)


def _window_chebyshev_error(x: np.ndarray, y: np.ndarray, degree: int) -> float:
    """Minimal sup-norm error of a degree-d polynomial on the samples (LP)."""
    xs = (x - x.mean()) / max(x.max() - x.min(), 1e-12)
    V = np.vander(xs, degree + 1, increasing=True)
    m = len(y)
    # variables: coefficients then the error bound e; minimize e
    A = np.block([[V, -np.ones((m, 1))], [-V, -np.ones((m, 1))]])
    b = np.concatenate([y, -y])
    c = np.zeros(degree + 2)
    c[-1] = 1.0
    res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * (degree + 2), method="highs")
    if not res.success:
        raise RuntimeError(f"Chebyshev fit LP failed: {res.message}")
    return float(res.x[-1])


def min_window_quadratic_residual(
    g: GridFunction,
    window: float,
    stride: float | None = None,
    degree: int = 2,
) -> float:
    """Lower bound on the excluded-sup residual of any few-piece polynomial fit.

    Any partition of the circle into P pieces with exclusion radius delta has
    an included span of length >= (2*pi - 2*P*delta)/P, which contains a
    grid-aligned window of the given length; on that window the fit is one
    polynomial, so its residual is at least the best single-polynomial
    Chebyshev error there.  The minimum over all windows is therefore a valid
    lower bound for every admissible fit.
    """
    if stride is None:
        stride = window / 16.0
    y = np.real(g.samples)
    x = g.x()
    n = g.n
    w_pts = max(int(window / TWO_PI * n), degree + 2)
    s_pts = max(int(stride / TWO_PI * n), 1)
    best = np.inf
    xx = np.concatenate([x, x + TWO_PI])
    yy = np.concatenate([y, y])
    for start in range(0, n, s_pts):
        seg_x = xx[start : start + w_pts]
        seg_y = yy[start : start + w_pts]
        err = _window_chebyshev_error(seg_x, seg_y, degree)
        if err < best:
            best = err
    return float(best)
