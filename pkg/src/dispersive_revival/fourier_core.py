"""Truncated Fourier series on [0, 2*pi), exact coefficients of piecewise
polynomials, grid evaluation, periodic convolution, the Q_N polynomials with
1/k**N coefficients, and small cyclic DFTs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact import FC_I, FC_ONE, FracComplex
from .piecewise import TWO_PI, PiecewisePolynomial

# Default truncation: modes -2001..2001, i.e. 1001 positive odd modes, the
# resolution used for all reference profiles.
DEFAULT_TRUNCATION = 2001


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Coefficients c_k for k = -M..M of sum_k c_k exp(i*k*x)."""

    coeffs: np.ndarray
    real_valued: bool = False

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) % 2 == 0:
            raise ValueError("coefficient array must have odd length 2M+1")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def k_array(self) -> np.ndarray:
        m = self.truncation
        return np.arange(-m, m + 1)

    def __getitem__(self, k: int) -> complex:
        m = self.truncation
        if abs(k) > m:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + m])

    def conjugate_symmetry_error(self) -> float:
        """Max |c(-k) - conj(c(k))|, the real-valuedness residual."""
        return float(np.max(np.abs(self.coeffs[::-1] - np.conj(self.coeffs))))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples at the uniform grid x_m = 2*pi*m/n, m = 0..n-1."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 1 or len(s) < 2:
            raise ValueError("need at least two samples on the period")
        object.__setattr__(self, "samples", s)

    @property
    def n(self) -> int:
        return len(self.samples)

    def x(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n


def zeros_series(M: int, real_valued: bool = True) -> FourierSeries:
    return FourierSeries(np.zeros(2 * M + 1, dtype=complex), real_valued)


def coeffs_of_step_sigma(M: int = DEFAULT_TRUNCATION) -> FourierSeries:
    """Coefficients of the centered step (-1 then +1): 2i/(pi*k) on odd k."""
    k = np.arange(-M, M + 1)
    c = np.zeros(2 * M + 1, dtype=complex)
    odd = k % 2 != 0
    c[odd] = 2j / (math.pi * k[odd])
    return FourierSeries(c, real_valued=True)


def coeffs_of_unit_step(M: int = DEFAULT_TRUNCATION) -> FourierSeries:
    """Coefficients of the unit step (0 then 1): 1/2 at k=0, i/(pi*k) on odd k."""
    k = np.arange(-M, M + 1)
    c = np.zeros(2 * M + 1, dtype=complex)
    odd = k % 2 != 0
    c[odd] = 1j / (math.pi * k[odd])
    c[M] = 0.5
    return FourierSeries(c, real_valued=True)


def coeffs_of_sin(M: int = DEFAULT_TRUNCATION) -> FourierSeries:
    c = np.zeros(2 * M + 1, dtype=complex)
    c[M + 1] = -0.5j
    c[M - 1] = 0.5j
    return FourierSeries(c, real_valued=True)


def _unit_phases(r: Fraction, k: np.ndarray) -> np.ndarray:
    """exp(-i*k*pi*r) with the phase reduced exactly in integer arithmetic."""
    num, den = r.numerator, r.denominator
    if np.max(np.abs(k)).item() * abs(num) >= 2 ** 62:
        raise OverflowError("phase reduction would overflow int64")
    m = (k.astype(np.int64) * num) % (2 * den)
    return np.exp(-1j * math.pi * m / den)


def coeffs_of_piecewise_poly(
    p: PiecewisePolynomial, M: int = DEFAULT_TRUNCATION
) -> FourierSeries:
    """Exact analytic Fourier coefficients of a piecewise polynomial.

    Integration by parts per piece; no quadrature is involved, so the only
    error is float rounding.
    """
    k = np.arange(-M, M + 1)
    nz = k != 0
    kn = k[nz]
    c = -1j * kn.astype(float)
    total = np.zeros(2 * M + 1, dtype=complex)

    ends = list(p.breaks[1:]) + [Fraction(2)]
    for a_frac, b_frac, coeffs in zip(p.breaks, ends, p.pieces):
        a = float(a_frac) * math.pi
        b = float(b_frac) * math.pi
        # antiderivative of p(x)e^{-ikx}: e^{-ikx} * sum_m (-1)^m p^(m)(x)/c^(m+1)
        derivs = [np.asarray(coeffs)]
        while len(derivs[-1]) > 1:
            d = derivs[-1]
            derivs.append(d[1:] * np.arange(1, len(d)))
        s_a = np.zeros(len(kn), dtype=complex)
        s_b = np.zeros(len(kn), dtype=complex)
        cinv = 1.0 / c
        cpow = cinv.copy()
        for m, d in enumerate(derivs):
            sign = -1.0 if m % 2 else 1.0
            s_a += sign * np.polynomial.polynomial.polyval(a, d) * cpow
            s_b += sign * np.polynomial.polynomial.polyval(b, d) * cpow
            cpow = cpow * cinv
        ph_a = _unit_phases(a_frac, kn)
        ph_b = _unit_phases(b_frac, kn)
        total[nz] += (ph_b * s_b - ph_a * s_a) / TWO_PI
        # k = 0: plain integral of the piece
        powers = np.arange(1, len(coeffs) + 1)
        total[M] += np.sum(coeffs * (b ** powers - a ** powers) / powers) / TWO_PI

    scale = max(float(np.max(np.abs(c))) for c in p.pieces) or 1.0
    real = all(float(np.max(np.abs(c.imag))) <= 1e-14 * scale for c in p.pieces)
    return FourierSeries(total, real_valued=real)


def evaluate_series(s: FourierSeries, n: int) -> GridFunction:
    """Samples of sum_k c_k exp(i*k*x_m) on the n-point grid.

    Requires n >= 2M+1 so that modes occupy distinct residues mod n (exact
    evaluation through a single inverse FFT, no aliasing).
    """
    m = s.truncation
    if n < 2 * m + 1:
        raise ValueError(f"grid of {n} points aliases a series with M={m}; need n >= {2 * m + 1}")
    buf = np.zeros(n, dtype=complex)
    k = s.k_array()
    buf[np.mod(k, n)] = s.coeffs
    return GridFunction(np.fft.ifft(buf) * n)


def series_from_grid(g: GridFunction, M: int) -> FourierSeries:
    """Trigonometric interpolation coefficients of grid samples, k = -M..M."""
    n = g.n
    if n < 2 * M + 1:
        raise ValueError("grid too coarse for the requested truncation")
    ft = np.fft.fft(g.samples) / n
    k = np.arange(-M, M + 1)
    return FourierSeries(ft[np.mod(k, n)])


def periodic_convolution(fhat: FourierSeries, ghat: FourierSeries) -> FourierSeries:
    """Coefficients of the 2*pi-periodic convolution (normalized by 1/2*pi)."""
    if fhat.truncation != ghat.truncation:
        raise ValueError("convolution requires equal truncations")
    return FourierSeries(
        fhat.coeffs * ghat.coeffs,
        real_valued=fhat.real_valued and ghat.real_valued,
    )


# -- the Q_N polynomials -------------------------------------------------
#
# Q_N is the degree-N polynomial on [0, 2*pi) whose Fourier coefficients are
# exactly k**(-N) for k != 0.  Computed by an inductive formula; coefficients
# are Gaussian rationals times powers of pi (the coefficient of x**l carries
# pi**(N-l)), so we store the scaled form exactly.

QN_FLOAT_CAP = 12  # float conversion is safe up to here; beyond, use the exact form


@lru_cache(maxsize=None)
def qn_coefficients_exact(N: int) -> tuple:
    """Exact scaled coefficients gamma_l with Q_N(x) = sum_l gamma_l pi^(N-l) x^l."""
    if N < 1:
        raise ValueError("N must be >= 1")
    coeffs = [FracComplex() for _ in range(N + 1)]
    sign = Fraction(1) if (N - 1) % 2 == 0 else Fraction(-1)
    minus_i = -FC_I
    mi_pow = FC_ONE
    for _ in range(N):
        mi_pow = mi_pow * minus_i
    coeffs[N] = mi_pow / (sign * math.factorial(N))
    for ell in range(1, N):
        # (2i)^(N-ell) / (N-ell+1)!
        factor = FC_ONE
        two_i = FracComplex(Fraction(0), Fraction(2))
        for _ in range(N - ell):
            factor = factor * two_i
        factor = factor / math.factorial(N - ell + 1)
        sub = qn_coefficients_exact(ell)
        for i, gi in enumerate(sub):
            coeffs[i] = coeffs[i] - factor * gi
    return tuple(coeffs)


def qn_mean_exact(N: int) -> FracComplex:
    """Mean of Q_N over the period, as a Gaussian rational multiple of pi**N."""
    total = FracComplex()
    for ell, g in enumerate(qn_coefficients_exact(N)):
        total = total + g * Fraction(2 ** ell, ell + 1)
    return total


def qn_polynomial(N: int) -> PiecewisePolynomial:
    """Q_N as a single-piece polynomial; capped at N=12 in floating point."""
    if N > QN_FLOAT_CAP:
        raise ValueError(
            f"float coefficients are only reliable up to N={QN_FLOAT_CAP}; "
            "use qn_coefficients_exact for larger N"
        )
    gammas = qn_coefficients_exact(N)
    coeffs = np.array(
        [complex(g) * math.pi ** (N - ell) for ell, g in enumerate(gammas)],
        dtype=complex,
    )
    return PiecewisePolynomial((Fraction(0),), (coeffs,))


def antiderivative(p: PiecewisePolynomial) -> PiecewisePolynomial:
    """Integral from the left period endpoint (continuous, 0 at x=0)."""
    return p.antiderivative()


def dft_cyclic(values, inverse: bool = False) -> np.ndarray:
    """Plain O(L^2) cyclic DFT; the inverse carries the 1/L normalization."""
    x = np.asarray(values, dtype=complex)
    L = len(x)
    if L < 1:
        raise ValueError("empty sequence")
    j = np.arange(L)
    sign = 1j if inverse else -1j
    w = np.exp(sign * TWO_PI * np.outer(j, j) / L)
    out = w @ x
    return out / L if inverse else out
