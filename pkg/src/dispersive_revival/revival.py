"""Rational-time revival: kernels of point masses on the lattice pi*j/q,
box expansions of the step, and exact piecewise-polynomial closed forms for
monomial-dispersion evolution on the circle.

At t = pi*p/q the phase exp(i*P(k)*t) of an integer polynomial P is
2q-periodic in k, so the evolution factor acts as a finite combination of
translates by pi*j/q.  The weights come from a 2q-point inverse DFT of the
phase sequence; everything downstream (closed forms, smoothness splitting,
the odd zeta-type sums) is finite arithmetic on piecewise polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import piecewise as pw
from .dispersion import IntegralPolynomial, Monomial
from .piecewise import TWO_PI, PiecewisePolynomial


@dataclass(frozen=True)
class RationalTime:
    """Reduced fraction p/q encoding the time t = pi*p/q."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.p < 0:
            raise ValueError("need p >= 0 and q >= 1")
        g = gcd(self.p, self.q)
        if g > 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    @classmethod
    def parse(cls, text: str) -> "RationalTime":
        """Accepts 'pi', 'pi*p', 'pi*p/q', and 'pi/q'."""
        t = text.strip().lower().replace(" ", "")
        if not t.startswith("pi"):
            raise ValueError(f"rational times are written pi*p/q, got {text!r}")
        rest = t[2:]
        if rest == "":
            return cls(1, 1)
        if rest.startswith("/"):
            return cls(1, int(rest[1:]))
        if not rest.startswith("*"):
            raise ValueError(f"rational times are written pi*p/q, got {text!r}")
        body = rest[1:]
        if "/" in body:
            p_str, q_str = body.split("/", 1)
            return cls(int(p_str), int(q_str))
        return cls(int(body), 1)

    @property
    def value(self) -> float:
        return math.pi * self.p / self.q

    @property
    def frac(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"pi*{self.p}/{self.q}"


@dataclass(frozen=True, eq=False)
class RevivalKernel:
    """Weights w_j of the point-mass combination sum_j w_j delta(x - pi*j/q)."""

    q: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        if len(w) != 2 * self.q:
            raise ValueError("kernel needs 2q weights")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True, eq=False)
class BoxExpansion:
    """Piecewise-constant values v_j on the subintervals [pi*j/q, pi*(j+1)/q)."""

    q: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if len(v) != 2 * self.q:
            raise ValueError("box expansion needs 2q values")
        object.__setattr__(self, "values", v)

    def to_piecewise(self) -> PiecewisePolynomial:
        return pw.from_box_values(self.values, self.q)

    def real_values(self) -> np.ndarray:
        if np.max(np.abs(self.values.imag)) > 1e-12:
            raise ValueError("box values are not real to tolerance")
        return self.values.real.copy()


def _as_integral_polynomial(P) -> IntegralPolynomial:
    if isinstance(P, Monomial):
        return P.as_integral_polynomial()
    if isinstance(P, IntegralPolynomial):
        return P
    raise TypeError("revival kernels need an integer-coefficient dispersion")


def revival_kernel(P, t: RationalTime, trig: str = "exp") -> RevivalKernel:
    """Kernel reproducing sum_k fhat(k) trig(P(k) t) e^{ikx} as translates.

    w_j = (1/2q) sum_r trig(P(r) pi p/q) exp(i pi r j / q); phases are reduced
    mod 2q in integer arithmetic so the trig arguments are exact.
    """
    P = _as_integral_polynomial(P)
    if trig not in ("cos", "sin", "exp"):
        raise ValueError("trig must be one of cos, sin, exp")
    two_q = 2 * t.q
    # residues P(r)*p mod 2q give the exact phase angles pi*m/q
    phases = np.array(
        [math.pi * ((P(r) * t.p) % two_q) / t.q for r in range(two_q)]
    )
    if trig == "cos":
        tv = np.cos(phases).astype(complex)
    elif trig == "sin":
        tv = np.sin(phases).astype(complex)
    else:
        tv = np.exp(1j * phases)
    j = np.arange(two_q)
    # exp(i pi r j / q), again with exact integer phase reduction
    ang = math.pi * ((np.outer(j, j) % two_q) / t.q)
    w = (np.exp(1j * ang) @ tv) / two_q
    return RevivalKernel(t.q, w)


def apply_kernel(kern: RevivalKernel, f: PiecewisePolynomial) -> PiecewisePolynomial:
    """sum_j w_j f(x - pi*j/q) as an exact piecewise polynomial."""
    den = lcm(f.q_den, kern.q)
    base = f.refine_uniform(den)
    n = 2 * den
    deg = max(len(p) for p in base.pieces)
    acc = [np.zeros(deg, dtype=complex) for _ in range(n)]
    for jdx, w in enumerate(kern.weights):
        if w == 0:
            continue
        shifted = base.translate(Fraction(jdx, kern.q))
        for m in range(n):
            p = shifted.pieces[m]
            acc[m][: len(p)] += w * p
    return PiecewisePolynomial(base.breaks, tuple(acc))


def box_values_of_step(kern: RevivalKernel) -> np.ndarray:
    """Kernel applied to the centered step, reduced to 2q box values."""
    sigma_boxes = np.concatenate(
        [-np.ones(kern.q), np.ones(kern.q)]
    ).astype(complex)
    two_q = 2 * kern.q
    out = np.zeros(two_q, dtype=complex)
    for m in range(two_q):
        out[m] = np.sum(
            kern.weights * sigma_boxes[(m - np.arange(two_q)) % two_q]
        )
    return out


def box_expansion_cos(N: int, t: RationalTime) -> BoxExpansion:
    """Box values a_j of the cosine-evolved step for dispersion k**N."""
    kern = revival_kernel(Monomial(N), t, "cos")
    return BoxExpansion(t.q, box_values_of_step(kern))


def box_expansion_sin(N: int, t: RationalTime) -> BoxExpansion:
    """Box values of the sine-evolved step for dispersion k**N.

    Even N expands the sine series of the step over sine modes directly; odd
    N picks up a factor i because the expansion runs over cosine modes.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    kern = revival_kernel(Monomial(N), t, "sin")
    v = box_values_of_step(kern)
    if N % 2 == 1:
        v = 1j * v
    return BoxExpansion(t.q, v)


def iterated_antiderivative(p: PiecewisePolynomial, order: int) -> PiecewisePolynomial:
    for _ in range(order):
        p = p.antiderivative()
    return p


def sin_box_antiderivative(N: int, t: RationalTime) -> PiecewisePolynomial:
    """H(x): the N-fold antiderivative of the sine box expansion."""
    return iterated_antiderivative(box_expansion_sin(N, t).to_piecewise(), N)


def beam_closed_form(t: RationalTime) -> PiecewisePolynomial:
    """Exact piecewise quadratic for the beam evolution of the centered step.

    u(t, .) = (cosine box part) - H + C*x with H the double antiderivative of
    the sine box expansion; C is pinned by periodicity, C = H(2*pi)/(2*pi),
    never by summing a series.
    """
    if t.p < 1:
        raise ValueError("closed forms need a positive rational time")
    a_part = box_expansion_cos(2, t).to_piecewise()
    H = sin_box_antiderivative(2, t)
    C = H.end_value() / TWO_PI
    return (a_part - H).add_polynomial([0.0, C])


def revival_constant_series(N: int, t: RationalTime, j: int = 0, terms: int = 20000) -> float:
    """Truncated-series cross-check of the odd-power drift constants.

    D_j = (-1)^(j+1) * 4/(pi*(2j+1)!) * sum_n sin((2n+1)^N t)/(2n+1)^(N-2j);
    for the beam, C(t) = D_0 with N = 2.
    """
    n = np.arange(terms)
    odd = 2 * n + 1
    # exact phase reduction: (2n+1)^N * p mod 2q in integers
    two_q = 2 * t.q
    residues = np.array([(pow(int(m), N, two_q) * t.p) % two_q for m in odd])
    s = np.sum(np.sin(math.pi * residues / t.q) / odd.astype(float) ** (N - 2 * j))
    sign = -1.0 if j % 2 == 0 else 1.0
    return sign * 4.0 / (math.pi * math.factorial(2 * j + 1)) * s


def monomial_closed_form(
    N: int,
    t: RationalTime,
    f: PiecewisePolynomial,
    g: PiecewisePolynomial,
) -> PiecewisePolynomial:
    """Closed form for u_tt with dispersion k**N at a rational time.

    u = (cos kernel)f + <g> t + (sin kernel)v, where v has coefficients
    ghat(k)/k**N: v = i**N times the N-fold mean-corrected antiderivative of
    g - <g>.  Entirely finite; no truncated series appears.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    cos_k = revival_kernel(Monomial(N), t, "cos")
    sin_k = revival_kernel(Monomial(N), t, "sin")
    g_mean = g.mean()
    v = g.add_polynomial([-g_mean])
    for _ in range(N):
        v = v.antiderivative()
        v = v.add_polynomial([-v.mean()])
    v = v * (1j ** N)
    u = apply_kernel(cos_k, f) + apply_kernel(sin_k, v)
    return u.add_polynomial([g_mean * t.value])


def corollary_step_closed_form(N: int, t: RationalTime) -> PiecewisePolynomial:
    """Step-data closed form via the N-fold antiderivative route.

    u = (cos boxes) + (-1)^floor(N/2) * H_N + sum_j D_j x^(2j+1), with H_N the
    N-fold antiderivative of the sine box expansion.  The D_j are fixed by
    requiring the non-box part to close up periodically: matching derivatives
    of even order at the period wrap gives a triangular system solved exactly;
    the odd-order conditions hold automatically.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    a_part = box_expansion_cos(N, t).to_piecewise()
    b_pp = box_expansion_sin(N, t).to_piecewise()
    sign = (-1.0) ** (N // 2)
    n_drift = N // 2

    # chain of antiderivatives: chain[m] = m-fold antiderivative of the boxes
    chain = [b_pp]
    for _ in range(N):
        chain.append(chain[-1].antiderivative())

    D = np.zeros(n_drift, dtype=complex)
    for s in range(n_drift - 1, -1, -1):
        # d^(2s)/dx^(2s) of the wrap mismatch must vanish
        h_end = chain[N - 2 * s].end_value()
        acc = sign * h_end
        for j in range(s + 1, n_drift):
            fall = math.factorial(2 * j + 1) // math.factorial(2 * j + 1 - 2 * s)
            acc += D[j] * fall * TWO_PI ** (2 * j + 1 - 2 * s)
        fall_s = math.factorial(2 * s + 1)
        D[s] = -acc / (fall_s * TWO_PI)

    drift = np.zeros(2 * n_drift, dtype=complex)
    for j in range(n_drift):
        drift[2 * j + 1] = D[j]
    u = a_part + chain[N] * sign
    return u.add_polynomial(drift)
