"""Dispersion relations omega(k) for bidirectional equations on the circle,
and their classification for the rational-time revival machinery.

Supported families: pure monomials k**N, integer-coefficient polynomials,
the Boussinesq relation k*sqrt(k**2/3 + 1), and fractional monomials
|k|**alpha.  ``omega`` always returns the nonnegative branch; callers attach
the +- signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Monomial:
    """omega(k) = |k|**N with integer N >= 2."""

    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("monomial dispersion needs N >= 2")

    def as_integral_polynomial(self) -> "IntegralPolynomial":
        return IntegralPolynomial((0,) * self.N + (1,))


@dataclass(frozen=True)
class IntegralPolynomial:
    """P(k) = c0 + c1*k + ... + cN*k**N with integer coefficients, cN != 0."""

    coeffs: tuple  # c0..cN

    def __post_init__(self):
        c = tuple(int(ci) for ci in self.coeffs)
        if not c or c[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, k: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc


@dataclass(frozen=True)
class SqrtPhi:
    """omega(k) = sqrt(phi(k)) for a named nonnegative even symbol phi."""

    name: str

    def __post_init__(self):
        if self.name not in _PHI_TABLE:
            raise ValueError(f"unknown symbol {self.name!r}")

    def phi(self, k):
        return _PHI_TABLE[self.name](k)


def _phi_boussinesq(k):
    k = np.asarray(k, dtype=float)
    return k * k * (k * k / 3.0 + 1.0)


_PHI_TABLE = {"boussinesq": _phi_boussinesq}

BOUSSINESQ = SqrtPhi("boussinesq")


@dataclass(frozen=True)
class FractionalMonomial:
    """omega(k) = |k|**alpha, alpha > 1 (the worked case is alpha = 3/2)."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 1:
            raise ValueError("fractional exponent must exceed 1")


DispersionSpec = Monomial | IntegralPolynomial | SqrtPhi | FractionalMonomial


def omega(spec: DispersionSpec, k):
    """Nonnegative dispersion branch omega(k); accepts scalars or arrays."""
    ka = np.asarray(k)
    if isinstance(spec, Monomial):
        return np.abs(ka.astype(float)) ** spec.N
    if isinstance(spec, IntegralPolynomial):
        acc = np.zeros(ka.shape, dtype=float)
        for c in reversed(spec.coeffs):
            acc = acc * ka + c
        return np.abs(acc)
    if isinstance(spec, SqrtPhi):
        return np.sqrt(spec.phi(ka))
    if isinstance(spec, FractionalMonomial):
        return np.abs(ka.astype(float)) ** spec.alpha
    raise TypeError(f"not a dispersion spec: {spec!r}")


@dataclass(frozen=True)
class LeadingPolynomial:
    """An integral polynomial shadow P with omega(k) ~ multiplier * P(k)."""

    polynomial: IntegralPolynomial
    multiplier: float


def leading_polynomial(spec: DispersionSpec) -> LeadingPolynomial | None:
    """Integral-polynomial large-k shadow of the dispersion, if one exists."""
    if isinstance(spec, Monomial):
        return LeadingPolynomial(spec.as_integral_polynomial(), 1.0)
    if isinstance(spec, IntegralPolynomial):
        return LeadingPolynomial(spec, 1.0)
    if isinstance(spec, SqrtPhi):
        if spec.name == "boussinesq":
            # k*sqrt(k^2/3 + 1) = k^2/sqrt(3) + sqrt(3)/2 + O(1/k^2)
            return LeadingPolynomial(IntegralPolynomial((0, 0, 1)), 1.0 / math.sqrt(3.0))
        return None
    if isinstance(spec, FractionalMonomial):
        return None
    raise TypeError(f"not a dispersion spec: {spec!r}")


def asymptotic_shadow(spec: DispersionSpec) -> LeadingPolynomial | None:
    """Integral-polynomial shadow with O(1/k^2) phase residual.

    Unlike ``leading_polynomial`` this absorbs the constant term of the
    large-k expansion, which is what the tail estimates need: for the
    Boussinesq relation, omega(k) = (2k^2+3)/(2*sqrt(3)) + O(1/k^2).
    """
    if isinstance(spec, (Monomial, IntegralPolynomial)):
        return leading_polynomial(spec)
    if isinstance(spec, SqrtPhi) and spec.name == "boussinesq":
        return LeadingPolynomial(IntegralPolynomial((3, 0, 2)), 1.0 / (2.0 * math.sqrt(3.0)))
    return None


def rational_time_rescale(spec: DispersionSpec) -> float:
    """Factor s such that the revival kernel is computed at time t/s.

    For dispersion relations that are a scalar multiple of an integral
    polynomial at leading order, revivals occur at times t with t*multiplier
    in pi*Q; identity for genuinely integral relations.
    """
    lead = leading_polynomial(spec)
    if lead is None:
        raise ValueError("no polynomial shadow; no rational-time structure")
    return 1.0 / lead.multiplier


def parse_dispersion(text: str) -> DispersionSpec:
    """CLI spellings: monomial:N, poly:c0,c1,...,cN, boussinesq, frac:alpha."""
    t = text.strip().lower()
    if t == "boussinesq":
        return BOUSSINESQ
    if t.startswith("monomial:"):
        return Monomial(int(t.split(":", 1)[1]))
    if t.startswith("poly:"):
        coeffs = tuple(int(c) for c in t.split(":", 1)[1].split(","))
        return IntegralPolynomial(coeffs)
    if t.startswith("frac:"):
        return FractionalMonomial(float(t.split(":", 1)[1]))
    raise ValueError(f"unrecognized dispersion spec {text!r}")
