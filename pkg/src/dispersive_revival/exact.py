"""Exact rational arithmetic for the identity-grade code paths.

Floating point is fine for profiles; it is not fine for deriving values such
as pi^4/96 from a piecewise integration chain.  This module provides the
small amount of exact machinery those derivations need: Gaussian rationals,
unit complex numbers exp(i*pi*r) at half-integer r, real numbers of the form
(rational)*pi**n, and piecewise polynomials over Q written in the scaled
variable xi = x/pi (breakpoint grids are rational in xi, so everything stays
in Q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class FracComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "FracComplex") -> "FracComplex":
        return FracComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "FracComplex") -> "FracComplex":
        return FracComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "FracComplex":
        return FracComplex(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, FracComplex):
            return FracComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        f = _frac(other)
        return FracComplex(self.re * f, self.im * f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FracComplex):
            d = other.re * other.re + other.im * other.im
            if d == 0:
                raise ZeroDivisionError("division by zero FracComplex")
            return FracComplex(
                (self.re * other.re + self.im * other.im) / d,
                (self.im * other.re - self.re * other.im) / d,
            )
        f = _frac(other)
        return FracComplex(self.re / f, self.im / f)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self) -> bool:
        return self.im == 0


FC_ZERO = FracComplex()
FC_ONE = FracComplex(Fraction(1))
FC_I = FracComplex(Fraction(0), Fraction(1))


def unit_pi_rational(r: Fraction) -> FracComplex:
    """exp(i*pi*r) for r with denominator 1 or 2 (the quarter-turn lattice)."""
    r = _frac(r)
    if r.denominator not in (1, 2):
        raise ValueError(f"exp(i*pi*{r}) is not a Gaussian rational")
    m = (2 * r) % 4  # quarter turns
    table = {
        Fraction(0): FC_ONE,
        Fraction(1): FC_I,
        Fraction(2): -FC_ONE,
        Fraction(3): -FC_I,
    }
    return table[m]


def sin_pi_rational(r: Fraction) -> Fraction:
    """sin(pi*r) as an exact rational; requires denominator 1 or 2."""
    return unit_pi_rational(r).im


def cos_pi_rational(r: Fraction) -> Fraction:
    """cos(pi*r) as an exact rational; requires denominator 1 or 2."""
    return unit_pi_rational(r).re


@dataclass(frozen=True)
class PiValue:
    """Exact real number coef * pi**power."""

    coef: Fraction
    power: int

    def __post_init__(self):
        object.__setattr__(self, "coef", _frac(self.coef))
        if self.coef == 0:
            object.__setattr__(self, "power", 0)

    def __float__(self) -> float:
        return float(self.coef) * math.pi ** self.power

    def __neg__(self) -> "PiValue":
        return PiValue(-self.coef, self.power)

    def __add__(self, other: "PiValue") -> "PiValue":
        if self.coef == 0:
            return other
        if other.coef == 0:
            return self
        if self.power != other.power:
            raise ValueError("cannot add pi-values of different powers exactly")
        return PiValue(self.coef + other.coef, self.power)

    def __sub__(self, other: "PiValue") -> "PiValue":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PiValue):
            return PiValue(self.coef * other.coef, self.power + other.power)
        return PiValue(self.coef * _frac(other), self.power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiValue):
            return PiValue(self.coef / other.coef, self.power - other.power)
        return PiValue(self.coef / _frac(other), self.power)

    def __str__(self) -> str:
        c = self.coef
        if c == 0:
            return "0"
        sign = "-" if c < 0 else ""
        n, d = abs(c.numerator), c.denominator
        if self.power == 0:
            core = f"{n}" if d == 1 else f"{n}/{d}"
            return sign + core
        pi_part = "pi" if self.power == 1 else f"pi^{self.power}"
        head = pi_part if n == 1 else f"{n}*{pi_part}"
        return sign + (head if d == 1 else f"{head}/{d}")


def _poly_eval_frac(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class ScaledPiecewise:
    """Piecewise polynomial over Q in xi = x/pi, uniform breakpoints j/q on [0, 2).

    The represented function of x is pi**pi_power times the stored polynomial
    of xi; integrating in x multiplies by pi, so the chain of antiderivatives
    of a rational box expansion stays exactly representable.
    """

    q: int
    pieces: tuple  # 2q tuples of Fraction coefficients, constant term first
    pi_power: int = 0

    def __post_init__(self):
        if self.q < 1 or len(self.pieces) != 2 * self.q:
            raise ValueError("need exactly 2q pieces on the uniform grid")

    @classmethod
    def from_box_values(cls, values, q: int) -> "ScaledPiecewise":
        return cls(q=q, pieces=tuple((_frac(v),) for v in values), pi_power=0)

    def antiderivative(self) -> "ScaledPiecewise":
        """Integral in x from x = 0, continuous, value 0 at 0."""
        acc = Fraction(0)
        new_pieces = []
        for j, coeffs in enumerate(self.pieces):
            a = Fraction(j, self.q)
            integ = [Fraction(0)] + [c / (i + 1) for i, c in enumerate(coeffs)]
            integ[0] = acc - _poly_eval_frac(integ, a)
            new_pieces.append(tuple(integ))
            acc = _poly_eval_frac(integ, Fraction(j + 1, self.q))
        return ScaledPiecewise(self.q, tuple(new_pieces), self.pi_power + 1)

    def eval_scaled(self, xi: Fraction) -> Fraction:
        """Polynomial part at xi (exclude the pi**pi_power factor); left-closed."""
        xi = _frac(xi)
        if not 0 <= xi <= 2:
            raise ValueError("xi out of [0, 2]")
        if xi == 2:
            idx = 2 * self.q - 1
        else:
            # floor(xi*q) is the left-closed piece index
            idx = min(int(xi * self.q), 2 * self.q - 1)
        return _poly_eval_frac(self.pieces[idx], xi)

    def value(self, xi: Fraction) -> PiValue:
        return PiValue(self.eval_scaled(xi), self.pi_power)

    def end_value(self) -> PiValue:
        """Value at x = 2*pi (last piece extended to the closed endpoint)."""
        return PiValue(_poly_eval_frac(self.pieces[-1], Fraction(2)), self.pi_power)
