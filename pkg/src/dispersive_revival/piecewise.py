"""Piecewise polynomials on [0, 2*pi) with breakpoints at exact rational
multiples of pi.

Breakpoints are stored as Fractions r (meaning x = pi*r) so jump locations
are exact and translation by pi*j/q is a lattice operation; piece
coefficients are complex floats, constant term first.  Evaluation at a
breakpoint is left-closed: the piece starting there wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

TWO_PI = 2.0 * math.pi


def _poly_shift(coeffs: np.ndarray, delta: float) -> np.ndarray:
    """Coefficients of p(x + delta) given those of p(x)."""
    out = np.zeros_like(coeffs)
    for j, cj in enumerate(coeffs):
        if cj == 0:
            continue
        for i in range(j + 1):
            out[i] += cj * math.comb(j, i) * delta ** (j - i)
    return out


def _poly_eval(coeffs: np.ndarray, x):
    return np.polynomial.polynomial.polyval(x, coeffs)


@dataclass(frozen=True, eq=False)
class PiecewisePolynomial:
    breaks: tuple  # Fractions in [0, 2), strictly increasing, first == 0
    pieces: tuple  # complex coefficient arrays, one per break

    def __post_init__(self):
        breaks = tuple(Fraction(b) for b in self.breaks)
        if not breaks or breaks[0] != 0:
            raise ValueError("first breakpoint must be 0")
        if any(b2 <= b1 for b1, b2 in zip(breaks, breaks[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if breaks[-1] >= 2:
            raise ValueError("breakpoints live in [0, 2) in units of pi")
        if len(self.pieces) != len(breaks):
            raise ValueError("need one coefficient vector per breakpoint")
        pieces = tuple(
            np.atleast_1d(np.asarray(p, dtype=complex)) for p in self.pieces
        )
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "pieces", pieces)

    # -- basic queries ----------------------------------------------------

    @property
    def q_den(self) -> int:
        return lcm(*(b.denominator for b in self.breaks)) if self.breaks else 1

    @property
    def degree(self) -> int:
        return max(len(p) - 1 for p in self.pieces)

    def break_floats(self) -> np.ndarray:
        return np.array([float(b) * math.pi for b in self.breaks])

    # -- evaluation --------------------------------------------------------

    def evaluate(self, x) -> np.ndarray:
        """Values at x (wrapped mod 2*pi); left-closed at breakpoints."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        xw = np.mod(x, TWO_PI)
        idx = np.searchsorted(self.break_floats(), xw, side="right") - 1
        out = np.empty(x.shape, dtype=complex)
        for i, coeffs in enumerate(self.pieces):
            sel = idx == i
            if sel.any():
                out[sel] = _poly_eval(coeffs, xw[sel])
        return out

    def eval_at_rational(self, r: Fraction) -> complex:
        """Value at x = pi*r with the piece chosen by exact comparison.

        r = 2 means the left endpoint limit at 2*pi (last piece).
        """
        r = Fraction(r)
        if not 0 <= r <= 2:
            raise ValueError("r must lie in [0, 2]")
        if r == 2:
            i = len(self.breaks) - 1
        else:
            i = 0
            for j, b in enumerate(self.breaks):
                if b <= r:
                    i = j
                else:
                    break
        return complex(_poly_eval(self.pieces[i], float(r) * math.pi))

    def end_value(self) -> complex:
        """Left limit at x = 2*pi."""
        return self.eval_at_rational(Fraction(2))

    # -- calculus ----------------------------------------------------------

    def antiderivative(self) -> "PiecewisePolynomial":
        """Integral from x = 0; continuous, value 0 at 0."""
        acc = 0.0 + 0.0j
        new_pieces = []
        bf = self.break_floats()
        ends = np.append(bf[1:], TWO_PI)
        for a, b, coeffs in zip(bf, ends, self.pieces):
            integ = np.concatenate(([0.0], coeffs / np.arange(1, len(coeffs) + 1)))
            integ[0] = acc - _poly_eval(integ, a)
            new_pieces.append(integ)
            acc = _poly_eval(integ, b)
        return PiecewisePolynomial(self.breaks, tuple(new_pieces))

    def derivative(self) -> "PiecewisePolynomial":
        new_pieces = []
        for coeffs in self.pieces:
            if len(coeffs) == 1:
                new_pieces.append(np.zeros(1, dtype=complex))
            else:
                new_pieces.append(coeffs[1:] * np.arange(1, len(coeffs)))
        return PiecewisePolynomial(self.breaks, tuple(new_pieces))

    def mean(self) -> complex:
        """(1/2*pi) * integral over the period."""
        total = 0.0 + 0.0j
        bf = self.break_floats()
        ends = np.append(bf[1:], TWO_PI)
        for a, b, coeffs in zip(bf, ends, self.pieces):
            powers = np.arange(1, len(coeffs) + 1)
            total += np.sum(coeffs * (b ** powers - a ** powers) / powers)
        return complex(total / TWO_PI)

    # -- structure ---------------------------------------------------------

    def refine_uniform(self, den: int) -> "PiecewisePolynomial":
        """Re-express on the uniform grid j/den (den a multiple of q_den)."""
        if den % self.q_den != 0:
            raise ValueError("refinement grid must contain existing breakpoints")
        new_breaks = tuple(Fraction(j, den) for j in range(2 * den))
        idx = []
        i = 0
        for b in new_breaks:
            while i + 1 < len(self.breaks) and self.breaks[i + 1] <= b:
                i += 1
            idx.append(i)
        new_pieces = tuple(self.pieces[i].copy() for i in idx)
        return PiecewisePolynomial(new_breaks, new_pieces)

    def translate(self, shift: Fraction) -> "PiecewisePolynomial":
        """Periodic translate f(x - pi*shift) for rational shift."""
        shift = Fraction(shift) % 2
        den = lcm(self.q_den, shift.denominator)
        f = self.refine_uniform(den)
        steps = int(shift * den)
        n = 2 * den
        new_pieces = []
        for m in range(n):
            m_src = (m - steps) % n
            delta = math.pi * (m_src - m) / den
            new_pieces.append(_poly_shift(f.pieces[m_src], delta))
        return PiecewisePolynomial(f.breaks, tuple(new_pieces))

    def _merged_with(self, other: "PiecewisePolynomial"):
        breaks = sorted(set(self.breaks) | set(other.breaks))
        return breaks

    def _pieces_on(self, breaks) -> list:
        out = []
        i = 0
        for b in breaks:
            while i + 1 < len(self.breaks) and self.breaks[i + 1] <= b:
                i += 1
            out.append(self.pieces[i])
        return out

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        breaks = self._merged_with(other)
        mine = self._pieces_on(breaks)
        theirs = other._pieces_on(breaks)
        pieces = []
        for p1, p2 in zip(mine, theirs):
            d = max(len(p1), len(p2))
            c = np.zeros(d, dtype=complex)
            c[: len(p1)] += p1
            c[: len(p2)] += p2
            pieces.append(c)
        return PiecewisePolynomial(tuple(breaks), tuple(pieces))

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self + (-other)

    def __neg__(self) -> "PiecewisePolynomial":
        return self * (-1.0)

    def __mul__(self, scalar) -> "PiecewisePolynomial":
        s = complex(scalar)
        return PiecewisePolynomial(
            self.breaks, tuple(p * s for p in self.pieces)
        )

    __rmul__ = __mul__

    def add_polynomial(self, coeffs) -> "PiecewisePolynomial":
        """Add a single global polynomial (constant term first) to every piece."""
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        pieces = []
        for p in self.pieces:
            d = max(len(p), len(c))
            out = np.zeros(d, dtype=complex)
            out[: len(p)] += p
            out[: len(c)] += c
            pieces.append(out)
        return PiecewisePolynomial(self.breaks, tuple(pieces))

    def max_coeff_diff(self, other: "PiecewisePolynomial") -> float:
        """Max absolute difference of piece coefficients on the merged grid."""
        breaks = self._merged_with(other)
        mine = self._pieces_on(breaks)
        theirs = other._pieces_on(breaks)
        worst = 0.0
        for p1, p2 in zip(mine, theirs):
            d = max(len(p1), len(p2))
            c1 = np.zeros(d, dtype=complex)
            c2 = np.zeros(d, dtype=complex)
            c1[: len(p1)] = p1
            c2[: len(p2)] = p2
            worst = max(worst, float(np.max(np.abs(c1 - c2))))
        return worst


def constant(value: complex) -> PiecewisePolynomial:
    return PiecewisePolynomial((Fraction(0),), (np.array([value], dtype=complex),))


def from_box_values(values, q: int) -> PiecewisePolynomial:
    """Piecewise constant with value values[j] on [pi*j/q, pi*(j+1)/q)."""
    values = np.asarray(values, dtype=complex)
    if len(values) != 2 * q:
        raise ValueError("need 2q box values")
    breaks = tuple(Fraction(j, q) for j in range(2 * q))
    pieces = tuple(np.array([v], dtype=complex) for v in values)
    return PiecewisePolynomial(breaks, pieces)


def step_sigma() -> PiecewisePolynomial:
    """The centered step: -1 on [0, pi), +1 on [pi, 2*pi)."""
    return from_box_values([-1.0, 1.0], q=1)


def unit_step() -> PiecewisePolynomial:
    """The unit step: 0 on [0, pi), 1 on [pi, 2*pi)."""
    return from_box_values([0.0, 1.0], q=1)
