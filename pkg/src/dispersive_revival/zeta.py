"""Odd zeta-type sums from periodicity of the rational-time closed forms.

At the times (2l-1)*pi/2 the sine box expansion of the step has integer box
values, so the whole chain -- kernel weights, N-fold antiderivative, wrap
constant -- runs in exact rational arithmetic (coefficients of pi**N).
Closing the period pins the highest-order sum, giving the recursion for

    sigma(N) = sum 1/(2n+1)**N   (even N),
    tau(N)   = sum (-1)**n/(2n+1)**N   (odd N),

seeded by sigma(2) = pi^2/8 and tau(3) = pi^3/32, and from these
zeta(N) = sigma(N)/(1 - 2**-N) for even N.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .exact import (
    FracComplex,
    PiValue,
    ScaledPiecewise,
    sin_pi_rational,
    unit_pi_rational,
)
from .revival import RationalTime, sin_box_antiderivative

Frac = Fraction


# -- exact kernel / box values (denominators 1 and 2 only) -----------------


def exact_sin_box_values(N: int, t: RationalTime) -> list:
    """Exact rational box values of the sine-evolved step; needs t.q <= 2."""
    if t.q > 2:
        raise ValueError("exact box values exist only for q <= 2 times")
    q, p = t.q, t.p
    two_q = 2 * q
    sines = [
        FracComplex(sin_pi_rational(Frac((r ** N * p) % two_q, q)))
        for r in range(two_q)
    ]
    weights = []
    for j in range(two_q):
        acc = FracComplex()
        for r in range(two_q):
            acc = acc + sines[r] * unit_pi_rational(Frac((r * j) % two_q, q))
        weights.append(acc / two_q)
    sigma_box = [Frac(-1)] * q + [Frac(1)] * q
    values = []
    for m in range(two_q):
        acc = FracComplex()
        for j in range(two_q):
            acc = acc + weights[j] * sigma_box[(m - j) % two_q]
        values.append(acc)
    if N % 2 == 1:
        values = [FracComplex(Frac(0), Frac(1)) * v for v in values]
    out = []
    for v in values:
        if not v.is_real:
            raise ArithmeticError("sine box values must come out real")
        out.append(v.re)
    return out


def exact_sin_box_antiderivative_end(N: int, t: RationalTime) -> PiValue:
    """Exact value at 2*pi of the N-fold antiderivative of the sine boxes."""
    values = exact_sin_box_values(N, t)
    sp = ScaledPiecewise.from_box_values(values, q=t.q)
    for _ in range(N):
        sp = sp.antiderivative()
    return sp.end_value()


# -- the periodicity identity ----------------------------------------------


def gamma_identity_rhs(N: int, t: RationalTime):
    """(pi/4) times the wrap value of the N-fold sine-box antiderivative.

    Exact (a PiValue) for q <= 2; floats otherwise.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    if t.q <= 2:
        h = exact_sin_box_antiderivative_end(N, t)
        return PiValue(h.coef / 4, h.power + 1)
    h_end = sin_box_antiderivative(N, t).end_value()
    return float((math.pi / 4.0) * h_end.real)


class ZetaLedger:
    """Exact sigma/tau values keyed by order, with provenance per entry."""

    def __init__(self):
        self.entries: dict[int, PiValue] = {}
        self.provenance: dict[int, str] = {}

    def has(self, N: int) -> bool:
        return N in self.entries

    def value(self, N: int) -> PiValue:
        self.ensure(N)
        return self.entries[N]

    def ensure(self, N: int) -> None:
        if N in self.entries:
            return
        start = 2 if N % 2 == 0 else 3
        for order in range(start, N + 1, 2):
            if order not in self.entries:
                val = sigma_tau_recursion(order, ledger=self)
                self.entries[order] = val
                self.provenance[order] = (
                    f"periodicity recursion at t = pi/2 (order {order})"
                )

    def sigma(self, N: int) -> PiValue:
        if N % 2 != 0:
            raise ValueError("sigma is defined for even N")
        return self.value(N)

    def tau(self, N: int) -> PiValue:
        if N % 2 != 1:
            raise ValueError("tau is defined for odd N")
        return self.value(N)


def sigma_tau_recursion(N: int, ledger: ZetaLedger | None = None, l: int = 1) -> PiValue:
    """Solve the wrap identity at t = (2l-1)*pi/2 for the order-N sum.

    Requires the lower-order entries of the same parity in the ledger; a
    fresh ledger is filled on demand when none is supplied.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    if l < 1:
        raise ValueError("need l >= 1")
    own = ledger is None
    if own:
        ledger = ZetaLedger()
        if N > 3:
            ledger.ensure(N - 2)

    t = RationalTime(2 * l - 1, 2)
    gamma = gamma_identity_rhs(N, t)  # exact PiValue, power N+1
    sign_l = Frac(-1) ** (l - 1)

    even = N % 2 == 0
    top_k = N // 2 if even else (N - 1) // 2
    acc = gamma.coef / sign_l  # rational coefficient of pi**(N+1)
    for k in range(1, top_k):
        order = 2 * k if even else 2 * k + 1
        if not ledger.has(order):
            raise KeyError(f"missing lower-order ledger entry for order {order}")
        low = ledger.entries[order]
        if even:
            c_k = Frac((-1) ** k * 2 ** (N - 2 * k + 1), math.factorial(N - 2 * k + 1))
        else:
            c_k = Frac((-1) ** k * 2 ** (N - 2 * k), math.factorial(N - 2 * k))
        acc -= c_k * low.coef
    c_top = Frac((-1) ** top_k * 2, 1)
    return PiValue(acc / c_top, N)


def zeta_from_sigma(N: int, ledger: ZetaLedger | None = None) -> PiValue:
    """zeta(N) = sigma(N)/(1 - 2**-N) for even N."""
    if N % 2 != 0 or N < 2:
        raise ValueError("the even chain produces zeta at even N >= 2")
    ledger = ledger or ZetaLedger()
    s = ledger.sigma(N)
    return PiValue(s.coef * Frac(2 ** N, 2 ** N - 1), N)


# -- brute-force numeric cross-checks ---------------------------------------


def sigma_partial_sum(N: int, terms: int = 10 ** 6, tail_corrected: bool = True) -> float:
    """sum over n of (2n+1)^-N, Euler-Maclaurin tail beyond `terms` terms."""
    n = np.arange(terms, dtype=float)
    s = float(np.sum((2 * n + 1) ** (-float(N))))
    if tail_corrected:
        m = 2.0 * terms + 1.0
        s += m ** (1 - N) / (2 * (N - 1)) + 0.5 * m ** (-N) + N * m ** (-N - 1) / 6.0
    return s


def tau_partial_sum(N: int, terms: int = 10 ** 6) -> float:
    """Alternating sum over n of (-1)^n (2n+1)^-N, averaged partial sums."""
    n = np.arange(terms, dtype=float)
    body = (-1.0) ** n * (2 * n + 1) ** (-float(N))
    s = float(np.sum(body))
    nxt = (-1.0) ** terms * (2.0 * terms + 1.0) ** (-float(N))
    return s + nxt / 2.0


def zeta_partial_sum(N: int, terms: int = 10 ** 6, tail_corrected: bool = True) -> float:
    """sum over n >= 1 of n^-N with an Euler-Maclaurin tail."""
    n = np.arange(1, terms + 1, dtype=float)
    s = float(np.sum(n ** (-float(N))))
    if tail_corrected:
        m = float(terms + 1)
        s += m ** (1 - N) / (N - 1) + 0.5 * m ** (-N) + N * m ** (-N - 1) / 12.0
    return s
