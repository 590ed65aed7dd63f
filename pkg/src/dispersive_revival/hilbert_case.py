"""The non-polynomial showcase: u_tt = H[u_xxx] with the periodic Hilbert
transform H, whose dispersion relation is |k|**(3/2).

The symbol of H is -i*sign(k), so H applied to the third derivative has
symbol -|k|**3 and the bidirectional frequency is |k|**(3/2) -- a
non-integral exponent, hence no rational-time revival: the profile stays
fractal at every time.  Everything is evaluated on the Fourier side.
"""

from __future__ import annotations

import numpy as np

from .dispersion import FractionalMonomial
from .fourier_core import FourierSeries
from .solver import linear_evolve

THREE_HALVES = FractionalMonomial(1.5)


def hilbert_symbol(k):
    """Fourier multiplier of the periodic Hilbert transform: -i*sign(k)."""
    ka = np.asarray(k)
    return -1j * np.sign(ka)


def evolve_hilbert(fhat: FourierSeries, ghat: FourierSeries, t: float) -> FourierSeries:
    """Mode-wise evolution under omega(k) = |k|**(3/2)."""
    return linear_evolve(THREE_HALVES, fhat, ghat, t)
