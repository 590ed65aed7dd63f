"""Revival and fractalization of bidirectional dispersive equations on the
circle: truncated-series evolution for general dispersion relations, exact
piecewise-polynomial closed forms at rational times, the associated odd
zeta-type sum identities, and a pseudospectral RK4 solver for the cubic beam
equation.
"""

from .dispersion import (
    BOUSSINESQ,
    DispersionSpec,
    FractionalMonomial,
    IntegralPolynomial,
    LeadingPolynomial,
    Monomial,
    asymptotic_shadow,
    leading_polynomial,
    omega,
    parse_dispersion,
    rational_time_rescale,
)
from .exact import FracComplex, PiValue, ScaledPiecewise
from .fourier_core import (
    DEFAULT_TRUNCATION,
    FourierSeries,
    GridFunction,
    antiderivative,
    coeffs_of_piecewise_poly,
    coeffs_of_sin,
    coeffs_of_step_sigma,
    coeffs_of_unit_step,
    dft_cyclic,
    evaluate_series,
    periodic_convolution,
    qn_coefficients_exact,
    qn_mean_exact,
    qn_polynomial,
    series_from_grid,
    zeros_series,
)
from .piecewise import PiecewisePolynomial, from_box_values, step_sigma, unit_step
from .revival import (
    BoxExpansion,
    RationalTime,
    RevivalKernel,
    apply_kernel,
    beam_closed_form,
    box_expansion_cos,
    box_expansion_sin,
    corollary_step_closed_form,
    monomial_closed_form,
    revival_constant_series,
    revival_kernel,
    sin_box_antiderivative,
)
from .solver import (
    BeamParams,
    NonFiniteStateError,
    SpectralState,
    energy,
    evolve_nonlinear,
    linear_evolve,
    make_state,
    nonlinear_rhs,
    rk4_step,
    stable_dt,
    state_to_grid,
)
from .zeta import (
    ZetaLedger,
    gamma_identity_rhs,
    sigma_partial_sum,
    sigma_tau_recursion,
    tau_partial_sum,
    zeta_from_sigma,
    zeta_partial_sum,
)
from .analysis import (
    ComparisonReport,
    asymptotic_gap,
    box_counting_dimension,
    compare_profiles,
    detect_jumps,
    mean_value_gap_bound,
    min_window_quadratic_residual,
    weierstrass_profile,
)
from .hilbert_case import evolve_hilbert, hilbert_symbol

__version__ = "0.1.0"
