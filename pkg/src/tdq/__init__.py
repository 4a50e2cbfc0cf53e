"""Quantized charge in a superconductor with time-dependent conductivity.

Core objects: SuperconductorParams / ConductivityModel describe the
system, the dynamics module solves the Milne-Pinney amplitude (exactly
via Bessel functions or numerically), observables evaluates the exact
quantum states, and information computes Shannon entropy,
disequilibrium, and statistical complexity.
"""

from .dynamics import (
    ClassicalState,
    ConductivityModel,
    PinneyState,
    SuperconductorParams,
    L_closed_form,
    invariant_value,
    omega_sq,
    rho_analytic,
    solve_classical,
    solve_pinney_numeric,
)
from .information import (
    CoefficientVector,
    MeasureSet,
    coefficients,
    complexity,
    disequilibrium_closed_form,
    disequilibrium_quadrature,
    entropy_closed_form,
    entropy_quadrature,
    measures_over_time,
)
from .observables import (
    DensityProfile,
    QuantumSnapshot,
    density_profile,
    density_values,
    energy_mean,
    make_snapshot,
    moments,
    phase,
    truncation_radius,
    uncertainty_product,
    wavefunction,
)
from .special_functions import (
    HermiteTable,
    QuadratureRule,
    bell_partial,
    bessel_j,
    bessel_j_prime,
    bessel_y,
    bessel_y_prime,
    dawson,
    gamma_fn,
    gauss_legendre,
    hermite,
    hyp1f1_special,
    hyp2f2_special,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"
