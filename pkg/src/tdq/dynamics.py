"""Classical charge dynamics in a superconductor with time-dependent
conductivity, and the auxiliary Milne-Pinney amplitude.

The charge obeys a damped oscillator with time-dependent coefficients,

    q'' + (sigma(t)/eps0) q' + omega^2(t) q = 0,
    omega^2(t) = c^2/lambdaL^2 + sigma_dot(t)/eps0,

and every quantum observable of the system is parameterized by rho(t),
the positive solution of the generalized Milne-Pinney equation

    rho'' + (L'/L) rho' + omega^2 rho = 1 / (L^2 rho^3),
    L(t) = exp(integral_0^t sigma/eps0),  L(0) = 1.

For the hyperbolic conductivity sigma(t) = sigma0/(A t + 1) the Pinney
equation has the exact solution

    rho(t) = sqrt(pi/(2A)) (At+1)^{(1-s)/2}
             [J_beta^2(k(At+1)) + Y_beta^2(k(At+1))]^{1/2},

with s = sigma0/(A eps0), beta = (1+s)/2, k = c/(lambdaL A).  Both the
exact formula and a general adaptive Runge-Kutta path are provided; the
Lewis-Riesenfeld invariant ties the two trajectories together and is
conserved along any consistent pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import EnvelopeError, PinneySingularityError, TimeMismatchError
from .integrate import adaptive_simpson, solve_rk45
from .special_functions import (
    _bessel_j_any,
    _bessel_y_any,
    _check_bessel_envelope,
)

_RHO_GUARD = 1e-12


@dataclass(frozen=True)
class SuperconductorParams:
    """Physical constants of one experiment.

    Figure units set A = eps0 = c = lambdaL = hbar = 1; sigma0 = 0 is the
    lossless LC limit.  lambdaL is taken as an input length, never derived
    from microscopic constants.
    """

    sigma0: float
    A: float = 1.0
    eps0: float = 1.0
    c: float = 1.0
    lambdaL: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.sigma0 < 0.0:
            raise ValueError(f"sigma0 must be >= 0, got {self.sigma0!r}")
        for name in ("A", "eps0", "c", "lambdaL", "hbar"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        s = self.decay_exponent
        root_form = 0.5 * math.sqrt(1.0 + 2.0 * s + s * s)
        if abs(root_form - self.beta) > 1e-14 * max(1.0, self.beta):
            raise ValueError(
                f"beta consistency check failed: {root_form!r} vs {self.beta!r}")

    @property
    def decay_exponent(self) -> float:
        """s = sigma0 / (A eps0), the dimensionless damping strength."""
        return self.sigma0 / (self.A * self.eps0)

    @property
    def beta(self) -> float:
        """Bessel order (1 + s)/2; the square root form is a perfect square."""
        return 0.5 * (1.0 + self.decay_exponent)

    @property
    def k(self) -> float:
        """Bessel argument scale c / (lambdaL A)."""
        return self.c / (self.lambdaL * self.A)

    @property
    def omega0_sq(self) -> float:
        """Asymptotic squared frequency c^2 / lambdaL^2."""
        return (self.c / self.lambdaL) ** 2


@dataclass(frozen=True)
class ConductivityModel:
    """sigma(t), its derivative, and the accumulated factor L(t).

    L(t) = exp(integral_0^t sigma/eps0 dt'), so L(0) = 1 always; L is
    non-decreasing whenever sigma >= 0.
    """

    kind: str
    sigma: Callable[[float], float]
    sigma_dot: Callable[[float], float]
    L: Callable[[float], float]

    @classmethod
    def hyperbolic(cls, params: SuperconductorParams) -> "ConductivityModel":
        """sigma(t) = sigma0 / (A t + 1); L(t) = (A t + 1)^s in closed form."""
        sigma0, A = params.sigma0, params.A
        return cls(
            kind="hyperbolic",
            sigma=lambda t: sigma0 / (A * t + 1.0),
            sigma_dot=lambda t: -sigma0 * A / (A * t + 1.0) ** 2,
            L=lambda t: L_closed_form(params, t),
        )

    @classmethod
    def constant(cls, sigma0: float, eps0: float = 1.0) -> "ConductivityModel":
        """Constant conductivity; sigma0 = 0 gives the LC limit with L = 1."""
        return cls(
            kind="constant",
            sigma=lambda t: sigma0,
            sigma_dot=lambda t: 0.0,
            L=lambda t: math.exp(sigma0 * t / eps0),
        )

    @classmethod
    def from_callables(cls, sigma: Callable[[float], float],
                       sigma_dot: Callable[[float], float],
                       eps0: float = 1.0) -> "ConductivityModel":
        """User-tabulated model; L integrated numerically from t = 0."""
        def L(t: float) -> float:
            return math.exp(adaptive_simpson(lambda u: sigma(u) / eps0, 0.0, t,
                                             tol=1e-10))
        return cls(kind="user-tabulated", sigma=sigma, sigma_dot=sigma_dot, L=L)


@dataclass(frozen=True)
class PinneyState:
    """Milne-Pinney amplitude and slope at one time."""

    t: float
    rho: float
    rho_dot: float
    source: str  # "analytic" or "numeric"

    def __post_init__(self):
        if not self.rho > 0.0:
            raise ValueError(f"rho must be positive, got {self.rho!r} at t={self.t!r}")


@dataclass(frozen=True)
class ClassicalState:
    """Charge trajectory point; phi = L(t) q_dot is the canonical momentum."""

    t: float
    q: float
    q_dot: float
    phi: float


def omega_sq(params: SuperconductorParams, model: ConductivityModel, t: float) -> float:
    """omega^2(t) = c^2/lambdaL^2 + sigma_dot(t)/eps0; may be negative."""
    return params.omega0_sq + model.sigma_dot(t) / params.eps0


def L_closed_form(params: SuperconductorParams, t: float) -> float:
    """L(t) = (A t + 1)^{sigma0/(A eps0)} for the hyperbolic model."""
    return (params.A * t + 1.0) ** params.decay_exponent


def rho_analytic(params: SuperconductorParams, t: float) -> PinneyState:
    """Exact Pinney amplitude for the hyperbolic model.

    The slope follows from differentiating the closed form,
        rho'/rho = p A/(A t + 1) + k A (J J' + Y Y') / (J^2 + Y^2),
    with p = (1 - s)/2 and the Bessel derivative identities
    C_nu' = C_{nu-1} - (nu/x) C_nu.  Valid for A t + 1 > 0, which allows
    the slightly negative times used by finite-difference residual checks.
    """
    tau = params.A * t + 1.0
    if tau <= 0.0:
        raise EnvelopeError(f"rho_analytic requires A t + 1 > 0, got t={t!r}")
    beta, k = params.beta, params.k
    u = k * tau
    try:
        _check_bessel_envelope(beta, u)
    except EnvelopeError as exc:
        raise EnvelopeError(
            f"rho_analytic outside Bessel envelope at sigma0={params.sigma0!r}, "
            f"t={t!r} (order {beta!r}, argument {u!r})") from exc
    j = _bessel_j_any(beta, u)
    y = _bessel_y_any(beta, u)
    jp = _bessel_j_any(beta - 1.0, u) - (beta / u) * j
    yp = _bessel_y_any(beta - 1.0, u) - (beta / u) * y
    g = j * j + y * y
    p = 0.5 * (1.0 - params.decay_exponent)
    rho = math.sqrt(math.pi / (2.0 * params.A)) * tau ** p * math.sqrt(g)
    rho_dot = rho * (p * params.A / tau + params.k * params.A * (j * jp + y * yp) / g)
    return PinneyState(t=t, rho=rho, rho_dot=rho_dot, source="analytic")


def solve_pinney_numeric(params: SuperconductorParams,
                         model: ConductivityModel,
                         rho0: float | None = None,
                         rho_dot0: float | None = None,
                         t_grid: Sequence[float] = (),
                         rtol: float = 1e-10,
                         atol: float = 1e-10) -> list[PinneyState]:
    """Integrate the Pinney equation on an ascending grid.

    Initial conditions default to the analytic values at the grid start
    (normally t = 0) for the hyperbolic model; other models must supply
    them.  Raises PinneySingularityError if rho crosses the 1e-12
    positivity guard and StepSizeUnderflowError if the controller stalls.
    """
    if len(t_grid) == 0:
        raise ValueError("t_grid must be a non-empty ascending grid")
    if rho0 is None or rho_dot0 is None:
        if model.kind != "hyperbolic":
            raise ValueError(
                "initial conditions are required for non-hyperbolic models")
        seed = rho_analytic(params, float(t_grid[0]))
        rho0, rho_dot0 = seed.rho, seed.rho_dot
    if rho0 <= 0.0:
        raise ValueError(f"rho0 must be positive, got {rho0!r}")

    eps0 = params.eps0

    def rhs(t, y):
        rho, rho_dot = y
        L = model.L(t)
        acc = (-model.sigma(t) / eps0 * rho_dot
               - omega_sq(params, model, t) * rho
               + 1.0 / (L * L * rho * rho * rho))
        return np.array((rho_dot, acc))

    def guard(t, y):
        if y[0] < _RHO_GUARD:
            raise PinneySingularityError(t)

    states = solve_rk45(rhs, t_grid[0], (rho0, rho_dot0), t_grid,
                        rtol=rtol, atol=atol, post_step=guard)
    return [PinneyState(t=float(t), rho=float(y[0]), rho_dot=float(y[1]),
                        source="numeric")
            for t, y in zip(t_grid, states)]


def solve_classical(params: SuperconductorParams,
                    model: ConductivityModel,
                    q0: float,
                    q_dot0: float,
                    t_grid: Sequence[float],
                    rtol: float = 1e-10,
                    atol: float = 1e-10) -> list[ClassicalState]:
    """Integrate the damped charge equation on an ascending grid from 0."""
    eps0 = params.eps0

    def rhs(t, y):
        q, q_dot = y
        return np.array((q_dot,
                         -model.sigma(t) / eps0 * q_dot
                         - omega_sq(params, model, t) * q))

    states = solve_rk45(rhs, t_grid[0], (q0, q_dot0), t_grid, rtol=rtol, atol=atol)
    return [ClassicalState(t=float(t), q=float(y[0]), q_dot=float(y[1]),
                           phi=model.L(float(t)) * float(y[1]))
            for t, y in zip(t_grid, states)]


def invariant_value(params: SuperconductorParams,
                    model: ConductivityModel,
                    cs: ClassicalState,
                    ps: PinneyState) -> float:
    """Lewis-Riesenfeld invariant I = [(q/rho)^2 + (rho phi - L rho' q)^2] / 2.

    Constant along any jointly integrated (charge, Pinney) pair at equal
    times; raises TimeMismatchError otherwise.
    """
    if abs(cs.t - ps.t) > 1e-12 * max(1.0, abs(cs.t)):
        raise TimeMismatchError(
            f"classical state at t={cs.t!r} but Pinney state at t={ps.t!r}")
    L = model.L(cs.t)
    stretched = cs.q / ps.rho
    conjugate = ps.rho * cs.phi - L * ps.rho_dot * cs.q
    return 0.5 * (stretched * stretched + conjugate * conjugate)
