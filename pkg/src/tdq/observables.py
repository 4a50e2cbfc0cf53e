"""Exact quantum states of the charge oscillator and their observables.

The normalized solutions are Gaussian-with-complex-width Hermite states

    psi_n(q,t) = e^{i theta_n} [pi^{1/2} hbar^{1/2} n! 2^n rho]^{-1/2}
                 exp[(i L / 2 hbar)(rho'/rho + i/(L rho^2)) q^2]
                 H_n(q / (hbar^{1/2} rho)),

so the probability density reduces to the real closed form

    P(q,t) = h_n(q / (hbar^{1/2} rho))^2 / (hbar^{1/2} rho),

with h_n the orthonormal Hermite function.  Second moments and the mean
energy are closed-form in (rho, rho', L, omega^2):

    <q^2>   = hbar rho^2 (n + 1/2)
    <Phi^2> = (hbar/rho^2)(1 + L^2 rho^2 rho'^2)(n + 1/2)
    dq dPhi = hbar sqrt(1 + L^2 rho^2 rho'^2)(n + 1/2)
    <E_n>   = [(1 + L^2 rho^2 rho'^2)/(2 L^2 rho^2)
               + omega^2 rho^2 / 2] (n + 1/2) hbar
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dynamics import (
    ConductivityModel,
    PinneyState,
    SuperconductorParams,
    omega_sq,
    rho_analytic,
)
from .errors import GridCoverageWarning
from .integrate import adaptive_simpson
from .special_functions import hermite

_NORM_GUARD = 1e-6


@dataclass(frozen=True)
class QuantumSnapshot:
    """Everything a fixed-time observable needs: n plus (t, rho, rho', L, omega^2)."""

    n: int
    t: float
    rho: float
    rho_dot: float
    L: float
    omega_sq: float
    hbar: float


@dataclass(frozen=True)
class DensityProfile:
    """Probability density sampled on an ascending charge grid."""

    q_grid: np.ndarray
    p_values: np.ndarray
    snapshot: QuantumSnapshot


def make_snapshot(params: SuperconductorParams,
                  model: ConductivityModel,
                  state: PinneyState,
                  n: int) -> QuantumSnapshot:
    """Assemble a snapshot from a consistent (params, model, Pinney state) triple."""
    return QuantumSnapshot(n=n, t=state.t, rho=state.rho, rho_dot=state.rho_dot,
                           L=model.L(state.t),
                           omega_sq=omega_sq(params, model, state.t),
                           hbar=params.hbar)


def truncation_radius(snapshot: QuantumSnapshot) -> float:
    """Half-width rho sqrt(hbar) (sqrt(2n+1) + 8) beyond which P < 1e-25."""
    return snapshot.rho * math.sqrt(snapshot.hbar) * (
        math.sqrt(2.0 * snapshot.n + 1.0) + 8.0)


def phase(params: SuperconductorParams,
          model: ConductivityModel,
          n: int,
          t: float,
          rho_of_t: Callable[[float], float] | None = None) -> float:
    """Phase theta_n(t) = -(n + 1/2) integral_0^t dt' / (L rho^2).

    The amplitude trajectory comes from the closed form for the
    hyperbolic model and from the equilibrium value omega0^{-1/2} for the
    lossless constant model; any other model must pass rho_of_t.
    """
    if rho_of_t is None:
        if model.kind == "hyperbolic":
            rho_of_t = lambda u: rho_analytic(params, u).rho
        elif model.kind == "constant" and model.sigma(0.0) == 0.0:
            rho_eq = params.omega0_sq ** -0.25
            rho_of_t = lambda u: rho_eq
        else:
            raise ValueError(
                "phase needs rho_of_t for models without a closed-form amplitude")
    integral = adaptive_simpson(
        lambda u: 1.0 / (model.L(u) * rho_of_t(u) ** 2), 0.0, t, tol=1e-10)
    return -(n + 0.5) * integral


def wavefunction(snapshot: QuantumSnapshot, q: float, theta: float = 0.0) -> complex:
    """psi_n(q, t) including the supplied phase factor e^{i theta}.

    theta defaults to 0 because the snapshot carries no trajectory
    history; pass phase(...) for the full time-dependent solution.  The
    modulus is independent of theta and of the rho' term.
    """
    n, rho, hbar = snapshot.n, snapshot.rho, snapshot.hbar
    amplitude = (math.sqrt(math.pi) * math.sqrt(hbar)
                 * math.factorial(n) * 2.0 ** n * rho) ** -0.5
    xi = q / (math.sqrt(hbar) * rho)
    width = (1j * snapshot.L / (2.0 * hbar)) * (
        snapshot.rho_dot / rho + 1j / (snapshot.L * rho * rho))
    return (amplitude * hermite(n).evaluate(xi)
            * cmath.exp(width * q * q + 1j * theta))


def _hermite_function_values(n: int, xi: np.ndarray) -> np.ndarray:
    """Orthonormal Hermite functions h_n(xi) by the stable recurrence

    h_0 = pi^{-1/4} e^{-xi^2/2},   h_1 = sqrt(2) xi h_0,
    h_{k+1} = sqrt(2/(k+1)) xi h_k - sqrt(k/(k+1)) h_{k-1}.
    """
    h_prev = math.pi ** -0.25 * np.exp(-0.5 * xi * xi)
    if n == 0:
        return h_prev
    h = math.sqrt(2.0) * xi * h_prev
    for k in range(1, n):
        h_prev, h = h, (math.sqrt(2.0 / (k + 1)) * xi * h
                        - math.sqrt(k / (k + 1.0)) * h_prev)
    return h


def density_values(snapshot: QuantumSnapshot, q: np.ndarray) -> np.ndarray:
    """P(q, t) = |psi_n|^2 on an array of charge values (real closed form)."""
    scale = math.sqrt(snapshot.hbar) * snapshot.rho
    h = _hermite_function_values(snapshot.n, np.asarray(q, dtype=float) / scale)
    return h * h / scale


def density_profile(snapshot: QuantumSnapshot, q_grid: Sequence[float]) -> DensityProfile:
    """Density on a grid; warns when the grid misses enough mass that the
    trapezoid normalization check fails."""
    q = np.asarray(q_grid, dtype=float)
    p = density_values(snapshot, q)
    norm = float(np.trapezoid(p, q))
    if abs(norm - 1.0) > _NORM_GUARD:
        warnings.warn(
            f"density grid covers trapezoid mass {norm!r}, expected 1 within "
            f"{_NORM_GUARD}; widen [qmin, qmax] or refine the grid",
            GridCoverageWarning, stacklevel=2)
    return DensityProfile(q_grid=q, p_values=p, snapshot=snapshot)


def moments(snapshot: QuantumSnapshot) -> tuple[float, float, float, float]:
    """(<q>, <Phi>, <q^2>, <Phi^2>); the first moments vanish identically."""
    n_half = snapshot.n + 0.5
    rho2 = snapshot.rho * snapshot.rho
    cross = snapshot.L * snapshot.rho * snapshot.rho_dot
    q2 = snapshot.hbar * rho2 * n_half
    phi2 = snapshot.hbar / rho2 * (1.0 + cross * cross) * n_half
    return 0.0, 0.0, q2, phi2


def uncertainty_product(snapshot: QuantumSnapshot) -> float:
    """dq dPhi = hbar sqrt(1 + L^2 rho^2 rho'^2) (n + 1/2); floor at rho' = 0."""
    cross = snapshot.L * snapshot.rho * snapshot.rho_dot
    return snapshot.hbar * math.sqrt(1.0 + cross * cross) * (snapshot.n + 0.5)


def energy_mean(snapshot: QuantumSnapshot) -> float:
    """Mean energy <E_n>; decays to zero as the charge is expelled."""
    rho2 = snapshot.rho * snapshot.rho
    L2 = snapshot.L * snapshot.L
    cross2 = L2 * rho2 * snapshot.rho_dot * snapshot.rho_dot
    return ((1.0 + cross2) / (2.0 * L2 * rho2)
            + 0.5 * snapshot.omega_sq * rho2) * (snapshot.n + 0.5) * snapshot.hbar
