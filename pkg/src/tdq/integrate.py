"""Adaptive one-dimensional integrators.

`adaptive_simpson` handles the smooth time integrals (phase accumulation,
conductivity integrals for tabulated models).  `solve_rk45` is a
Dormand-Prince 5(4) embedded pair with PI-free standard step control;
output times are honored by capping the step at the next requested
sample, so no interpolation error enters the reported trajectory.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, StepSizeUnderflowError

# Dormand-Prince 5(4) tableau
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
_B5 = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0)
# b5 - b4: weights of the embedded error estimate
_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
      -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

_SAFETY = 0.9
_MIN_SCALE = 0.2
_MAX_SCALE = 5.0


def solve_rk45(rhs: Callable[[float, np.ndarray], np.ndarray],
               t0: float,
               y0: Sequence[float],
               t_eval: Sequence[float],
               rtol: float = 1e-10,
               atol: float = 1e-10,
               post_step: Callable[[float, np.ndarray], None] | None = None,
               ) -> np.ndarray:
    """Integrate y' = rhs(t, y) and return the states at t_eval.

    t_eval must be ascending and start at t0.  post_step, if given, is
    called after every accepted step (guards may raise from it).
    Raises StepSizeUnderflowError if error control collapses the step.
    """
    t_eval = np.asarray(t_eval, dtype=float)
    if t_eval.ndim != 1 or len(t_eval) == 0:
        raise ValueError("t_eval must be a non-empty 1-d sequence")
    if np.any(np.diff(t_eval) <= 0.0):
        raise ValueError("t_eval must be strictly ascending")
    if t_eval[0] != t0:
        raise ValueError(f"t_eval must start at t0={t0!r}")

    y = np.asarray(y0, dtype=float).copy()
    out = np.empty((len(t_eval), len(y)))
    out[0] = y
    if len(t_eval) == 1:
        return out

    t = float(t0)
    t_end = float(t_eval[-1])
    next_idx = 1
    h = min(1e-2, (t_end - t0) / 10.0)
    k = [np.empty_like(y) for _ in range(7)]

    while next_idx < len(t_eval):
        lands_on_sample = False
        target = t_eval[next_idx]
        if t + h >= target:
            h = target - t
            lands_on_sample = True
        if h < 1e-13 * max(1.0, abs(t)):
            raise StepSizeUnderflowError(t)

        k[0] = rhs(t, y)
        for i in range(1, 7):
            yi = y.copy()
            for j, a in enumerate(_A[i]):
                if a != 0.0:
                    yi += h * a * k[j]
            k[i] = rhs(t + _C[i] * h, yi)

        y5 = y.copy()
        err = np.zeros_like(y)
        for i in range(7):
            if _B5[i] != 0.0:
                y5 += h * _B5[i] * k[i]
            if _E[i] != 0.0:
                err += h * _E[i] * k[i]

        scale_den = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err_norm = float(np.sqrt(np.mean((err / scale_den) ** 2)))

        if err_norm <= 1.0:
            t_new = target if lands_on_sample else t + h
            t, y = t_new, y5
            if post_step is not None:
                post_step(t, y)
            if lands_on_sample:
                out[next_idx] = y
                next_idx += 1
            factor = _MAX_SCALE if err_norm == 0.0 else min(
                _MAX_SCALE, max(_MIN_SCALE, _SAFETY * err_norm ** -0.2))
            h = h * factor
        else:
            h = h * max(_MIN_SCALE, _SAFETY * err_norm ** -0.2)
    return out


def adaptive_simpson(f: Callable[[float], float],
                     a: float,
                     b: float,
                     tol: float = 1e-10,
                     max_depth: int = 50) -> float:
    """Adaptive Simpson quadrature of f over [a, b]."""
    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol * max(1.0, abs(left + right)):
        return left + right + delta / 15.0
    if depth <= 0:
        raise ConvergenceError(f"adaptive_simpson failed to converge on [{a}, {b}]")
    return (_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + _simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1))
