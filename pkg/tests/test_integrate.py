import math

import numpy as np
import pytest

from tdq.errors import StepSizeUnderflowError
from tdq.integrate import adaptive_simpson, solve_rk45


class TestSolveRK45:
    def test_exponential_decay(self):
        grid = np.linspace(0.0, 5.0, 26)
        out = solve_rk45(lambda t, y: -y, 0.0, [1.0], grid)
        for t, y in zip(grid, out[:, 0]):
            assert y == pytest.approx(math.exp(-t), abs=1e-9)

    def test_harmonic_oscillator_energy(self):
        grid = np.linspace(0.0, 20.0, 41)
        out = solve_rk45(lambda t, y: np.array((y[1], -y[0])), 0.0, [1.0, 0.0], grid)
        energies = out[:, 0] ** 2 + out[:, 1] ** 2
        assert np.max(np.abs(energies - 1.0)) < 1e-8

    def test_time_dependent_rhs(self):
        # y' = 2 t y  ->  y = exp(t^2)
        grid = np.linspace(0.0, 2.0, 9)
        out = solve_rk45(lambda t, y: 2.0 * t * y, 0.0, [1.0], grid)
        assert out[-1, 0] == pytest.approx(math.exp(4.0), rel=1e-9)

    def test_samples_exactly_on_grid(self):
        seen = []
        grid = np.array([0.0, 0.3, 1.0, 2.5])
        solve_rk45(lambda t, y: -y, 0.0, [1.0], grid,
                   post_step=lambda t, y: seen.append(t))
        for target in grid[1:]:
            assert target in seen

    def test_grid_validation(self):
        with pytest.raises(ValueError, match="ascending"):
            solve_rk45(lambda t, y: -y, 0.0, [1.0], [0.0, 1.0, 1.0])
        with pytest.raises(ValueError, match="start at"):
            solve_rk45(lambda t, y: -y, 0.0, [1.0], [0.5, 1.0])

    def test_post_step_exception_propagates(self):
        def guard(t, y):
            if y[0] < 0.5:
                raise StepSizeUnderflowError(t, "guard fired")
        with pytest.raises(StepSizeUnderflowError):
            solve_rk45(lambda t, y: -y, 0.0, [1.0], np.linspace(0.0, 3.0, 7),
                       post_step=guard)

    def test_single_point_grid(self):
        out = solve_rk45(lambda t, y: -y, 0.0, [2.0], [0.0])
        assert out.shape == (1, 1)
        assert out[0, 0] == 2.0


class TestAdaptiveSimpson:
    def test_polynomial(self):
        assert adaptive_simpson(lambda x: x ** 3, 0.0, 1.0) == pytest.approx(
            0.25, abs=1e-12)

    def test_exponential(self):
        assert adaptive_simpson(math.exp, 0.0, 2.0) == pytest.approx(
            math.exp(2.0) - 1.0, rel=1e-10)

    def test_oscillatory(self):
        assert adaptive_simpson(math.sin, 0.0, math.pi) == pytest.approx(
            2.0, rel=1e-10)

    def test_empty_interval(self):
        assert adaptive_simpson(math.exp, 1.0, 1.0) == 0.0
