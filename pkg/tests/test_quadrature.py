import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tubekernels.errors import DegenerateSamplerError
from tubekernels.quadrature import (
    QuadratureConfig,
    integrate_cone_2d,
    integrate_line,
    integrate_mc,
    integrate_semi_infinite,
)

FOUR_PI = 4 * math.pi


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_evals=10)


@pytest.mark.parametrize(
    "f, rate, truth",
    [
        (lambda t: np.exp(-t), 1.0, 1.0),
        (lambda t: FOUR_PI * t * np.exp(-FOUR_PI * t), FOUR_PI, 1 / FOUR_PI),
        (lambda t: np.exp(-t) * np.sin(10 * t), 1.0, 10 / 101),
        (lambda t: np.exp(-t) / np.sqrt(t), 1.0, math.sqrt(math.pi)),
        (lambda t: 1 / (1 + t * t), 1.0, math.pi / 2),
    ],
)
def test_semi_infinite_examples(f, rate, truth):
    res = integrate_semi_infinite(f, rate)
    assert res.converged
    assert res.error_estimate <= max(1e-9 * abs(res.value), 1e-14)
    assert abs(res.value - truth) <= max(5 * res.error_estimate, 1e-15)


def test_zero_integrand_is_exact():
    res = integrate_semi_infinite(lambda t: 0.0 * t, 1.0)
    assert res.value == 0.0 and res.converged
    res2 = integrate_cone_2d(lambda a, b, q: 0.0 * a, "lorentz", (0.0, 1.0))
    assert res2.value == 0.0


def test_line_gaussian():
    res = integrate_line(lambda x: np.exp(-((x - 3.0) ** 2)), center=3.0)
    assert res.converged
    assert abs(res.value - math.sqrt(math.pi)) <= 5 * res.error_estimate


def test_cone_examples():
    # exp(-(y1^2 + y2)) over {y2 > y1^2}: int exp(-2 y1^2) dy1 * int exp(-s) ds
    res = integrate_cone_2d(lambda y1, y2, q: np.exp(-(y1 * y1 + y2)), "paraboloid", (0.0, 1.0))
    assert res.value == pytest.approx(math.sqrt(math.pi / 2), rel=1e-9)
    # exp(-4 pi y2) over the Lorentz cone n = 2 is 1/(8 pi^2)
    res = integrate_cone_2d(lambda y1, y2, q: np.exp(-FOUR_PI * y2), "lorentz", (0.0, FOUR_PI))
    assert res.value == pytest.approx(1 / (8 * math.pi**2), rel=1e-9)
    with pytest.raises(ValueError):
        integrate_cone_2d(lambda *a: 0, "disc", (0, 1))


def _t_over_sinh(t):
    t = np.asarray(t, dtype=float)
    safe = np.where(t > 0, t, 1.0)
    return np.where(t > 0, 2 * safe * np.exp(-safe) / -np.expm1(-2 * safe), 1.0)


# Twenty integrands with known values over (0, inf).
CORPUS = [
    (lambda t: np.exp(-t), 1.0, 1.0),
    (lambda t: t * np.exp(-t), 1.0, 1.0),
    (lambda t: t**2 * np.exp(-t), 1.0, 2.0),
    (lambda t: np.exp(-3 * t), 3.0, 1 / 3),
    (lambda t: np.exp(-t * t), 1.0, math.sqrt(math.pi) / 2),
    (lambda t: t * np.exp(-t * t), 1.0, 0.5),
    (lambda t: np.exp(-t) * np.cos(t), 1.0, 0.5),
    (lambda t: np.exp(-t) * np.sin(t), 1.0, 0.5),
    (lambda t: np.exp(-t) * np.sin(3 * t), 1.0, 0.3),
    (lambda t: np.exp(-2 * t) * np.cos(5 * t), 2.0, 2 / 29),
    (lambda t: 1 / (1 + t) ** 2, 1.0, 1.0),
    (lambda t: 1 / (1 + t) ** 3, 1.0, 0.5),
    (lambda t: 1 / (1 + t * t), 1.0, math.pi / 2),
    (lambda t: np.exp(-t) / np.sqrt(t), 1.0, math.sqrt(math.pi)),
    (lambda t: t**-0.25 * np.exp(-t), 1.0, math.gamma(0.75)),
    (lambda t: t**2.5 * np.exp(-2 * t), 2.0, math.gamma(3.5) / 2**3.5),
    (lambda t: np.exp(-0.1 * t), 0.1, 10.0),
    (lambda t: 2 * np.exp(-t) / (1 + np.exp(-2 * t)), 1.0, math.pi / 2),
    (lambda t: _t_over_sinh(t), 1.0, math.pi**2 / 4),
    (lambda t: np.exp(-t) * (1 + np.sin(20 * t)), 1.0, 1 + 20 / 401),
]


def test_error_honesty_corpus():
    honest = 0
    for f, rate, truth in CORPUS:
        res = integrate_semi_infinite(f, rate)
        if abs(res.value - truth) <= 5 * res.error_estimate:
            honest += 1
    assert honest >= 19


def test_monotone_refinement():
    for f, rate, _ in CORPUS:
        small = integrate_semi_infinite(f, rate, QuadratureConfig(rel_tol=1e-14, max_evals=5000))
        large = integrate_semi_infinite(f, rate, QuadratureConfig(rel_tol=1e-14, max_evals=10000))
        assert large.error_estimate <= small.error_estimate * (1 + 1e-12)


def _exp_sampler(count, rng):
    x = rng.exponential(1.0, count)
    return x, np.exp(-x)


def test_mc_constant_against_own_density():
    res = integrate_mc(lambda x: np.exp(-x), _exp_sampler, QuadratureConfig(mc_samples=1000))
    assert res.value == pytest.approx(1.0, abs=1e-15)
    assert res.error_estimate == pytest.approx(0.0, abs=1e-15)


def test_mc_deterministic_and_degenerate():
    cfg = QuadratureConfig(mc_samples=100_000, seed=5)
    a = integrate_mc(lambda x: x * np.exp(-x), _exp_sampler, cfg)
    b = integrate_mc(lambda x: x * np.exp(-x), _exp_sampler, cfg)
    assert a == b
    assert abs(a.value - 1.0) < 4 * a.error_estimate

    def bad(count, rng):
        return np.zeros(count), np.zeros(count)

    with pytest.raises(DegenerateSamplerError):
        integrate_mc(lambda x: x, bad, QuadratureConfig(mc_samples=10))


@settings(max_examples=25, deadline=None)
@given(a=st.floats(0.2, 20.0), k=st.integers(0, 4))
def test_gamma_integrals(a, k):
    res = integrate_semi_infinite(lambda t: t**k * np.exp(-a * t), a)
    assert res.value == pytest.approx(math.gamma(k + 1) / a ** (k + 1), rel=1e-9)


@settings(max_examples=20, deadline=None)
@given(b=st.floats(-15.0, 15.0))
def test_oscillatory_laplace(b):
    res = integrate_semi_infinite(lambda t: np.exp((-1 + 1j * b) * t), 1.0)
    assert res.value == pytest.approx(1 / (1 - 1j * b), rel=1e-9)
