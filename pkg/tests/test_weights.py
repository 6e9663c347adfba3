import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tubekernels.errors import DimensionError, UnsupportedFamilyError
from tubekernels.quadrature import QuadratureConfig
from tubekernels.weights import (
    SpaceSpec,
    in_support,
    lorentz_symbol_constant,
    lorentz_symbol_constant_literature,
    rho,
    symbol_closed,
    symbol_integral,
    symbol_numeric,
)

PI = math.pi


def test_rho_examples():
    assert rho(SpaceSpec.unweighted_halfplane(), 1 + 2j) == 1.0
    assert rho(SpaceSpec.paraboloid(2, 1.0), [0.3 + 1j, 0.1 + 3j]) == pytest.approx(2.0)
    assert rho(SpaceSpec.lorentz(2, 2.0), [0.6j, 1.0j]) == pytest.approx(0.4096)
    assert rho(SpaceSpec.paraboloid(2, 1.0), [2j, 1j]) == 0.0


def test_space_validation():
    with pytest.raises(DimensionError):
        SpaceSpec.paraboloid(1, 0.0)
    with pytest.raises(ValueError):
        SpaceSpec.halfplane_power(0.0)
    with pytest.raises(ValueError):
        SpaceSpec.bergman_selberg(0.5)
    with pytest.raises(ValueError):
        SpaceSpec.lorentz(2, -1.0)
    with pytest.raises(UnsupportedFamilyError):
        symbol_closed(SpaceSpec.siegel(2, 0.0), [0.0, 1.0])


def test_support():
    assert in_support(SpaceSpec.lorentz(2, 0.0), [0.5, 1.0])
    assert not in_support(SpaceSpec.paraboloid(2, 0.0), [3.0, -1.0])
    assert not in_support(SpaceSpec.halfplane_power(1.0), [0.0])
    assert symbol_closed(SpaceSpec.lorentz(2, 0.0), [2.0, 1.0]) == math.inf
    assert symbol_numeric(SpaceSpec.lorentz(2, 0.0), [2.0, 1.0]) == math.inf


def test_symbol_closed_examples():
    assert symbol_closed(SpaceSpec.unweighted_halfplane(), [1 / (4 * PI)]) == pytest.approx(1.0, rel=1e-14)
    assert symbol_closed(SpaceSpec.paraboloid(2, 0.0), [0.0, 1.0]) == pytest.approx(1 / (8 * PI), rel=1e-14)
    assert symbol_closed(SpaceSpec.lorentz(2, 0.0), [0.0, 1.0]) == pytest.approx(1 / (8 * PI**2), rel=1e-14)
    # n = 3, alpha = 0: int_cone e^{-4 pi y3} dy = int pi y3^2 e^{-4 pi y3} dy3 = 2 pi / (4 pi)^3
    assert symbol_closed(SpaceSpec.lorentz(3, 0.0), [0.0, 0.0, 1.0]) == pytest.approx(1 / (32 * PI**2), rel=1e-14)


# Values of the defining integrals computed with mpmath (30 digits),
# independently of this package.
MPMATH_SYMBOLS = [
    (SpaceSpec.paraboloid(2, 0.5), [0.3, 0.7], 0.0304035212918225886799811069028),
    (SpaceSpec.lorentz(2, 1.0), [0.5, 0.8], 0.00210921726139964151650903666731),
]


@pytest.mark.parametrize("space, t, truth", MPMATH_SYMBOLS)
def test_symbol_frozen_oracle(space, t, truth):
    assert symbol_closed(space, t) == pytest.approx(truth, rel=1e-13)
    assert symbol_numeric(space, t, QuadratureConfig(rel_tol=1e-10)) == pytest.approx(truth, rel=1e-9)


def test_symbol_numeric_examples():
    assert symbol_numeric(SpaceSpec.unweighted_halfplane(), [1 / (4 * PI)]) == pytest.approx(1.0, abs=1e-10)
    sp = SpaceSpec.paraboloid(2, 1.5)
    assert symbol_numeric(sp, [0.3, 1.0]) == pytest.approx(symbol_closed(sp, [0.3, 1.0]), rel=1e-8)


def test_lorentz_constants():
    # the spherical-area factor of the commonly quoted form is off by pi at
    # n = 3 and by 2 at n = 4; the corrected constant matches the integral
    for n, ratio in ((3, PI), (4, 2.0)):
        lit = lorentz_symbol_constant_literature(n, 0.0)
        assert lit / lorentz_symbol_constant(n, 0.0) == pytest.approx(ratio, rel=1e-13)
    assert lorentz_symbol_constant(2, 1.0) == pytest.approx(2**3 / (4 * PI) ** 4, rel=1e-14)


def test_lorentz_n3_monte_carlo():
    sp = SpaceSpec.lorentz(3, 0.0)
    t = [0.2, -0.1, 1.0]
    res = symbol_integral(sp, t, QuadratureConfig(mc_samples=200_000, seed=3))
    assert abs(res.value - symbol_closed(sp, t)) <= 4 * res.error_estimate


@settings(max_examples=25, deadline=None)
@given(v=st.floats(0.2, 5.0), t=st.floats(0.01, 10.0), lam=st.floats(0.1, 10.0))
def test_halfplane_symbol_scaling(v, t, lam):
    sp = SpaceSpec.halfplane_power(v)
    assert symbol_closed(sp, [lam * t]) == pytest.approx(lam**-v * symbol_closed(sp, [t]), rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(a=st.floats(-0.9, 3.0), t1=st.floats(-0.95, 0.95), lam=st.floats(0.1, 10.0))
def test_lorentz_symbol_homogeneity(a, t1, lam):
    sp = SpaceSpec.lorentz(2, a)
    t = np.array([t1, 1.0])
    assert symbol_closed(sp, lam * t) == pytest.approx(lam ** (-2 * a - 2) * symbol_closed(sp, t), rel=1e-12)
