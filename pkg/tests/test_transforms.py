import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tubekernels.errors import DomainError, PoleError
from tubekernels.kernels import KernelHandle, kernel_closed
from tubekernels.transforms import (
    cayley_ball_to_siegel,
    compose,
    identity_map,
    paraboloid_defining_gap,
    phi_siegel_to_paraboloid_tube,
    pullback_kernel,
    siegel_defining_gap,
)
from tubekernels.weights import SpaceSpec


def test_siegel_map_examples():
    phi1 = phi_siegel_to_paraboloid_tube(1)
    assert phi1([4j]).tolist() == [4j]
    phi2 = phi_siegel_to_paraboloid_tube(2)
    out = phi2([0.5, 1j])
    assert out[0] == pytest.approx(math.sqrt(0.5))
    assert out[1] == pytest.approx(0.75j)
    assert phi2.jac_det(np.array([0.5, 1j])) == pytest.approx(math.sqrt(2))
    assert phi2.inverse_jac_det(out) == pytest.approx(1 / math.sqrt(2))


def test_cayley_examples():
    c1 = cayley_ball_to_siegel(1)
    assert c1([0])[0] == pytest.approx(4j)
    assert c1.jac_det(np.array([0j])) == pytest.approx(-8j)
    z = np.array([0.3 + 0.2j])
    assert abs(c1.inverse(c1(z))[0] - z[0]) <= 1e-14
    with pytest.raises(PoleError):
        c1([-1.0])
    with pytest.raises(PoleError):
        c1.inverse([-4j])


def test_identity_pullback_is_exact():
    sp = SpaceSpec.siegel(2, 0.5)
    ident = identity_map(sp.domain, 2)
    z, w = np.array([0.1, 1j]), np.array([0.2j, 0.3 + 2j])
    assert pullback_kernel(ident, KernelHandle(sp), z, w) == kernel_closed(sp, z, w)


def test_pullback_rejects_points_outside_source():
    phi = phi_siegel_to_paraboloid_tube(2)
    with pytest.raises(DomainError):
        pullback_kernel(phi, KernelHandle(SpaceSpec.paraboloid(2, 0.0)), [1.0, 1j], [0, 1j])


def test_ball_center_pulls_back_to_disc_value():
    phi = cayley_ball_to_siegel(1)
    k = pullback_kernel(phi, KernelHandle(SpaceSpec.siegel(1, 0.0)), [0j], [0j])
    assert k == pytest.approx(1 / math.pi, rel=1e-14)


coords = st.lists(st.floats(-0.7, 0.7), min_size=4, max_size=4)


def _ball_point(c):
    # components up to 0.7 reach |z| = 1.4; pull such points back inside
    v = np.asarray(c)
    norm = np.linalg.norm(v)
    if norm > 0.95:
        v = v * (0.95 / norm)
    return v[:2] + 1j * v[2:]


@settings(max_examples=60, deadline=None)
@given(a=coords, b=coords, alpha=st.sampled_from([0.0, 0.5, 1.5]))
def test_cayley_pullback_matches_ball_kernel(a, b, alpha):
    z, w = _ball_point(a), _ball_point(b)
    phi = cayley_ball_to_siegel(2)
    pulled = pullback_kernel(phi, KernelHandle(SpaceSpec.siegel(2, alpha)), z, w)
    direct = kernel_closed(SpaceSpec.ball(2, alpha), z, w)
    assert abs(pulled - direct) <= 1e-11 * abs(direct)


@settings(max_examples=60, deadline=None)
@given(x=st.lists(st.floats(-3, 3), min_size=3, max_size=3), gap=st.floats(1e-3, 4.0))
def test_siegel_weight_identity_and_round_trip(x, gap):
    # a Siegel point with prescribed defining gap maps to a paraboloid point with the same gap
    z1 = complex(x[0], x[1])
    z = np.array([z1, x[2] + 1j * (abs(z1) ** 2 + gap)])
    phi = phi_siegel_to_paraboloid_tube(2)
    w = phi(z)
    assert paraboloid_defining_gap(w) == pytest.approx(siegel_defining_gap(z), rel=1e-10, abs=1e-12)
    assert np.allclose(phi.inverse(w), z, rtol=1e-13, atol=1e-13)


def test_composition_multiplies_jacobians():
    chain = compose(phi_siegel_to_paraboloid_tube(2), cayley_ball_to_siegel(2))
    z = np.array([0.2 + 0.1j, -0.3j])
    expected = phi_siegel_to_paraboloid_tube(2).jac_det(cayley_ball_to_siegel(2)(z)) * cayley_ball_to_siegel(2).jac_det(z)
    assert chain.jac_det(z) == expected
    a = pullback_kernel(chain, KernelHandle(SpaceSpec.paraboloid(2, 1.0)), z, z[::-1] * 0.5)
    b = kernel_closed(SpaceSpec.ball(2, 1.0), z, z[::-1] * 0.5)
    assert abs(a - b) <= 1e-12 * abs(b)
    with pytest.raises(ValueError):
        compose(phi_siegel_to_paraboloid_tube(1), cayley_ball_to_siegel(2))
