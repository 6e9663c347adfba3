import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tubekernels.errors import DimensionError, DomainError
from tubekernels.geometry import (
    ModelDomain,
    TubeBase,
    boundary_distance,
    boundary_projection,
    contains,
    interior_density,
    model_boundary_distance,
    model_contains,
    sample_interior,
    sample_model_points,
    tube_contains,
)


def test_membership():
    par, lor = TubeBase.paraboloid(2), TubeBase.lorentz_cone(3)
    assert contains(par, [0.5, 0.3]) and not contains(par, [1.0, 1.0])
    assert contains(lor, [0.1, 0.2, 1.0]) and not contains(lor, [1.0, 0.0, 1.0])
    assert tube_contains(TubeBase.half_line(), [5 + 1j])
    assert not tube_contains(TubeBase.half_line(), [5.0])
    assert model_contains(ModelDomain.ball(2), [0.5, 0.5j])
    assert model_contains(ModelDomain.siegel(2), [0.5, 0.3j])
    assert not model_contains(ModelDomain.siegel(2), [0.5, 0.2j])


def test_dimension_rules():
    with pytest.raises(DimensionError):
        TubeBase.paraboloid(1)
    with pytest.raises(DimensionError):
        contains(TubeBase.lorentz_cone(2), [1.0, 2.0, 3.0])


def test_distance_oracles():
    # foot of (0, 1) on y2 = y1^2 solves 2 s^2 = 1: distance sqrt(3)/2
    assert boundary_distance(TubeBase.paraboloid(2), [0.0, 1.0]) == pytest.approx(math.sqrt(3) / 2, rel=1e-14)
    # brute-force minimisation over the parabola gave 0.6145112973566
    assert boundary_distance(TubeBase.paraboloid(2), [0.3, 1.0]) == pytest.approx(0.6145112973566, rel=1e-11)
    assert boundary_distance(TubeBase.lorentz_cone(2), [0.0, 1.0]) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert boundary_distance(TubeBase.half_line(), [0.25]) == 0.25
    assert model_boundary_distance(ModelDomain.ball(2), [0.3, 0.4j]) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        boundary_distance(TubeBase.lorentz_cone(2), [1.0, 0.5])


@pytest.mark.parametrize("base", [TubeBase.half_line(), TubeBase.paraboloid(3), TubeBase.lorentz_cone(3)])
def test_sampler_inside_positive_density_and_reproducible(base):
    pts = sample_interior(base, 4000, seed=7, rate=2.0)
    assert all(contains(base, p) for p in pts[:200])
    assert np.all(interior_density(base, pts, 2.0) > 0)
    again = sample_interior(base, 4000, seed=7, rate=2.0)
    assert np.array_equal(pts, again)


def test_importance_estimate_on_lorentz_cone():
    base = TubeBase.lorentz_cone(2)
    pts = sample_interior(base, 200000, seed=1, rate=1.0)
    # int_cone exp(-2 y2) dy = int_0^inf 2 y2 exp(-2 y2) dy2 = 1/2
    est = np.mean(np.exp(-2 * pts[:, 1]) / interior_density(base, pts, 1.0))
    assert est == pytest.approx(0.5, rel=1e-2)


@settings(max_examples=60, deadline=None)
@given(r=st.floats(0.0, 3.0), gap=st.floats(1e-3, 5.0), ang=st.floats(-3.0, 3.0))
def test_paraboloid_projection_is_nearest(r, gap, ang):
    base = TubeBase.paraboloid(2)
    y = np.array([r, r * r + gap])
    dist, foot = boundary_projection(base, y)
    assert foot[1] == pytest.approx(foot[0] ** 2, abs=1e-12)
    assert np.linalg.norm(y - foot) == pytest.approx(dist, rel=1e-12, abs=1e-14)
    other = np.array([ang, ang * ang])
    assert dist <= np.linalg.norm(y - other) + 1e-12


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_model_samples_inside(seed):
    rng = np.random.default_rng(seed)
    for dom in (ModelDomain.ball(2), ModelDomain.siegel(2)):
        for z in sample_model_points(dom, 20, rng):
            assert model_contains(dom, z)
