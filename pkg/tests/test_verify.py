import json
import math

import pytest

from tubekernels.kernels import TestProfile
from tubekernels.quadrature import QuadratureConfig
from tubekernels.verify import (
    PULLBACK_PAIRS,
    check_diagonal_positivity,
    check_disc_series,
    check_extremal,
    check_homogeneity,
    check_isometry,
    check_log_convexity,
    check_point_eval_bound,
    check_pullback,
    check_self_reproduction,
    check_symmetry,
    default_profiles,
    isometry_sides,
    point_eval_bound,
    run_space,
)
from tubekernels.weights import SpaceSpec

PI = math.pi


@pytest.mark.parametrize(
    "space, tol",
    [(SpaceSpec.unweighted_halfplane(), 1e-13), (SpaceSpec.lorentz(2, 1.0), 1e-12), (SpaceSpec.ball(2, 0.5), 1e-12)],
)
def test_symmetry(space, tol):
    assert check_symmetry(space, samples=200, tol=tol).passed


def test_properties_small():
    for sp in (SpaceSpec.paraboloid(2, 0.0), SpaceSpec.lorentz(2, 1.0), SpaceSpec.unweighted_halfplane()):
        assert check_log_convexity(sp, triples=50).passed
        assert check_diagonal_positivity(sp, samples=50).passed
    assert check_homogeneity(SpaceSpec.lorentz(3, 0.5), samples=50).passed
    assert check_disc_series(samples=10).passed


@pytest.mark.parametrize("pair", PULLBACK_PAIRS)
def test_pullback(pair):
    report = check_pullback(pair, 2, 1.5, samples=50, tol=1e-11)
    assert report.passed and report.samples == 50


def test_point_eval_bound_example():
    # at z = i: delta = 1/2, eps = 1, so (pi * 1)^(-1/2) * delta^(-1) = 2/sqrt(pi),
    # well above |F(i)| = sqrt(K(i,i)) = 1/(2 sqrt(pi))
    sp = SpaceSpec.unweighted_halfplane()
    assert point_eval_bound(sp, [1j]) == pytest.approx(2 / math.sqrt(PI), rel=1e-12)
    assert point_eval_bound(sp, [0.01j]) > point_eval_bound(sp, [1j])
    assert check_point_eval_bound(SpaceSpec.halfplane_power(2.0), instances=10).passed
    assert check_point_eval_bound(SpaceSpec.ball(2, 1.5), instances=10).passed


def test_reproduction_and_extremal():
    cfg = QuadratureConfig(rel_tol=1e-6)
    sp = SpaceSpec.halfplane_power(1.0)
    assert check_self_reproduction(sp, 1j, 0.5 + 2j, cfg).passed
    assert check_extremal(SpaceSpec.unweighted_halfplane(), 1j, cfg).passed


def test_isometry_v2_profile():
    sp = SpaceSpec.halfplane_power(2.0)
    f = TestProfile.truncated_exponential(1.0, power=2)
    left, right = isometry_sides(sp, f, QuadratureConfig(rel_tol=1e-8))
    assert right == pytest.approx(0.0015831434944115277, rel=1e-8)
    assert left == pytest.approx(right, rel=1e-6)
    assert check_isometry(sp, f).passed


def test_default_profiles_are_admissible():
    for v in (0.5, 1.0, 2.0, 2.5, 4.0):
        sp = SpaceSpec.halfplane_power(v)
        assert all(f.is_admissible(sp) for f in default_profiles(sp))


def test_bergman_selberg_note_and_json():
    reports = run_space(SpaceSpec.bergman_selberg(1.0), suite="properties")
    assert all(r.passed for r in reports)
    notes = " ".join(n for r in reports for n in r.notes)
    assert "Gamma(2q)" in notes
    json.dumps([r.to_dict() for r in reports])


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_space(SpaceSpec.unweighted_halfplane(), suite="nope")
