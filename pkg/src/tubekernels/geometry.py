"""Base sets of tube domains and the two model domains (Siegel domain, unit ball).

Tube bases live in R^n and are open:

* half-line   ``{y > 0}`` (n = 1)
* paraboloid  ``{y_n > |y'|^2}`` (n >= 2)
* Lorentz cone ``{y_n > |y'|}`` (n >= 2)

The tube ``T_B`` is ``{x + iy : y in B}``, so membership of a complex point
only looks at its imaginary part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionError, DomainError
from .numcore import as_point, as_real_vector, unit_ball_volume

_SQRT2 = math.sqrt(2.0)


class BaseFamily(str, Enum):
    HALF_LINE = "half-line"
    PARABOLOID = "paraboloid"
    LORENTZ = "lorentz"


class ModelFamily(str, Enum):
    SIEGEL = "siegel"
    BALL = "ball"


@dataclass(frozen=True)
class TubeBase:
    family: BaseFamily
    dim: int

    def __post_init__(self):
        if self.family is BaseFamily.HALF_LINE and self.dim != 1:
            raise DimensionError("the half-line base requires dim = 1")
        if self.family is not BaseFamily.HALF_LINE and self.dim < 2:
            raise DimensionError(f"{self.family.value} base requires dim >= 2")

    @classmethod
    def half_line(cls) -> "TubeBase":
        return cls(BaseFamily.HALF_LINE, 1)

    @classmethod
    def paraboloid(cls, n: int) -> "TubeBase":
        return cls(BaseFamily.PARABOLOID, n)

    @classmethod
    def lorentz_cone(cls, n: int) -> "TubeBase":
        return cls(BaseFamily.LORENTZ, n)

    @property
    def is_cone(self) -> bool:
        return self.family is not BaseFamily.PARABOLOID


@dataclass(frozen=True)
class ModelDomain:
    family: ModelFamily
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("model domains require dim >= 1")

    @classmethod
    def siegel(cls, n: int) -> "ModelDomain":
        return cls(ModelFamily.SIEGEL, n)

    @classmethod
    def ball(cls, n: int) -> "ModelDomain":
        return cls(ModelFamily.BALL, n)


def lorentz_form(y) -> float:
    """``Delta(y) = y_n^2 - |y'|^2``."""
    y = np.asarray(y, dtype=float)
    return float(y[-1] ** 2 - np.dot(y[:-1], y[:-1]))


def contains(base: TubeBase, y) -> bool:
    """Strict membership of ``y`` in the open base set."""
    y = as_real_vector(y, base.dim)
    if base.family is BaseFamily.HALF_LINE:
        return bool(y[0] > 0.0)
    tail = y[:-1]
    if base.family is BaseFamily.PARABOLOID:
        return bool(y[-1] > float(np.dot(tail, tail)))
    return bool(y[-1] > float(np.linalg.norm(tail)))


def tube_contains(base: TubeBase, z) -> bool:
    z = as_point(z, base.dim)
    return contains(base, z.imag)


def _parabola_foot(r: float, h: float) -> float:
    """Abscissa ``s >= 0`` of the point of ``{(s, s^2)}`` nearest to ``(r, h)``, ``r >= 0``.

    Stationarity of ``(s - r)^2 + (s^2 - h)^2`` gives ``2 s^3 + (1 - 2h) s - r = 0``,
    which has exactly one positive root when ``r > 0``.
    """
    if r == 0.0:
        return math.sqrt((2.0 * h - 1.0) / 2.0) if h > 0.5 else 0.0

    def cubic(s):
        return 2.0 * s**3 + (1.0 - 2.0 * h) * s - r

    lo, hi = 0.0, max(r, math.sqrt(max(h, 0.0))) + 1.0
    s = min(r, hi)
    for _ in range(200):
        fs = cubic(s)
        if fs < 0.0:
            lo = s
        else:
            hi = s
        deriv = 6.0 * s * s + 1.0 - 2.0 * h
        step_ok = deriv > 0.0
        if step_ok:
            s_new = s - fs / deriv
            step_ok = lo < s_new < hi
        if not step_ok:
            s_new = 0.5 * (lo + hi)
        if abs(s_new - s) <= 1e-15 * max(1.0, abs(s)) or hi - lo <= 1e-15 * max(1.0, hi):
            return s_new
        s = s_new
    return s


def _parabola_distance(r: float, h: float) -> tuple[float, float]:
    """Distance from ``(r, h)`` to the parabola ``h = s^2`` and the foot abscissa."""
    s = _parabola_foot(r, h)
    return math.hypot(s - r, s * s - h), s


def boundary_projection(base: TubeBase, y) -> tuple[float, np.ndarray]:
    """Euclidean distance from ``y`` to the boundary of ``base`` and the nearest boundary point."""
    y = as_real_vector(y, base.dim)
    if not contains(base, y):
        raise DomainError(f"{y.tolist()} is not inside the {base.family.value} base")
    if base.family is BaseFamily.HALF_LINE:
        return float(y[0]), np.zeros(1)
    tail = y[:-1]
    r = float(np.linalg.norm(tail))
    if r > 0.0:
        u = tail / r
    else:
        u = np.zeros_like(tail)
        u[0] = 1.0
    h = float(y[-1])
    if base.family is BaseFamily.LORENTZ:
        m = 0.5 * (r + h)
        foot = np.append(m * u, m)
        return (h - r) / _SQRT2, foot
    dist, s = _parabola_distance(r, h)
    foot = np.append(s * u, s * s)
    return dist, foot


def boundary_distance(base: TubeBase, y) -> float:
    return boundary_projection(base, y)[0]


def model_contains(dom: ModelDomain, z) -> bool:
    z = as_point(z, dom.dim)
    if dom.family is ModelFamily.BALL:
        return bool(np.vdot(z, z).real < 1.0)
    tail = z[:-1]
    return bool(z[-1].imag > float(np.vdot(tail, tail).real))


def model_boundary_distance(dom: ModelDomain, z) -> float:
    """Distance in C^n = R^{2n} from ``z`` to the boundary of the model domain."""
    z = as_point(z, dom.dim)
    if not model_contains(dom, z):
        raise DomainError(f"point is not inside the {dom.family.value} domain")
    if dom.family is ModelFamily.BALL:
        return 1.0 - float(np.linalg.norm(z))
    # Siegel boundary Im z_n = |z'|^2 is a paraboloid in the real coordinates
    # (Re z', Im z', Im z_n); Re z_n is a free direction.
    r = float(np.linalg.norm(z[:-1]))
    return _parabola_distance(r, float(z[-1].imag))[0]


def domain_contains(domain, z) -> bool:
    """Membership of a complex point in a tube (given its base) or a model domain."""
    if isinstance(domain, TubeBase):
        return tube_contains(domain, z)
    if isinstance(domain, ModelDomain):
        return model_contains(domain, z)
    raise TypeError(f"unknown domain descriptor {domain!r}")


def domain_dim(domain) -> int:
    return domain.dim


# -- samplers -------------------------------------------------------------
#
# Proposal: y_n ~ Exp(rate); y' uniform in the ball of radius R(y_n), with
# R = y_n (Lorentz) or sqrt(y_n) (paraboloid). The density is
#   rate * exp(-rate * y_n) / (V_{n-1} R(y_n)^{n-1}).


def _section_radius(base: TubeBase, yn):
    return yn if base.family is BaseFamily.LORENTZ else np.sqrt(yn)


def _draw(base: TubeBase, count: int, rng: np.random.Generator, rate: float) -> np.ndarray:
    n = base.dim
    yn = rng.exponential(1.0 / rate, size=count)
    if n == 1:
        return yn[:, None]
    k = n - 1
    direction = rng.standard_normal((count, k))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    radius = _section_radius(base, yn) * rng.random(count) ** (1.0 / k)
    return np.column_stack([direction * radius[:, None], yn])


def _inside_mask(base: TubeBase, y: np.ndarray) -> np.ndarray:
    yn = y[:, -1]
    if base.family is BaseFamily.HALF_LINE:
        return yn > 0.0
    tail = y[:, :-1]
    if base.family is BaseFamily.PARABOLOID:
        return yn > np.einsum("ij,ij->i", tail, tail)
    return yn > np.linalg.norm(tail, axis=1)


def draw_interior(base: TubeBase, count: int, rng: np.random.Generator, rate: float = 1.0) -> np.ndarray:
    """Draw ``count`` interior points from the proposal using a caller-owned generator."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if rate <= 0.0:
        raise ValueError("rate must be positive")
    pts = _draw(base, count, rng, rate)
    bad = ~_inside_mask(base, pts)
    # Boundary hits have probability zero but can appear through rounding.
    while np.any(bad):
        pts[bad] = _draw(base, int(bad.sum()), rng, rate)
        bad = ~_inside_mask(base, pts)
    return pts


def sample_interior(base: TubeBase, count: int, seed: int, rate: float = 1.0) -> np.ndarray:
    """Seeded interior sample of shape ``(count, dim)``; see ``interior_density``."""
    return draw_interior(base, count, np.random.default_rng(seed), rate)


def interior_density(base: TubeBase, y, rate: float = 1.0) -> np.ndarray:
    """Proposal density of ``sample_interior`` at the rows of ``y`` (0 outside the base)."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    yn = y[:, -1]
    inside = _inside_mask(base, y)
    out = np.zeros(len(y))
    yi = yn[inside]
    dens = rate * np.exp(-rate * yi)
    if base.dim > 1:
        k = base.dim - 1
        dens = dens / (unit_ball_volume(k) * _section_radius(base, yi) ** k)
    out[inside] = dens
    return out


def sample_tube_points(base: TubeBase, count: int, rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    """Random complex points ``x + iy`` of the tube, ``x ~ N(0, spread^2)``."""
    y = draw_interior(base, count, rng)
    x = spread * rng.standard_normal(y.shape)
    return x + 1j * y


def sample_model_points(dom: ModelDomain, count: int, rng: np.random.Generator, max_radius: float = 0.9) -> np.ndarray:
    """Random interior points of a model domain as an array of shape ``(count, dim)``."""
    n = dom.dim
    if dom.family is ModelFamily.BALL:
        direction = rng.standard_normal((count, 2 * n))
        direction /= np.linalg.norm(direction, axis=1, keepdims=True)
        radius = max_radius * rng.random(count) ** (1.0 / (2 * n))
        pts = direction * radius[:, None]
        return pts[:, :n] + 1j * pts[:, n:]
    tail = (rng.standard_normal((count, n - 1)) + 1j * rng.standard_normal((count, n - 1))) * 0.5
    height = np.einsum("ij,ij->i", tail.conj(), tail).real + rng.exponential(1.0, size=count) + 1e-3
    zn = rng.standard_normal(count) + 1j * height
    return np.column_stack([tail, zn])
