"""Weighted Bergman space descriptors, weights, and the Laplace symbol.

For a tube ``T_B`` with weight depending on ``y = Im z`` only, the symbol is

    I(t) = int_B rho(iy) exp(-4 pi y . t) dy,

finite exactly on the support set ``U_I``. Closed forms are available for
every tube family here; ``symbol_numeric`` evaluates the defining integral
directly and serves as the independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DimensionError, DomainError, UnsupportedFamilyError
from .geometry import (
    BaseFamily,
    ModelDomain,
    TubeBase,
    draw_interior,
    interior_density,
    model_contains,
)
from .numcore import as_point, as_real_vector, beta, log_gamma
from .quadrature import (
    IntegrationResult,
    QuadratureConfig,
    integrate_cone_2d,
    integrate_mc,
    integrate_semi_infinite,
)

_LOG_4PI = math.log(4.0 * math.pi)


class Family(str, Enum):
    UNWEIGHTED_HALFPLANE = "unweighted-halfplane"
    HALFPLANE_POWER = "halfplane-power"
    BERGMAN_SELBERG = "bergman-selberg"
    PARABOLOID = "paraboloid"
    LORENTZ = "lorentz"
    SIEGEL = "siegel"
    BALL = "ball"


_PARAM_NAME = {
    Family.UNWEIGHTED_HALFPLANE: None,
    Family.HALFPLANE_POWER: "v",
    Family.BERGMAN_SELBERG: "q",
    Family.PARABOLOID: "alpha",
    Family.LORENTZ: "alpha",
    Family.SIEGEL: "alpha",
    Family.BALL: "alpha",
}

HALF_PLANE_FAMILIES = (Family.UNWEIGHTED_HALFPLANE, Family.HALFPLANE_POWER, Family.BERGMAN_SELBERG)
TUBE_FAMILIES = HALF_PLANE_FAMILIES + (Family.PARABOLOID, Family.LORENTZ)


@dataclass(frozen=True)
class SpaceSpec:
    """A weighted Bergman space: family, complex dimension, and weight parameter.

    ``param`` is ``v`` (half-plane power weight ``y^(v-1)``), ``q``
    (Bergman-Selberg weight ``2 y^(2q-2) / (pi Gamma(2q-1))``) or ``alpha``
    (exponent of the defining function in the four several-variable families).
    """

    family: Family
    dim: int = 1
    param: Optional[float] = None

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if fam in HALF_PLANE_FAMILIES and self.dim != 1:
            raise DimensionError(f"{fam.value} spaces live in C^1")
        if fam in (Family.PARABOLOID, Family.LORENTZ) and self.dim < 2:
            raise DimensionError(f"{fam.value} spaces require dim >= 2")
        if self.dim < 1:
            raise DimensionError("dim must be >= 1")
        name = _PARAM_NAME[fam]
        if name is None:
            object.__setattr__(self, "param", None)
            return
        if self.param is None:
            raise ValueError(f"{fam.value} requires parameter {name}")
        p = float(self.param)
        if not math.isfinite(p):
            raise ValueError(f"{name} must be finite")
        object.__setattr__(self, "param", p)
        if name == "v" and p <= 0.0:
            raise ValueError(f"v must be > 0, got {p}")
        if name == "q" and p <= 0.5:
            raise ValueError(f"q must be > 1/2, got {p}")
        if name == "alpha" and p <= -1.0:
            raise ValueError(f"alpha must be > -1, got {p}")

    # -- constructors -----------------------------------------------------
    @classmethod
    def unweighted_halfplane(cls) -> "SpaceSpec":
        return cls(Family.UNWEIGHTED_HALFPLANE, 1)

    @classmethod
    def halfplane_power(cls, v: float) -> "SpaceSpec":
        return cls(Family.HALFPLANE_POWER, 1, v)

    @classmethod
    def bergman_selberg(cls, q: float) -> "SpaceSpec":
        return cls(Family.BERGMAN_SELBERG, 1, q)

    @classmethod
    def paraboloid(cls, n: int, alpha: float) -> "SpaceSpec":
        return cls(Family.PARABOLOID, n, alpha)

    @classmethod
    def lorentz(cls, n: int, alpha: float) -> "SpaceSpec":
        return cls(Family.LORENTZ, n, alpha)

    @classmethod
    def siegel(cls, n: int, alpha: float) -> "SpaceSpec":
        return cls(Family.SIEGEL, n, alpha)

    @classmethod
    def ball(cls, n: int, alpha: float) -> "SpaceSpec":
        return cls(Family.BALL, n, alpha)

    # -- derived data -----------------------------------------------------
    @property
    def tube_eligible(self) -> bool:
        return self.family in TUBE_FAMILIES

    @property
    def alpha(self) -> float:
        if _PARAM_NAME[self.family] != "alpha":
            raise AttributeError(f"{self.family.value} has no alpha parameter")
        return self.param

    @property
    def half_plane_exponent(self) -> float:
        """``v`` such that the weight is proportional to ``y^(v-1)`` (half-plane families)."""
        if self.family is Family.UNWEIGHTED_HALFPLANE:
            return 1.0
        if self.family is Family.HALFPLANE_POWER:
            return self.param
        if self.family is Family.BERGMAN_SELBERG:
            return 2.0 * self.param - 1.0
        raise UnsupportedFamilyError(f"{self.family.value} is not a half-plane family")

    @property
    def half_plane_scale(self) -> float:
        """Constant ``c`` in ``rho(iy) = c y^(v-1)``."""
        if self.family is Family.BERGMAN_SELBERG:
            return 2.0 / (math.pi * math.gamma(2.0 * self.param - 1.0))
        self.half_plane_exponent  # raises for non half-plane families
        return 1.0

    @property
    def base(self) -> TubeBase:
        if self.family in HALF_PLANE_FAMILIES:
            return TubeBase.half_line()
        if self.family is Family.PARABOLOID:
            return TubeBase.paraboloid(self.dim)
        if self.family is Family.LORENTZ:
            return TubeBase.lorentz_cone(self.dim)
        raise UnsupportedFamilyError(f"{self.family.value} is not a tube space")

    @property
    def domain(self):
        """Descriptor of the underlying domain (a ``TubeBase`` or a ``ModelDomain``)."""
        if self.tube_eligible:
            return self.base
        if self.family is Family.SIEGEL:
            return ModelDomain.siegel(self.dim)
        return ModelDomain.ball(self.dim)

    def contains(self, z) -> bool:
        z = as_point(z, self.dim)
        if self.tube_eligible:
            return _inside_base(self, z.imag[None, :])[0]
        return model_contains(self.domain, z)

    def describe(self) -> dict:
        out = {"family": self.family.value, "dim": self.dim}
        name = _PARAM_NAME[self.family]
        if name is not None:
            out[name] = self.param
        return out

    def label(self) -> str:
        name = _PARAM_NAME[self.family]
        tail = "" if name is None else f" {name}={self.param:g}"
        return f"{self.family.value} n={self.dim}{tail}"


def require_tube(space: SpaceSpec) -> None:
    if not space.tube_eligible:
        raise UnsupportedFamilyError(
            f"{space.family.value} weights depend on Re z; not served by the Fourier-Laplace engine"
        )


def _inside_base(space: SpaceSpec, y: np.ndarray) -> np.ndarray:
    yn = y[:, -1]
    if space.family in HALF_PLANE_FAMILIES:
        return yn > 0.0
    tail = y[:, :-1]
    if space.family is Family.PARABOLOID:
        return yn > np.einsum("ij,ij->i", tail, tail)
    return yn > np.linalg.norm(tail, axis=1)


def tube_weight(space: SpaceSpec, y) -> np.ndarray:
    """Vectorised ``rho(iy)`` over the last axis of ``y`` (0 outside the base)."""
    require_tube(space)
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != space.dim:
        raise DimensionError(f"last axis must have length {space.dim}")
    lead = y.shape[:-1]
    y2 = y.reshape(-1, space.dim)
    inside = _inside_base(space, y2)
    out = np.zeros(len(y2))
    yi = y2[inside]
    if space.family in HALF_PLANE_FAMILIES:
        v = space.half_plane_exponent
        out[inside] = space.half_plane_scale * yi[:, 0] ** (v - 1.0)
    else:
        tail = yi[:, :-1]
        sq = np.einsum("ij,ij->i", tail, tail)
        g = yi[:, -1] - sq if space.family is Family.PARABOLOID else yi[:, -1] ** 2 - sq
        out[inside] = g**space.param
    return out.reshape(lead)


def model_weight(space: SpaceSpec, z) -> float:
    """Weight of the Siegel and ball spaces (depends on Re z as well)."""
    z = as_point(z, space.dim)
    a = space.param
    tail = z[:-1]
    if space.family is Family.SIEGEL:
        g = z[-1].imag - float(np.vdot(tail, tail).real)
        return g**a if g > 0.0 else 0.0
    if space.family is Family.BALL:
        g = 1.0 - float(np.vdot(z, z).real)
        if g <= 0.0:
            return 0.0
        # The factor 4^alpha makes this the pull-back of the Siegel weight
        # under the Cayley transform, matching the kernel constant C3.
        return 4.0**a * g**a / abs(1.0 + z[-1]) ** (2.0 * a)
    raise UnsupportedFamilyError(f"{space.family.value} is a tube family")


def rho(space: SpaceSpec, z) -> float:
    """Weight at a point of C^n; 0 outside the domain."""
    z = as_point(z, space.dim)
    if space.tube_eligible:
        return float(tube_weight(space, z.imag[None, :])[0])
    return model_weight(space, z)


def in_support(space: SpaceSpec, t) -> bool:
    """Strict membership of ``t`` in ``U_I = {I(t) < inf}``."""
    require_tube(space)
    t = as_real_vector(t, space.dim)
    if space.family in HALF_PLANE_FAMILIES or space.family is Family.PARABOLOID:
        return bool(t[-1] > 0.0)
    return bool(t[-1] > float(np.linalg.norm(t[:-1])))


def _support_mask(space: SpaceSpec, t: np.ndarray) -> np.ndarray:
    tn = t[:, -1]
    if space.family is Family.LORENTZ:
        return tn > np.linalg.norm(t[:, :-1], axis=1)
    return tn > 0.0


def lorentz_symbol_constant(n: int, alpha: float) -> float:
    """``Ctilde`` in ``I(t) = Ctilde * Delta(t)^(-alpha - n/2)`` for the Lorentz tube.

    Obtained from hyperbolic coordinates on the cone:
    ``Ctilde = A * Gamma(2 alpha + n) * B(alpha + n/2, 1/2) / (4 pi)^(2 alpha + n)``
    with ``A = int_{|s|<1, s in R^(n-2)} (1 - |s|^2)^alpha ds
              = pi^((n-2)/2) Gamma(alpha + 1) / Gamma(alpha + n/2)``.
    At ``n = 2`` this equals ``2^(2 alpha + 1) Gamma(alpha + 1)^2 / (4 pi)^(2 alpha + 2)``.
    """
    log_a = 0.5 * (n - 2) * math.log(math.pi) + log_gamma(alpha + 1.0) - log_gamma(alpha + 0.5 * n)
    log_c = log_a + log_gamma(2.0 * alpha + n) + math.log(beta(alpha + 0.5 * n, 0.5))
    return math.exp(log_c - (2.0 * alpha + n) * _LOG_4PI)


def lorentz_symbol_constant_literature(n: int, alpha: float) -> float:
    """The Lorentz symbol constant in its commonly quoted form (defined for ``n >= 3``).

    It carries the surface area of the unit sphere of R^(n-1) where the
    section integral needs that of R^(n-2), so it exceeds
    ``lorentz_symbol_constant`` by ``sqrt(pi) Gamma(n/2 - 1) / Gamma((n-1)/2)``.
    Kept for reporting only.
    """
    if n < 3:
        raise DomainError("the quoted constant contains Gamma(n/2 - 1) and needs n >= 3")
    log_c = (
        0.5 * (n - 1) * math.log(math.pi)
        + log_gamma(0.5 * n - 1.0)
        + log_gamma(alpha + 1.0)
        + log_gamma(2.0 * alpha + n)
        + 0.5 * math.log(math.pi)
        - (2.0 * alpha + n) * _LOG_4PI
        - log_gamma(0.5 * (n - 1))
        - log_gamma(alpha + 0.5 * (n + 1))
    )
    return math.exp(log_c)


def _log_symbol_rows(space: SpaceSpec, t: np.ndarray) -> np.ndarray:
    """``log I`` on rows of ``t`` inside the support (caller masks)."""
    tn = t[:, -1]
    if space.family in HALF_PLANE_FAMILIES:
        v = space.half_plane_exponent
        return math.log(space.half_plane_scale) + log_gamma(v) - v * (_LOG_4PI + np.log(tn))
    n, a = space.dim, space.param
    tail = t[:, :-1]
    sq = np.einsum("ij,ij->i", tail, tail)
    if space.family is Family.PARABOLOID:
        log_c = (1 - n) * math.log(2.0) + log_gamma(a + 1.0) - (a + 1.0) * _LOG_4PI
        return log_c + math.pi * sq / tn + (0.5 * (1 - n) - a - 1.0) * np.log(tn)
    delta = tn * tn - sq
    return math.log(lorentz_symbol_constant(n, a)) - (a + 0.5 * n) * np.log(delta)


def log_symbol_closed(space: SpaceSpec, t) -> float:
    """``log I(t)``; ``+inf`` off the support."""
    require_tube(space)
    t = as_real_vector(t, space.dim)
    if not in_support(space, t):
        return math.inf
    return float(_log_symbol_rows(space, t[None, :])[0])


def symbol_closed(space: SpaceSpec, t) -> float:
    """Closed-form ``I(t)``; exactly ``math.inf`` off the support set."""
    log_i = log_symbol_closed(space, t)
    if log_i == math.inf:
        return math.inf
    return math.exp(log_i)


def inverse_symbol(space: SpaceSpec, t) -> np.ndarray:
    """Vectorised ``1 / I(t)`` over rows of ``t``, set to 0 where ``I(t) = inf``."""
    require_tube(space)
    t = np.asarray(t, dtype=float).reshape(-1, space.dim)
    out = np.zeros(len(t))
    mask = _support_mask(space, t)
    if np.any(mask):
        out[mask] = np.exp(-_log_symbol_rows(space, t[mask]))
    return out


# -- numeric symbol ---------------------------------------------------------


def _mc_symbol(space: SpaceSpec, t: np.ndarray, cfg: QuadratureConfig) -> IntegrationResult:
    base = space.base
    tail_norm = float(np.linalg.norm(t[:-1]))
    if space.family is Family.LORENTZ:
        rate = 4.0 * math.pi * (t[-1] - tail_norm)
    else:
        rate = 4.0 * math.pi * t[-1]

    def sampler(count, rng):
        pts = draw_interior(base, count, rng, rate)
        return pts, interior_density(base, pts, rate)

    def integrand(y):
        return tube_weight(space, y) * np.exp(-4.0 * math.pi * (y @ t))

    return integrate_mc(integrand, sampler, cfg)


def symbol_integral(space: SpaceSpec, t, cfg: Optional[QuadratureConfig] = None) -> IntegrationResult:
    """Quadrature of the defining integral of ``I(t)`` with full diagnostics.

    One variable: adaptive semi-infinite rule. Two variables: iterated rule in
    cone-adapted coordinates. Three or more: Monte Carlo with the cone
    sampler (``cfg.mc_samples`` draws). Off the support the value is ``inf``
    with zero error, decided by the support predicate.
    """
    require_tube(space)
    cfg = cfg or QuadratureConfig()
    t = as_real_vector(t, space.dim)
    if not in_support(space, t):
        return IntegrationResult(math.inf, 0.0, 0, True)
    four_pi = 4.0 * math.pi
    if space.dim == 1:
        v = space.half_plane_exponent
        c = space.half_plane_scale
        rate = four_pi * t[0]
        return integrate_semi_infinite(lambda y: c * y ** (v - 1.0) * np.exp(-rate * y), rate, cfg)
    if space.dim == 2:
        a = space.param

        if space.family is Family.PARABOLOID:
            def f(y1, y2, q):
                return q**a * np.exp(-four_pi * (t[0] * y1 + t[1] * y2))

            return integrate_cone_2d(f, "paraboloid", four_pi * t, cfg)

        def f(y1, y2, q):
            return q**a * np.exp(-four_pi * (t[0] * y1 + t[1] * y2))

        return integrate_cone_2d(f, "lorentz", four_pi * t, cfg)
    return _mc_symbol(space, t, cfg)


def symbol_numeric(space: SpaceSpec, t, cfg: Optional[QuadratureConfig] = None) -> float:
    """``I(t)`` by direct quadrature; ``inf`` off the support.

    Raises ConvergenceError (carrying the best estimate) when a deterministic
    rule misses ``cfg.rel_tol``. Monte Carlo results (``n >= 3``) are returned
    as they are; use ``symbol_integral`` for their standard error.
    """
    res = symbol_integral(space, t, cfg)
    if space.dim <= 2 and not res.converged:
        raise ConvergenceError(
            f"symbol quadrature did not converge for {space.label()}",
            value=res.value,
            error_estimate=res.error_estimate,
        )
    return float(np.real(res.value))


def with_config(cfg: Optional[QuadratureConfig], **changes) -> QuadratureConfig:
    return replace(cfg or QuadratureConfig(), **changes)
