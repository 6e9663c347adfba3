"""Weighted Bergman kernels: closed forms, the Fourier-Laplace route, and test profiles.

For a tube space the kernel has the integral representation

    K(z, w) = int_{U_I} exp(2 pi i t . (z - conj(w))) / I(t) dt,

which ``kernel_numeric`` evaluates by quadrature and ``kernel_closed``
evaluates in closed form. All non-integer powers use the principal branch;
on the domains involved the bases never reach ``(-inf, 0]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    ConvergenceError,
    DomainError,
    InadmissibleProfileError,
    UnsupportedFamilyError,
)
from .geometry import TubeBase, draw_interior, interior_density
from .numcore import as_point, bilinear_dot, log_gamma, principal_pow, principal_pow_array
from .quadrature import (
    IntegrationResult,
    QuadratureConfig,
    integrate_cone_2d,
    integrate_mc,
    integrate_semi_infinite,
)
from .weights import HALF_PLANE_FAMILIES, Family, SpaceSpec, lorentz_symbol_constant, require_tube

_LOG2 = math.log(2.0)
_LOG_PI = math.log(math.pi)
_LOG_4PI = math.log(4.0 * math.pi)


# -- constants ----------------------------------------------------------------


def _log_c1(n: int, a: float) -> float:
    return (n + 1 + 2 * a) * _LOG2 + log_gamma(n + a + 1.0) - log_gamma(a + 1.0) - n * _LOG_PI


def _log_c4(n: int, a: float) -> float:
    return (
        2 * a * _LOG2
        + log_gamma(a + 0.5 * n + 1.0)
        + log_gamma(2 * a + 2 * n)
        + log_gamma(a + 0.5 * n + 0.5)
        - n * _LOG_PI
        - log_gamma(a + 1.0)
        - log_gamma(2 * a + n)
        - log_gamma(a + n + 0.5)
    )


def paraboloid_constant(n: int, alpha: float) -> float:
    """``C1 = 2^(n+1+2a) Gamma(n+a+1) / (Gamma(a+1) pi^n)``; also defined at ``n = 1``."""
    return math.exp(_log_c1(n, alpha))


def constant(space: SpaceSpec) -> float:
    """Leading constant of the closed-form kernel of ``space``."""
    fam = space.family
    if fam is Family.UNWEIGHTED_HALFPLANE:
        return 1.0 / math.pi
    if fam is Family.HALFPLANE_POWER:
        v = space.param
        return 2.0 ** (v - 1.0) * v / math.pi
    if fam is Family.BERGMAN_SELBERG:
        q = space.param
        return math.exp((2 * q - 3) * _LOG2 + log_gamma(2 * q))
    n, a = space.dim, space.param
    if fam is Family.PARABOLOID:
        return math.exp(_log_c1(n, a))
    if fam is Family.SIEGEL:
        return math.exp(_log_c1(n, a) - (2 + a) * _LOG2)
    if fam is Family.BALL:
        # C3 = 2^(1-3a-n) C2 = 2^(-1-4a-n) C1
        return math.exp(_log_c1(n, a) - (1 + 4 * a + n) * _LOG2)
    if fam is Family.LORENTZ:
        return math.exp(_log_c4(n, a))
    raise UnsupportedFamilyError(f"no kernel constant for {fam.value}")


def selberg_literature_constant(q: float) -> float:
    """The constant ``Gamma(2q)`` as usually quoted for the Bergman-Selberg kernel.

    It agrees with ``constant(SpaceSpec.bergman_selberg(q))`` only at ``q = 3/2``.
    """
    return math.gamma(2.0 * q)


# -- closed forms -------------------------------------------------------------


def lorentz_form_complex(z) -> complex:
    """``P(z) = z_1^2 + ... + z_{n-1}^2 - z_n^2``."""
    z = np.asarray(z, dtype=complex)
    return bilinear_dot(z[:-1], z[:-1]) - z[-1] * z[-1]


def paraboloid_kernel_formula(n: int, alpha: float, z, w) -> complex:
    """Paraboloid-tube closed form, valid as a formula for every ``n >= 1``.

    At ``n = 1`` the ``z'`` block is empty and the expression reduces to the
    half-plane kernel with exponent ``v = alpha + 1``.
    """
    z = as_point(z, n)
    w = as_point(w, n)
    zeta = z - np.conj(w)
    base = bilinear_dot(zeta[:-1], zeta[:-1]) - 2j * zeta[-1]
    return paraboloid_constant(n, alpha) * principal_pow(base, -(n + alpha + 1.0))


def _check_in_domain(space: SpaceSpec, z, w):
    z = as_point(z, space.dim)
    w = as_point(w, space.dim)
    for name, p in (("z", z), ("w", w)):
        if not space.contains(p):
            raise DomainError(f"{name} is not in the domain of {space.label()}")
    return z, w


def kernel_closed(space: SpaceSpec, z, w) -> complex:
    """Closed-form weighted Bergman kernel ``K(z, w)``."""
    z, w = _check_in_domain(space, z, w)
    fam = space.family
    c = constant(space)
    if fam in HALF_PLANE_FAMILIES:
        zeta = z[0] - w[0].conjugate()
        v = space.half_plane_exponent
        return c * principal_pow(-1j * zeta, -(v + 1.0))
    n, a = space.dim, space.param
    if fam is Family.PARABOLOID:
        return paraboloid_kernel_formula(n, a, z, w)
    if fam is Family.LORENTZ:
        return c * principal_pow(lorentz_form_complex(z - np.conj(w)), -(a + n))
    wb = np.conj(w)
    if fam is Family.SIEGEL:
        base = 1j * (wb[-1] - z[-1]) - 2.0 * bilinear_dot(z[:-1], wb[:-1])
        return c * principal_pow(base, -(n + a + 1.0))
    # ball
    base = 1.0 - bilinear_dot(wb, z)
    front = principal_pow(1.0 + wb[-1], a) * principal_pow(1.0 + z[-1], a)
    return c * front * principal_pow(base, -(n + a + 1.0))


def halfplane_kernel_array(space: SpaceSpec, z, w: complex) -> np.ndarray:
    """Vectorised ``K(z, w)`` of a half-plane family over an array of points ``z``."""
    if space.family not in HALF_PLANE_FAMILIES:
        raise UnsupportedFamilyError("array evaluation is provided for half-plane families")
    z = np.asarray(z, dtype=complex)
    v = space.half_plane_exponent
    return constant(space) * principal_pow_array(-1j * (z - np.conj(w)), -(v + 1.0))


# -- numeric route ------------------------------------------------------------


def _numeric_1d(space, zeta, cfg):
    v = space.half_plane_exponent
    log_norm = v * _LOG_4PI - math.log(space.half_plane_scale) - log_gamma(v)

    def f(t):
        return np.exp(log_norm + v * np.log(t) + 2j * math.pi * t * zeta)

    return integrate_semi_infinite(f, 2.0 * math.pi * zeta.imag, cfg)


def _numeric_paraboloid_2d(space, zeta, cfg):
    a = space.param
    log_norm = _LOG2 + (a + 1.0) * _LOG_4PI - log_gamma(a + 1.0)
    p = a + 1.5
    y1, y2 = zeta[0].imag, zeta[1].imag

    def f(t1, t2, q):
        # 1/I(t) = 2 (4 pi)^(a+1) / Gamma(a+1) * exp(-pi t1^2 / t2) * t2^(a+3/2)
        return np.exp(
            log_norm - math.pi * t1 * t1 / t2 + p * np.log(t2) + 2j * math.pi * (t1 * zeta[0] + t2 * zeta[1])
        )

    # Completing the square in t1 leaves exp(-pi t2 (2 Y2 - Y1^2)).
    decay = (0.0, math.pi * (2.0 * y2 - y1 * y1))
    return integrate_cone_2d(f, "halfplane", decay, cfg, inner_center=-y1)


def _numeric_lorentz_2d(space, zeta, cfg):
    a = space.param
    log_norm = -math.log(lorentz_symbol_constant(2, a))

    def f(t1, t2, q):
        # 1/I(t) = Delta(t)^(a+1) / C~ with Delta = q exact in cone coordinates.
        return np.exp(log_norm + (a + 1.0) * np.log(q) + 2j * math.pi * (t1 * zeta[0] + t2 * zeta[1]))

    return integrate_cone_2d(f, "lorentz", 2.0 * math.pi * zeta.imag, cfg)


def _numeric_mc(space, zeta, cfg):
    n, a = space.dim, space.param
    Y = zeta.imag
    if space.family is Family.LORENTZ:
        base = TubeBase.lorentz_cone(n)
        rate = 2.0 * math.pi * (Y[-1] - float(np.linalg.norm(Y[:-1])))
        log_norm = -math.log(lorentz_symbol_constant(n, a))

        def sampler(count, rng):
            pts = draw_interior(base, count, rng, rate)
            return pts, interior_density(base, pts, rate)

        def integrand(t):
            delta = t[:, -1] ** 2 - np.einsum("ij,ij->i", t[:, :-1], t[:, :-1])
            return np.exp(log_norm + (a + 0.5 * n) * np.log(delta) + 2j * math.pi * (t @ zeta))

    else:
        # t_n ~ Exp(rate), t' | t_n ~ N(-t_n Y', t_n / (2 pi)) follows the
        # Gaussian factor exp(-pi |t'|^2 / t_n - 2 pi t' . Y').
        Yp = Y[:-1]
        rate = math.pi * (2.0 * Y[-1] - float(Yp @ Yp))
        k = n - 1
        log_norm = (n - 1) * _LOG2 + (a + 1.0) * _LOG_4PI - log_gamma(a + 1.0)
        p = a + 1.0 + 0.5 * (n - 1)

        def sampler(count, rng):
            tn = rng.exponential(1.0 / rate, size=count)
            sd = np.sqrt(tn / (2.0 * math.pi))
            tp = -tn[:, None] * Yp[None, :] + sd[:, None] * rng.standard_normal((count, k))
            dev = tp + tn[:, None] * Yp[None, :]
            log_pdf = (
                math.log(rate)
                - rate * tn
                - 0.5 * k * np.log(2.0 * math.pi * sd * sd)
                - np.einsum("ij,ij->i", dev, dev) / (2.0 * sd * sd)
            )
            return np.column_stack([tp, tn]), np.exp(log_pdf)

        def integrand(t):
            tn = t[:, -1]
            sq = np.einsum("ij,ij->i", t[:, :-1], t[:, :-1])
            return np.exp(log_norm - math.pi * sq / tn + p * np.log(tn) + 2j * math.pi * (t @ zeta))

    return integrate_mc(integrand, sampler, cfg)


def kernel_integral(space: SpaceSpec, z, w, cfg: Optional[QuadratureConfig] = None) -> IntegrationResult:
    """Quadrature of the Fourier-Laplace representation with full diagnostics."""
    require_tube(space)
    cfg = cfg or QuadratureConfig()
    z, w = _check_in_domain(space, z, w)
    zeta = z - np.conj(w)
    if space.dim == 1:
        return _numeric_1d(space, complex(zeta[0]), cfg)
    if space.dim == 2:
        if space.family is Family.PARABOLOID:
            return _numeric_paraboloid_2d(space, zeta, cfg)
        return _numeric_lorentz_2d(space, zeta, cfg)
    if space.dim == 3:
        return _numeric_mc(space, zeta, cfg)
    raise UnsupportedFamilyError("numeric kernels are provided for n <= 3 only")


def kernel_numeric(space: SpaceSpec, z, w, cfg: Optional[QuadratureConfig] = None) -> tuple[complex, float]:
    """``(K(z, w), error estimate)`` from the integral representation.

    Deterministic rules (``n <= 2``) raise ConvergenceError carrying the best
    value when they miss the tolerance; the Monte Carlo route (``n = 3``)
    returns its standard error instead.
    """
    res = kernel_integral(space, z, w, cfg)
    if space.dim <= 2 and not res.converged:
        raise ConvergenceError(
            f"kernel quadrature did not converge for {space.label()}",
            value=complex(res.value),
            error_estimate=float(res.error_estimate),
        )
    return complex(res.value), float(res.error_estimate)


@dataclass(frozen=True)
class KernelHandle:
    """Callable kernel of a space, in closed form or by quadrature."""

    space: SpaceSpec
    mode: str = "closed"
    cfg: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if self.mode not in ("closed", "numeric"):
            raise ValueError(f"mode must be 'closed' or 'numeric', got {self.mode!r}")
        if self.mode == "numeric":
            require_tube(self.space)

    def evaluate(self, z, w) -> tuple[complex, Optional[float]]:
        if self.mode == "closed":
            return kernel_closed(self.space, z, w), None
        return kernel_numeric(self.space, z, w, self.cfg)

    def __call__(self, z, w) -> complex:
        return self.evaluate(z, w)[0]


# -- test profiles and the Laplace transform -----------------------------------


@dataclass(frozen=True)
class TestProfile:
    """A function on the half-line ``t > 0`` (the support set of every 1-D family).

    ``truncated-exponential``: ``f(t) = t^power exp(-rate t)``.
    ``gaussian-bump``: ``f(t) = exp(-(t - center)^2 / (2 width^2))``.
    """

    __test__ = False  # not a pytest class

    kind: str
    rate: float = 1.0
    power: float = 0.0
    center: float = 1.0
    width: float = 0.1

    def __post_init__(self):
        if self.kind not in ("truncated-exponential", "gaussian-bump"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind == "truncated-exponential" and not (self.rate > 0.0 and self.power >= 0.0):
            raise ValueError("truncated exponential needs rate > 0 and power >= 0")
        if self.kind == "gaussian-bump" and not self.width > 0.0:
            raise ValueError("gaussian bump needs width > 0")

    @classmethod
    def truncated_exponential(cls, rate: float = 1.0, power: float = 0.0) -> "TestProfile":
        return cls("truncated-exponential", rate=rate, power=power)

    @classmethod
    def gaussian_bump(cls, center: float, width: float) -> "TestProfile":
        return cls("gaussian-bump", center=center, width=width)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "truncated-exponential":
            val = np.exp(-self.rate * t) * t**self.power
        else:
            val = np.exp(-0.5 * ((t - self.center) / self.width) ** 2)
        return np.where(t > 0.0, val, 0.0)

    def _order_at_zero(self) -> float:
        # f(t) ~ t^k as t -> 0+
        return self.power if self.kind == "truncated-exponential" else 0.0

    def is_admissible(self, space: SpaceSpec) -> bool:
        """Whether ``int |f|^2 I dt`` is finite; ``I(t) ~ t^(-v)`` at 0 and decays at infinity."""
        if space.dim != 1:
            return False
        return 2.0 * self._order_at_zero() - space.half_plane_exponent > -1.0

    def require_admissible(self, space: SpaceSpec) -> None:
        if not self.is_admissible(space):
            raise InadmissibleProfileError(
                f"{self.kind} profile has infinite L2_I norm for {space.label()}"
            )

    def l2_norm_squared_closed(self, space: SpaceSpec) -> float:
        """Closed form of ``int_0^inf |f|^2 I dt`` for truncated exponentials."""
        self.require_admissible(space)
        if self.kind != "truncated-exponential":
            raise UnsupportedFamilyError("closed L2_I norm is available for truncated exponentials only")
        v, c, k, a = space.half_plane_exponent, space.half_plane_scale, self.power, self.rate
        s = 2.0 * k - v + 1.0
        return c * math.exp(log_gamma(v) - v * _LOG_4PI + log_gamma(s) - s * math.log(2.0 * a))

    def l2_norm_squared(self, space: SpaceSpec, cfg: Optional[QuadratureConfig] = None) -> IntegrationResult:
        """``int_0^inf |f(t)|^2 I(t) dt`` by quadrature."""
        self.require_admissible(space)
        v, c = space.half_plane_exponent, space.half_plane_scale
        log_i0 = math.log(c) + log_gamma(v) - v * _LOG_4PI

        def g(t):
            return np.abs(self(t)) ** 2 * np.exp(log_i0 - v * np.log(t))

        hint = 2.0 * self.rate if self.kind == "truncated-exponential" else 1.0 / self.width
        return integrate_semi_infinite(g, hint, cfg)


def laplace_transform(f: TestProfile, z, cfg: Optional[QuadratureConfig] = None) -> complex:
    """``F(z) = int_0^inf f(t) exp(2 pi i z t) dt`` for ``Im z > 0``."""
    z = complex(as_point(z, 1)[0])
    if not z.imag > 0.0:
        raise DomainError("the Laplace transform needs Im z > 0")
    if f.kind == "truncated-exponential":
        k = f.power
        return math.gamma(k + 1.0) * principal_pow(f.rate - 2j * math.pi * z, -(k + 1.0))

    def g(t):
        return f(t) * np.exp(2j * math.pi * z * t)

    res = integrate_semi_infinite(g, 2.0 * math.pi * z.imag, cfg)
    if not res.converged:
        raise ConvergenceError("Laplace transform quadrature did not converge", value=res.value)
    return complex(res.value)
