"""Biholomorphisms between the model domains and the paraboloid tube, and kernel pull-back."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, PoleError
from .geometry import ModelDomain, TubeBase, domain_contains
from .numcore import as_point, bilinear_dot

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Biholomorphism:
    name: str
    forward: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]
    jac_det: Callable[[np.ndarray], complex]
    source: object
    target: object
    n: int

    def __call__(self, z) -> np.ndarray:
        return self.forward(as_point(z, self.n))

    def inverse_jac_det(self, w) -> complex:
        # chain rule: D(Phi^-1)(w) = 1 / DPhi(Phi^-1(w))
        w = as_point(w, self.n)
        return 1.0 / self.jac_det(self.inverse(w))


def phi_siegel_to_paraboloid_tube(n: int) -> Biholomorphism:
    """``Phi(z) = (sqrt(2) z', z_n - i z'.z')`` with constant Jacobian ``2^((n-1)/2)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    det = 2.0 ** (0.5 * (n - 1))

    def forward(z):
        z = as_point(z, n)
        zp = z[:-1]
        return np.append(_SQRT2 * zp, z[-1] - 1j * bilinear_dot(zp, zp))

    def inverse(w):
        w = as_point(w, n)
        wp = w[:-1]
        return np.append(wp / _SQRT2, w[-1] + 0.5j * bilinear_dot(wp, wp))

    def jac_det(z):
        return complex(det)

    # At n = 1 the map is the identity of the upper half-plane.
    target = TubeBase.paraboloid(n) if n >= 2 else TubeBase.half_line()
    return Biholomorphism("siegel->paraboloid-tube", forward, inverse, jac_det, ModelDomain.siegel(n), target, n)


def cayley_ball_to_siegel(n: int) -> Biholomorphism:
    """Cayley transform ``(2 z' / (1 + z_n), 4i (1 - z_n) / (1 + z_n))``."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def forward(z):
        z = as_point(z, n)
        d = 1.0 + z[-1]
        if d == 0:
            raise PoleError("the Cayley transform has a pole at z_n = -1")
        return np.append(2.0 * z[:-1] / d, 4j * (1.0 - z[-1]) / d)

    def inverse(w):
        w = as_point(w, n)
        d = 1.0 - 0.25j * w[-1]
        if d == 0:
            raise PoleError("the inverse Cayley transform has a pole at w_n = -4i")
        return np.append(w[:-1] / d, (1.0 + 0.25j * w[-1]) / d)

    def jac_det(z):
        z = as_point(z, n)
        d = 1.0 + z[-1]
        if d == 0:
            raise PoleError("the Cayley transform has a pole at z_n = -1")
        return -1j * 2.0 ** (n + 2) / d ** (n + 1)

    return Biholomorphism("ball->siegel", forward, inverse, jac_det, ModelDomain.ball(n), ModelDomain.siegel(n), n)


def identity_map(domain, n: int) -> Biholomorphism:
    def ident(z):
        return as_point(z, n).copy()

    return Biholomorphism("identity", ident, ident, lambda z: 1.0 + 0j, domain, domain, n)


def compose(outer: Biholomorphism, inner: Biholomorphism) -> Biholomorphism:
    """``outer o inner``; the Jacobian determinant multiplies along the chain."""
    if outer.n != inner.n:
        raise ValueError("maps act on different dimensions")

    def forward(z):
        return outer.forward(inner.forward(z))

    def inverse(w):
        return inner.inverse(outer.inverse(w))

    def jac_det(z):
        return outer.jac_det(inner.forward(z)) * inner.jac_det(z)

    return Biholomorphism(
        f"{inner.name}|{outer.name}", forward, inverse, jac_det, inner.source, outer.target, inner.n
    )


def pullback_kernel(phi: Biholomorphism, target_kernel, z, zeta) -> complex:
    """``DPhi(z) K(Phi(z), Phi(zeta)) conj(DPhi(zeta))``.

    ``target_kernel`` is any callable ``K(a, b)`` on the target domain, for
    instance a ``KernelHandle``.
    """
    z = as_point(z, phi.n)
    zeta = as_point(zeta, phi.n)
    for label, p in (("z", z), ("zeta", zeta)):
        if not domain_contains(phi.source, p):
            raise DomainError(f"{label} is not in the source domain of {phi.name}")
    a, b = phi.forward(z), phi.forward(zeta)
    return phi.jac_det(z) * complex(target_kernel(a, b)) * np.conj(phi.jac_det(zeta))


def siegel_defining_gap(z) -> float:
    """``Im z_n - |z'|^2`` (positive exactly on the Siegel domain)."""
    z = as_point(z)
    return float(z[-1].imag - np.vdot(z[:-1], z[:-1]).real)


def paraboloid_defining_gap(w) -> float:
    """``Im w_n - |Im w'|^2`` (positive exactly on the paraboloid tube)."""
    w = as_point(w)
    v = w.imag
    return float(v[-1] - v[:-1] @ v[:-1])
