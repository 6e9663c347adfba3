"""Executable checks of the kernel identities, each producing a ``CheckReport``.

Every check is deterministic given its seed. ``max_rel_err`` is the quantity
compared against ``tolerance``; for inequality-type checks it is the largest
violation (0 when the inequality holds everywhere).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import ConvergenceError, DomainError, UnsupportedFamilyError
from .geometry import (
    ModelDomain,
    TubeBase,
    boundary_distance,
    draw_interior,
    model_boundary_distance,
    sample_model_points,
    sample_tube_points,
)
from .kernels import (
    KernelHandle,
    TestProfile,
    constant,
    halfplane_kernel_array,
    kernel_closed,
    kernel_integral,
    paraboloid_kernel_formula,
    selberg_literature_constant,
)
from .numcore import principal_pow_array
from .quadrature import QuadratureConfig, integrate_cone_2d
from .transforms import (
    cayley_ball_to_siegel,
    compose,
    paraboloid_defining_gap,
    phi_siegel_to_paraboloid_tube,
    pullback_kernel,
    siegel_defining_gap,
)
from .weights import (
    HALF_PLANE_FAMILIES,
    Family,
    SpaceSpec,
    log_symbol_closed,
    model_weight,
    symbol_closed,
    symbol_integral,
)


@dataclass
class CheckReport:
    check_name: str
    space: dict
    samples: int
    max_rel_err: float
    tolerance: float
    passed: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        # JSON has no inf/nan; keep the report loadable everywhere.
        for key in ("max_rel_err", "tolerance"):
            v = out[key]
            if not math.isfinite(v):
                out[key] = str(v)
        return out


def _report(name, space, samples, err, tol, notes=None) -> CheckReport:
    err = float(err)
    passed = bool(err <= tol)  # nan compares False
    return CheckReport(name, _describe(space), int(samples), err, float(tol), passed, list(notes or []))


def _describe(space) -> dict:
    return space.describe() if isinstance(space, SpaceSpec) else dict(space)


def family_notes(space: SpaceSpec) -> list[str]:
    notes = []
    if space.family is Family.BERGMAN_SELBERG:
        q = space.param
        notes.append(
            "Bergman-Selberg constant: commonly printed Gamma(2q) = "
            f"{selberg_literature_constant(q):.12g}; integral-formula value 2^(2q-3) Gamma(2q) = "
            f"{constant(space):.12g}; the two coincide only at q = 3/2"
        )
    if space.family is Family.BALL:
        notes.append("ball weight is 4^alpha (1-|z|^2)^alpha / |1+z_n|^(2 alpha), the Cayley pull-back of the Siegel weight")
    return notes


def _rng(seed: int, *salt: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *salt]))


def sample_points(space: SpaceSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random interior points of the domain of ``space`` as rows."""
    if space.tube_eligible:
        return sample_tube_points(space.base, count, rng)
    return sample_model_points(space.domain, count, rng)


def sample_support(space: SpaceSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random points of the support set ``U_I`` as rows."""
    n = space.dim
    if space.family is Family.LORENTZ:
        return draw_interior(TubeBase.lorentz_cone(n), count, rng)
    tn = rng.exponential(1.0, size=count) + 0.05
    if n == 1:
        return tn[:, None]
    return np.column_stack([rng.standard_normal((count, n - 1)), tn])


# -- algebraic identities -------------------------------------------------------


def check_symmetry(space: SpaceSpec, samples: int = 500, tol: float = 1e-13, seed: int = 0) -> CheckReport:
    """``K(z, w) = conj(K(w, z))``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = _rng(seed, 1)
    Z, W = sample_points(space, samples, rng), sample_points(space, samples, rng)
    worst = 0.0
    for z, w in zip(Z, W):
        a, b = kernel_closed(space, z, w), kernel_closed(space, w, z)
        worst = max(worst, abs(a - b.conjugate()) / abs(a))
    return _report("symmetry", space, samples, worst, tol, family_notes(space))


def check_diagonal_positivity(space: SpaceSpec, samples: int = 200, tol: float = 1e-13, seed: int = 0) -> CheckReport:
    """``K(z, z)`` is real and positive; the error is ``|Im K| / |K|`` (inf if ``Re K <= 0``)."""
    rng = _rng(seed, 2)
    worst = 0.0
    for z in sample_points(space, samples, rng):
        k = kernel_closed(space, z, z)
        worst = max(worst, math.inf if k.real <= 0.0 else abs(k.imag) / abs(k))
    return _report("diagonal-positivity", space, samples, worst, tol, family_notes(space))


def check_log_convexity(space: SpaceSpec, triples: int = 200, tol: float = 1e-12, seed: int = 0) -> CheckReport:
    """Midpoint convexity of ``log I`` on random pairs of support points."""
    rng = _rng(seed, 3)
    A, B = sample_support(space, triples, rng), sample_support(space, triples, rng)
    worst = 0.0
    for a, b in zip(A, B):
        la, lb, lm = log_symbol_closed(space, a), log_symbol_closed(space, b), log_symbol_closed(space, 0.5 * (a + b))
        scale = max(1.0, abs(la), abs(lb))
        worst = max(worst, (lm - 0.5 * (la + lb)) / scale)
    return _report("log-convexity", space, triples, max(worst, 0.0), tol, ["error = largest midpoint excess of log I"])


def check_homogeneity(space: SpaceSpec, samples: int = 200, tol: float = 1e-12, seed: int = 0) -> CheckReport:
    """Lorentz tube: ``K(lz, lw) = l^(-2(alpha+n)) K(z, w)`` for ``l > 0``."""
    if space.family is not Family.LORENTZ:
        raise UnsupportedFamilyError("homogeneity is checked for Lorentz tubes")
    rng = _rng(seed, 4)
    Z, W = sample_points(space, samples, rng), sample_points(space, samples, rng)
    lam = np.exp(rng.uniform(-1.5, 1.5, size=samples))
    s = -2.0 * (space.param + space.dim)
    worst = 0.0
    for z, w, l in zip(Z, W, lam):
        expected = l**s * kernel_closed(space, z, w)
        worst = max(worst, abs(kernel_closed(space, l * z, l * w) - expected) / abs(expected))
    return _report("homogeneity", space, samples, worst, tol)


def check_degeneration(alpha: float, samples: int = 200, tol: float = 1e-12, seed: int = 0) -> CheckReport:
    """Paraboloid formula at ``n = 1`` against the half-plane kernel with ``v = alpha + 1``."""
    target = SpaceSpec.halfplane_power(alpha + 1.0)
    rng = _rng(seed, 5)
    Z, W = sample_points(target, samples, rng), sample_points(target, samples, rng)
    worst = 0.0
    for z, w in zip(Z, W):
        k = kernel_closed(target, z, w)
        worst = max(worst, abs(paraboloid_kernel_formula(1, alpha, z, w) - k) / abs(k))
    space = {"family": "paraboloid", "dim": 1, "alpha": alpha}
    return _report("degeneration", space, samples, worst, tol, [f"compared with {target.label()}"])


def check_disc_series(samples: int = 50, tol: float = 1e-8, seed: int = 0, terms: int = 200) -> CheckReport:
    """Ball ``n = 1``, ``alpha = 0`` against ``sum_k (k+1) (z conj(w))^k / pi``."""
    space = SpaceSpec.ball(1, 0.0)
    rng = _rng(seed, 6)
    k = np.arange(terms + 1)
    worst = 0.0
    for _ in range(samples):
        z, w = sample_model_points(space.domain, 2, rng, max_radius=0.5)
        x = z[0] * np.conj(w[0])
        series = complex(np.sum((k + 1) * x**k)) / math.pi
        closed = kernel_closed(space, z, w)
        worst = max(worst, abs(closed - series) / abs(series))
    return _report("disc-series", space, samples, worst, tol, family_notes(space))


# -- maps -------------------------------------------------------------------------


def _pullback_pair(pair: str, n: int, alpha: float):
    if pair == "siegel<-paraboloid":
        phi = phi_siegel_to_paraboloid_tube(n)
        return phi, SpaceSpec.siegel(n, alpha), lambda a, b: paraboloid_kernel_formula(n, alpha, a, b)
    if pair == "ball<-siegel":
        return cayley_ball_to_siegel(n), SpaceSpec.ball(n, alpha), KernelHandle(SpaceSpec.siegel(n, alpha))
    raise ValueError(f"unknown pull-back pair {pair!r}")


PULLBACK_PAIRS = ("siegel<-paraboloid", "ball<-siegel")


def check_pullback(pair: str, n: int, alpha: float, samples: int = 200, tol: float = 1e-12, seed: int = 0) -> CheckReport:
    """Pull-back of the target kernel against the direct closed form on the source."""
    phi, source, target_kernel = _pullback_pair(pair, n, alpha)
    rng = _rng(seed, 7)
    Z, W = sample_points(source, samples, rng), sample_points(source, samples, rng)
    worst = 0.0
    for z, w in zip(Z, W):
        k = kernel_closed(source, z, w)
        worst = max(worst, abs(pullback_kernel(phi, target_kernel, z, w) - k) / abs(k))
    notes = [f"pair {pair}"] + family_notes(source)
    return _report("pullback", source, samples, worst, tol, notes)


def check_weight_compat(pair: str, n: int, alpha: float = 0.0, samples: int = 100, tol: float = 1e-12, seed: int = 0) -> CheckReport:
    """Defining functions agree under the map: the weights are compatible for every alpha."""
    rng = _rng(seed, 8)
    worst = 0.0
    if pair == "siegel<-paraboloid":
        phi = phi_siegel_to_paraboloid_tube(n)
        target = TubeBase.paraboloid(n) if n >= 2 else TubeBase.half_line()
        for w in sample_tube_points(target, samples, rng):
            a, b = siegel_defining_gap(phi.inverse(w)), paraboloid_defining_gap(w)
            worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
        space = SpaceSpec.siegel(n, alpha)
    elif pair == "ball<-siegel":
        phi = cayley_ball_to_siegel(n)
        space = SpaceSpec.ball(n, alpha)
        target = SpaceSpec.siegel(n, alpha)
        for z in sample_model_points(space.domain, samples, rng):
            a, b = model_weight(space, z), model_weight(target, phi.forward(z))
            worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    else:
        raise ValueError(f"unknown pull-back pair {pair!r}")
    return _report("weight-compat", space, samples, worst, tol, [f"pair {pair}"])


def check_round_trip(pair: str, n: int, samples: int = 1000, tol: float = 1e-12, seed: int = 0) -> CheckReport:
    rng = _rng(seed, 9)
    if pair == "siegel<-paraboloid":
        phi = phi_siegel_to_paraboloid_tube(n)
        src = sample_model_points(ModelDomain.siegel(n), samples, rng)
    else:
        phi = cayley_ball_to_siegel(n)
        src = sample_model_points(ModelDomain.ball(n), samples, rng)
    worst = 0.0
    for z in src:
        w = phi.forward(z)
        a = np.max(np.abs(phi.inverse(w) - z)) / max(1.0, np.max(np.abs(z)))
        b = np.max(np.abs(phi.forward(phi.inverse(w)) - w)) / max(1.0, np.max(np.abs(w)))
        worst = max(worst, a, b)
    space = SpaceSpec.siegel(n, 0.0) if pair == "siegel<-paraboloid" else SpaceSpec.ball(n, 0.0)
    return _report("round-trip", space, samples, worst, tol, [f"map {phi.name}"])


def check_chain_consistency(n: int, alpha: float, samples: int = 200, tol: float = 1e-12, seed: int = 0) -> CheckReport:
    """Two successive pull-backs equal one pull-back through the composed map."""
    cay, phi = cayley_ball_to_siegel(n), phi_siegel_to_paraboloid_tube(n)
    comp = compose(phi, cay)

    def tube_kernel(a, b):
        return paraboloid_kernel_formula(n, alpha, a, b)

    def siegel_kernel(a, b):
        return pullback_kernel(phi, tube_kernel, a, b)

    space = SpaceSpec.ball(n, alpha)
    rng = _rng(seed, 10)
    Z, W = sample_points(space, samples, rng), sample_points(space, samples, rng)
    worst = 0.0
    for z, w in zip(Z, W):
        two = pullback_kernel(cay, siegel_kernel, z, w)
        one = pullback_kernel(comp, tube_kernel, z, w)
        worst = max(worst, abs(two - one) / abs(two))
    return _report("chain-consistency", space, samples, worst, tol, family_notes(space))


# -- point evaluation bound -------------------------------------------------------


def boundary_gap(space: SpaceSpec, z) -> float:
    """Euclidean distance in ``C^n = R^(2n)`` from ``z`` to the boundary of the domain."""
    z = np.asarray(z, dtype=complex)
    if space.tube_eligible:
        return boundary_distance(space.base, z.imag)
    return model_boundary_distance(space.domain, z)


def _circle_extremes(g, r0: float, h0: float, radius: float) -> tuple[float, float]:
    """Min and max of ``g(r, h)`` on the circle of ``radius`` about ``(r0, h0)``."""
    th = np.linspace(0.0, 2.0 * math.pi, 2049)
    vals = g(r0 + radius * np.cos(th), h0 + radius * np.sin(th))
    out = []
    for pick in (np.argmin, np.argmax):
        i = int(pick(vals))
        lo, hi = th[i] - 2 * math.pi / 2048, th[i] + 2 * math.pi / 2048
        sign = 1.0 if pick is np.argmin else -1.0
        # golden-section refinement on the bracketing arc
        phi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        for _ in range(60):
            c, d = b - phi * (b - a), a + phi * (b - a)
            fc = sign * g(r0 + radius * math.cos(c), h0 + radius * math.sin(c))
            fd = sign * g(r0 + radius * math.cos(d), h0 + radius * math.sin(d))
            if fc <= fd:
                b = d
            else:
                a = c
        m = 0.5 * (a + b)
        best = g(r0 + radius * math.cos(m), h0 + radius * math.sin(m))
        out.append(min(best, vals[i]) if sign > 0 else max(best, vals[i]))
    return out[0], out[1]


def min_weight_on_ball(space: SpaceSpec, z, radius: float, seed: int = 0) -> float:
    """``min rho`` over the closed Euclidean ball of ``radius`` about ``z`` (inside the domain).

    Defining functions of the tube and Siegel weights depend on ``|y'|`` and
    one more coordinate only, have no critical point inside the domain, and
    reach their extremes over a sphere in the plane through the centre and
    the symmetry axis; ``rho = g^alpha`` then takes its minimum where ``g``
    is smallest (``alpha > 0``) or largest (``alpha < 0``). The ball weight
    is minimised by dense sampling of the sphere and the interior, which can
    only overestimate the minimum and so makes the bound check stricter.
    """
    z = np.asarray(z, dtype=complex)
    fam = space.family
    if fam in HALF_PLANE_FAMILIES:
        y = z[0].imag
        v, c = space.half_plane_exponent, space.half_plane_scale
        return min(c * (y - radius) ** (v - 1.0), c * (y + radius) ** (v - 1.0))
    a = space.param
    if a == 0.0:
        return 1.0
    if fam in (Family.PARABOLOID, Family.LORENTZ, Family.SIEGEL):
        if fam is Family.SIEGEL:
            r0, h0 = float(np.linalg.norm(z[:-1])), float(z[-1].imag)
        else:
            y = z.imag
            r0, h0 = float(np.linalg.norm(y[:-1])), float(y[-1])
        if fam is Family.LORENTZ:
            def g(r, h):
                return h * h - r * r
        else:
            def g(r, h):
                return h - r * r
        gmin, gmax = _circle_extremes(g, r0, h0, radius)
        return gmin**a if a > 0 else gmax**a
    # ball
    rng = _rng(seed, 11)
    n = space.dim
    k = 20000
    d = rng.standard_normal((k, 2 * n))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    radii = np.concatenate([np.ones(k // 2), rng.random(k - k // 2) ** (1.0 / (2 * n))]) * radius
    pts = d * radii[:, None]
    zz = z[None, :] + pts[:, :n] + 1j * pts[:, n:]
    g = 1.0 - np.sum(np.abs(zz) ** 2, axis=1)
    vals = 4.0**a * g**a / np.abs(1.0 + zz[:, -1]) ** (2.0 * a)
    return float(min(vals.min(), model_weight(space, z)))


def point_eval_bound(space: SpaceSpec, z, p: float = 2.0) -> float:
    """``(omega_2n eps_z)^(-1/p) delta_z^(-2n/p)`` with ``delta_z = min(1, dist/2)``."""
    n = space.dim
    delta = min(1.0, boundary_gap(space, z) / 2.0)
    omega = math.pi**n / math.factorial(n)
    eps = min_weight_on_ball(space, z, delta)
    return (omega * eps) ** (-1.0 / p) * delta ** (-2.0 * n / p)


def check_point_eval_bound(space: SpaceSpec, instances: int = 20, p: float = 2.0, seed: int = 0) -> CheckReport:
    """``|F(z)| <= bound * ||F||`` with ``F = K(., w) / sqrt(K(w, w))`` (unit norm)."""
    rng = _rng(seed, 12)
    Z, W = sample_points(space, instances, rng), sample_points(space, instances, rng)
    worst = 0.0
    for z, w in zip(Z, W):
        lhs = abs(kernel_closed(space, z, w)) / math.sqrt(kernel_closed(space, w, w).real)
        worst = max(worst, lhs / point_eval_bound(space, z, p) - 1.0)
    notes = ["error = largest relative excess of |F(z)| over the bound"] + family_notes(space)
    return _report("point-eval-bound", space, instances, max(worst, 0.0), 0.0, notes)


# -- numeric agreement --------------------------------------------------------------


def check_symbol_oracle(
    space: SpaceSpec, points: int = 50, cfg: Optional[QuadratureConfig] = None, tol: float = 1e-8, seed: int = 0
) -> CheckReport:
    """Direct quadrature of the symbol against its closed form.

    For ``n >= 3`` the Monte Carlo value is compared in units of its standard
    error and ``tol`` is the allowed number of standard errors.
    """
    cfg = cfg or QuadratureConfig()
    rng = _rng(seed, 13)
    T = sample_support(space, points, rng)
    worst = 0.0
    for t in T:
        res = symbol_integral(space, t, cfg)
        c = symbol_closed(space, t)
        if space.dim >= 3:
            worst = max(worst, abs(res.value - c) / res.error_estimate)
        else:
            worst = max(worst, abs(res.value - c) / c if res.converged else math.inf)
    notes = ["error in standard errors (Monte Carlo)"] if space.dim >= 3 else []
    if space.family is Family.LORENTZ:
        notes.append("closed symbol uses the corrected section-measure constant")
    return _report("symbol-oracle", space, points, worst, tol, notes)


def check_kernel_numeric(
    space: SpaceSpec, pairs: int = 10, cfg: Optional[QuadratureConfig] = None, tol: float = 1e-8, seed: int = 0
) -> CheckReport:
    """Integral representation of the kernel against the closed form."""
    cfg = cfg or QuadratureConfig()
    rng = _rng(seed, 14)
    Z, W = sample_points(space, pairs, rng), sample_points(space, pairs, rng)
    worst = 0.0
    notes = family_notes(space)
    for z, w in zip(Z, W):
        res = kernel_integral(space, z, w, cfg)
        k = kernel_closed(space, z, w)
        if space.dim >= 3:
            worst = max(worst, abs(res.value - k) / res.error_estimate)
        else:
            worst = max(worst, abs(res.value - k) / abs(k) if res.converged else math.inf)
    if space.dim >= 3:
        notes.append("error in standard errors (Monte Carlo)")
    return _report("kernel-numeric", space, pairs, worst, tol, notes)


# -- integrals over the half-plane --------------------------------------------------


def _halfplane_integral(space: SpaceSpec, integrand, y_scale: float, cfg: QuadratureConfig):
    """``int_{y>0} int_R integrand(x + iy) rho(y) dx dy`` for a half-plane family."""
    v, c = space.half_plane_exponent, space.half_plane_scale

    def f(x, y, q):
        return integrand(x + 1j * y) * c * y ** (v - 1.0)

    return integrate_cone_2d(f, "halfplane", (0.0, 1.0 / y_scale), cfg)


def _require_halfplane(space: SpaceSpec):
    if space.family not in HALF_PLANE_FAMILIES:
        raise UnsupportedFamilyError("integral checks run for the one-variable families")


def check_self_reproduction(space: SpaceSpec, z, w, cfg: Optional[QuadratureConfig] = None, tol: float = 1e-3) -> CheckReport:
    """``int K(zeta, w) conj(K(zeta, z)) rho dA(zeta) = K(z, w)``.

    The integrand is the conjugate-linear inner product ``<K_w, K_z>``; the
    variant without conjugation agrees by the symmetry of the kernel.
    """
    _require_halfplane(space)
    cfg = cfg or QuadratureConfig(rel_tol=1e-6)
    z, w = complex(z), complex(w)
    # Translation in x leaves everything invariant; centre the pair at 0.
    shift = 0.5 * (z.real + w.real)
    z, w = z - shift, w - shift

    def integrand(zeta):
        return halfplane_kernel_array(space, zeta, w) * np.conj(halfplane_kernel_array(space, zeta, z))

    res = _halfplane_integral(space, integrand, max(z.imag, w.imag), cfg)
    k = kernel_closed(space, [z], [w])
    err = abs(res.value - k) / abs(k)
    notes = [f"quadrature error estimate {res.error_estimate:.3e}"] + family_notes(space)
    return _report("self-reproduction", space, 1, err, tol, notes)


def check_extremal(space: SpaceSpec, zeta, cfg: Optional[QuadratureConfig] = None, tol: float = 1e-3) -> CheckReport:
    """``|| K(., zeta) / K(zeta, zeta) ||^2 = 1 / K(zeta, zeta)``."""
    _require_halfplane(space)
    cfg = cfg or QuadratureConfig(rel_tol=1e-6)
    zeta = complex(zeta)
    zeta = complex(0.0, zeta.imag)
    kzz = kernel_closed(space, [zeta], [zeta]).real

    def integrand(u):
        return np.abs(halfplane_kernel_array(space, u, zeta) / kzz) ** 2

    res = _halfplane_integral(space, integrand, zeta.imag, cfg)
    err = abs(res.value.real - 1.0 / kzz) * kzz
    return _report("extremal", space, 1, err, tol, family_notes(space))


def isometry_sides(space: SpaceSpec, f: TestProfile, cfg: Optional[QuadratureConfig] = None) -> tuple[float, float]:
    """``(||Lf||^2 in A^2_rho, ||f||^2 in L^2_I)``, both by quadrature."""
    _require_halfplane(space)
    cfg = cfg or QuadratureConfig()
    f.require_admissible(space)
    if f.kind != "truncated-exponential":
        raise UnsupportedFamilyError("the area integral uses the closed transform of truncated exponentials")
    k, a = f.power, f.rate
    g = math.gamma(k + 1.0)

    def integrand(z):
        return np.abs(g * principal_pow_array(a - 2j * math.pi * z, -(k + 1.0))) ** 2

    lhs = _halfplane_integral(space, integrand, 1.0 / a, cfg)
    rhs = f.l2_norm_squared(space, cfg)
    if not (lhs.converged and rhs.converged):
        raise ConvergenceError("isometry quadrature did not converge", value=(lhs.value, rhs.value))
    return float(np.real(lhs.value)), float(rhs.value)


def default_profiles(space: SpaceSpec) -> list[TestProfile]:
    """Two admissible truncated exponentials ``t^k e^(-a t)`` for a half-plane family."""
    v = space.half_plane_exponent
    k0 = max(0.0, math.floor(0.5 * (v - 1.0)) + 1.0) if v >= 1.0 else 0.0
    return [TestProfile.truncated_exponential(1.0, k0), TestProfile.truncated_exponential(2.5, k0 + 1.0)]


def check_isometry(space: SpaceSpec, f: TestProfile, cfg: Optional[QuadratureConfig] = None, tol: float = 1e-6) -> CheckReport:
    lhs, rhs = isometry_sides(space, f, cfg)
    err = abs(lhs - rhs) / abs(rhs) if rhs != 0.0 else abs(lhs)
    notes = [f"profile t^{f.power:g} exp(-{f.rate:g} t)", f"area side {lhs:.15g}", f"symbol side {rhs:.15g}"]
    return _report("isometry", space, 1, err, tol, notes + family_notes(space))


# -- suites ---------------------------------------------------------------------------

SUITES = ("properties", "numeric", "integral", "all")


def _wanted(suite: str, group: str) -> bool:
    return suite == "all" or suite == group


def run_space(space: SpaceSpec, suite: str = "all", seed: int = 0, cfg: Optional[QuadratureConfig] = None) -> list[CheckReport]:
    """All checks that apply to ``space`` in the selected suite."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    cfg = cfg or QuadratureConfig()
    fam, n = space.family, space.dim
    out: list[CheckReport] = []
    if _wanted(suite, "properties"):
        out.append(check_symmetry(space, seed=seed, tol=1e-12))
        out.append(check_diagonal_positivity(space, seed=seed, tol=1e-12))
        out.append(check_point_eval_bound(space, seed=seed))
        if space.tube_eligible:
            out.append(check_log_convexity(space, seed=seed))
        if fam is Family.LORENTZ:
            out.append(check_homogeneity(space, seed=seed))
        if fam is Family.HALFPLANE_POWER:
            out.append(check_degeneration(space.param - 1.0, seed=seed))
        if fam is Family.PARABOLOID:
            out.append(check_degeneration(space.param, seed=seed))
        if fam in (Family.PARABOLOID, Family.SIEGEL):
            out.append(check_pullback("siegel<-paraboloid", n, space.param, seed=seed))
            out.append(check_weight_compat("siegel<-paraboloid", n, space.param, seed=seed))
        if fam in (Family.SIEGEL, Family.BALL):
            out.append(check_pullback("ball<-siegel", n, space.param, seed=seed, tol=1e-11))
            out.append(check_weight_compat("ball<-siegel", n, space.param, seed=seed))
            pair = "siegel<-paraboloid" if fam is Family.SIEGEL else "ball<-siegel"
            out.append(check_round_trip(pair, n, seed=seed))
        if fam is Family.BALL:
            out.append(check_chain_consistency(n, space.param, seed=seed))
            if n == 1 and space.param == 0.0:
                out.append(check_disc_series(seed=seed))
    if _wanted(suite, "numeric") and space.tube_eligible:
        if n <= 2:
            out.append(check_symbol_oracle(space, points=5 if n == 2 else 20, cfg=cfg, seed=seed))
            kcfg = cfg if n == 1 else QuadratureConfig(cfg.rel_tol * 100, cfg.abs_tol, cfg.max_evals, cfg.mc_samples, cfg.seed)
            ktol = 1e-8 if n == 1 else (1e-5 if fam is Family.PARABOLOID else 1e-4)
            out.append(check_kernel_numeric(space, pairs=5 if n == 1 else 2, cfg=kcfg, tol=ktol, seed=seed))
        else:
            mcfg = QuadratureConfig(cfg.rel_tol, cfg.abs_tol, cfg.max_evals, min(cfg.mc_samples, 200_000), cfg.seed)
            out.append(check_symbol_oracle(space, points=3, cfg=mcfg, tol=4.0, seed=seed))
    if _wanted(suite, "integral") and fam in HALF_PLANE_FAMILIES:
        icfg = QuadratureConfig(rel_tol=1e-6)
        out.append(check_self_reproduction(space, 1j, 0.5 + 2j, icfg))
        out.append(check_extremal(space, 2j, icfg))
        for f in default_profiles(space):
            out.append(check_isometry(space, f, cfg=QuadratureConfig(rel_tol=1e-8)))
    return out


def default_spaces() -> list[SpaceSpec]:
    """The built-in parameter grid."""
    out = [SpaceSpec.unweighted_halfplane()]
    out += [SpaceSpec.halfplane_power(v) for v in (0.5, 1.0, 2.5)]
    out += [SpaceSpec.bergman_selberg(q) for q in (0.75, 1.0, 1.5)]
    for ctor in (SpaceSpec.paraboloid, SpaceSpec.lorentz, SpaceSpec.siegel, SpaceSpec.ball):
        for n in (1, 2):
            if n == 1 and ctor in (SpaceSpec.paraboloid, SpaceSpec.lorentz):
                continue
            out += [ctor(n, a) for a in (0.0, 0.5, 1.5)]
    out.append(SpaceSpec.lorentz(3, 0.0))
    return out


def run_suite(
    spaces: Optional[Iterable[SpaceSpec]] = None,
    suite: str = "all",
    seed: int = 0,
    cfg: Optional[QuadratureConfig] = None,
) -> list[CheckReport]:
    """Run ``suite`` over ``spaces`` (the default grid when omitted)."""
    spaces = default_spaces() if spaces is None else list(spaces)
    out: list[CheckReport] = []
    for sp in spaces:
        out.extend(run_space(sp, suite, seed, cfg))
    return out
