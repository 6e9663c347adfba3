"""Numerical integration engines.

* ``integrate_semi_infinite`` -- integrals over (0, inf) after the substitution
  ``t = e^u``, with globally adaptive Gauss-Kronrod panels in ``u`` and
  explicit tail control at both ends.
* ``integrate_line`` -- integrals over R, folded onto (0, inf) about a center.
* ``integrate_cone_2d`` -- iterated integrals over two-dimensional cones and
  paraboloid regions in cone-adapted coordinates.
* ``integrate_mc`` -- seeded importance-sampled Monte Carlo.

Integrands are vectorised: they receive numpy arrays and return arrays of
the same shape (real or complex).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateSamplerError

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny

# 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208323585779,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_gauss_half = np.zeros(11)
_gauss_half[1:10:2] = _WG
_GAUSS = np.concatenate([_gauss_half[:-1], _gauss_half[::-1]])
_NPTS = _NODES.size

# Exponent range in which exp(u) is a normal double with room to spare.
_U_MIN = math.log(1e-300)
_U_MAX = math.log(1e300)


@dataclass(frozen=True)
class QuadratureConfig:
    # max_evals caps each adaptive rule on its own; the nested 2-D rules give
    # every inner integral max(1000, max_evals // 50) of them.
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_evals: int = 2_000_000
    mc_samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.abs_tol < 0.0:
            raise ValueError("abs_tol must be non-negative")
        if self.max_evals < 1000:
            raise ValueError("max_evals must be at least 1000")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be positive")

    def target(self, value) -> float:
        return max(self.rel_tol * abs(value), self.abs_tol)


@dataclass
class IntegrationResult:
    value: complex | float
    error_estimate: float
    evals: int
    converged: bool
    abs_integral: float = math.nan


def _gk21(g: Callable, a: np.ndarray, b: np.ndarray):
    """Apply the 21-point rule to every panel ``[a_i, b_i]``.

    Returns the Kronrod estimates, QUADPACK-style error estimates, the
    integral of ``|g|`` per panel, and the evaluation count.
    """
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = center[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(g(x.ravel())).reshape(x.shape)
    kron = half * (fx @ _KRONROD)
    gauss = half * (fx @ _GAUSS)
    absf = np.abs(fx)
    resabs = half * (absf @ _KRONROD)
    mean = (fx @ _KRONROD) * 0.5
    resasc = half * (np.abs(fx - mean[:, None]) @ _KRONROD)
    err = np.abs(kron - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc > 0.0) & (err > 0.0), scaled, err)
    err = np.maximum(err, 50.0 * _EPS * resabs)
    bad = ~np.isfinite(kron)
    if np.any(bad):
        kron = np.where(bad, 0.0, kron)
        err = np.where(bad, np.inf, err)
        resabs = np.where(bad, np.inf, resabs)
    return kron, err, resabs, x.size


class _Panels:
    """Mutable set of Gauss-Kronrod panels refined by largest error first."""

    def __init__(self, g: Callable):
        self.g = g
        self.a = np.empty(0)
        self.b = np.empty(0)
        self.k = np.empty(0)
        self.e = np.empty(0)
        self.r = np.empty(0)
        self.evals = 0

    def add(self, edges: np.ndarray):
        a, b = edges[:-1], edges[1:]
        k, e, r, m = _gk21(self.g, a, b)
        self.evals += m
        self.a = np.concatenate([self.a, a])
        self.b = np.concatenate([self.b, b])
        self.k = np.concatenate([self.k.astype(k.dtype, copy=False), k]) if self.k.size else k
        self.e = np.concatenate([self.e, e])
        self.r = np.concatenate([self.r, r])

    @property
    def value(self):
        return self.k.sum()

    @property
    def error(self) -> float:
        return float(self.e.sum())

    @property
    def resabs(self) -> float:
        return float(self.r.sum())

    def refine(self, target: Callable[[complex], float], budget: int) -> bool:
        """Bisect worst panels until ``error <= target(value)`` or the budget is spent."""
        while True:
            err = self.error
            if err <= target(self.value):
                return True
            if err <= 100.0 * _EPS * self.resabs:
                return False
            remaining = budget - self.evals
            if remaining < 2 * _NPTS:
                return False
            order = np.argsort(-self.e, kind="stable")
            count = max(1, min(len(order) // 8, remaining // (2 * _NPTS)))
            pick = order[:count]
            width = self.b[pick] - self.a[pick]
            splittable = width > 4.0 * _EPS * np.maximum(1.0, np.abs(self.a[pick]))
            pick = pick[splittable]
            if pick.size == 0:
                return False
            a, b = self.a[pick], self.b[pick]
            mid = 0.5 * (a + b)
            keep = np.ones(self.a.size, dtype=bool)
            keep[pick] = False
            self.a, self.b = self.a[keep], self.b[keep]
            self.k, self.e, self.r = self.k[keep], self.e[keep], self.r[keep]
            new_a = np.concatenate([a, mid])
            new_b = np.concatenate([mid, b])
            k, e, r, m = _gk21(self.g, new_a, new_b)
            self.evals += m
            self.a = np.concatenate([self.a, new_a])
            self.b = np.concatenate([self.b, new_b])
            self.k = np.concatenate([self.k, k])
            self.e = np.concatenate([self.e, e])
            self.r = np.concatenate([self.r, r])


def _tail(g: Callable, start: float, step: float) -> tuple[float, int, float]:
    """Estimate ``|int_start^{+-inf} g du|`` from probes marching away from ``start``.

    Returns the estimate, the evaluation count, and the fitted exponential
    decay rate of ``|g|`` (0 when no decay is visible).
    """
    probes = start + step * np.arange(9) * 0.5
    vals = np.abs(np.asarray(g(probes)))
    if not np.all(np.isfinite(vals)):
        return math.inf, probes.size, 0.0
    # Envelope over the first and last third guards against oscillation zeros.
    near = vals[:3].max()
    far = vals[-3:].max()
    body = 0.5 * abs(step) * float(np.sum(0.5 * (vals[1:] + vals[:-1])))
    if far == 0.0:
        return body, probes.size, math.inf
    if near <= far:
        return math.inf, probes.size, 0.0
    span = abs(probes[-2] - probes[1])
    rate = (math.log(near) - math.log(far)) / span
    if rate < 0.05:
        return math.inf, probes.size, rate
    return body + far / rate, probes.size, rate


def integrate_semi_infinite(
    f: Callable,
    decay_rate: float,
    cfg: Optional[QuadratureConfig] = None,
    upper: float = math.inf,
) -> IntegrationResult:
    """Integrate ``f`` over ``(0, inf)``, or ``(0, upper)`` when ``f`` vanishes beyond ``upper``.

    ``decay_rate`` is a hint such that ``|f(t)| <= M exp(-decay_rate * t)``;
    it only seeds the initial window ``[1e-3, 40] / decay_rate``. The window
    is widened at either end until both tail estimates drop below a tenth of
    the tolerance, so algebraic decay and integrable endpoint singularities
    are handled as well.
    """
    cfg = cfg or QuadratureConfig()
    if not decay_rate > 0.0:
        raise ValueError("decay_rate must be positive")

    def g(u):
        t = np.exp(u)
        if upper == math.inf:
            return f(t) * t
        keep = t <= upper
        if not np.any(keep):
            return np.zeros(t.shape)
        vals = np.asarray(f(t[keep])) * t[keep]
        out = np.zeros(t.shape, dtype=vals.dtype)
        out[keep] = vals
        return out

    u_max = min(_U_MAX, math.log(upper))
    lo = math.log(1e-3 / decay_rate)
    hi = min(math.log(40.0 / decay_rate), u_max)
    lo = min(lo, hi - 1.0)
    panels = _Panels(g)
    panels.add(np.linspace(lo, hi, int(math.ceil(hi - lo)) + 1))
    extra_evals = 0
    converged = False
    best = None
    while True:
        budget = cfg.max_evals - extra_evals
        panels.refine(lambda v: 0.8 * cfg.target(v), budget)
        left, nl, _ = _tail(g, lo, -1.0)
        right, nr, _ = _tail(g, hi, 1.0) if hi < u_max else (0.0, 0, 0.0)
        extra_evals += nl + nr
        value = panels.value
        err = panels.error + left + right
        evals = panels.evals + extra_evals
        if best is None or err <= best.error_estimate:
            best = IntegrationResult(value, err, evals, False, panels.resabs)
        tail_target = 0.1 * cfg.target(value)
        if err <= cfg.target(value) and left <= tail_target and right <= tail_target:
            converged = True
            best = IntegrationResult(value, err, evals, True, panels.resabs)
            break
        if evals >= cfg.max_evals:
            break
        grew = False
        if left > tail_target and lo > _U_MIN:
            new_lo = max(lo - 4.0, _U_MIN)
            panels.add(np.linspace(new_lo, lo, 5))
            lo = new_lo
            grew = True
        if right > tail_target and hi < u_max:
            new_hi = min(hi + 4.0, u_max)
            panels.add(np.linspace(hi, new_hi, 5))
            hi = new_hi
            grew = True
        if not grew:
            # Tails already satisfied (panels stalled) or the window is maximal.
            break
    best.evals = panels.evals + extra_evals
    best.converged = converged
    return best


def integrate_line(
    f: Callable,
    center: float = 0.0,
    scale: float = 1.0,
    cfg: Optional[QuadratureConfig] = None,
    half_width: float = math.inf,
) -> IntegrationResult:
    """Integrate ``f`` over the real line by folding about ``center``.

    ``f`` is taken to vanish farther than ``half_width`` from ``center``.
    """

    def folded(t):
        return f(center + t) + f(center - t)

    return integrate_semi_infinite(folded, 1.0 / scale, cfg, upper=half_width)


CONES_2D = ("paraboloid", "lorentz", "halfplane")


def integrate_cone_2d(
    f: Callable,
    cone: str,
    decay_vector,
    cfg: Optional[QuadratureConfig] = None,
    inner_center: float = 0.0,
) -> IntegrationResult:
    """Iterated integral of ``f(y1, y2, q)`` over a planar region.

    ``q`` is the region's defining form evaluated exactly in the adapted
    coordinates, so integrands never recompute it by cancellation:

    ``paraboloid``  ``{y2 > y1^2}``, ``y2 = s + y1^2``, ``q = s``; outer ``y1``
                    in R, inner ``s > 0``.
    ``lorentz``     ``{y2 > |y1|}``, ``y = r (sinh th, cosh th)``, ``q = r^2``;
                    outer ``th`` in R, inner ``r > 0`` (Jacobian ``r``).
    ``halfplane``   ``{y2 > 0}``, ``y = y2 (sig, 1)``, ``q = y2``; outer
                    ``y2 > 0``, inner ``sig`` in R about ``inner_center``
                    (Jacobian ``y2``).

    ``decay_vector`` ``d`` is a hint with ``|f| <~ exp(-d . y)`` on the region;
    it sets the inner decay rate and the outer centre. The reported error adds
    the inner tolerance propagated through the outer integral of ``|f|``.
    """
    if cone not in CONES_2D:
        raise ValueError(f"unknown region {cone!r}; expected one of {CONES_2D}")
    cfg = cfg or QuadratureConfig()
    d1, d2 = (float(v) for v in decay_vector)
    inner_rel_tol = cfg.rel_tol * 0.1
    spent = 0
    for _ in range(3):
        res = _cone_pass(f, cone, d1, d2, cfg, inner_rel_tol, inner_center)
        spent += res.evals
        res.evals = spent
        if res.converged or not math.isfinite(res.error_estimate):
            return res
        # When the outer integrand cancels, inner accuracy must scale with
        # |value| / int |f|; retry once the pilot has measured that ratio.
        ratio = abs(res.value) / res.abs_integral if res.abs_integral > 0.0 else 1.0
        tighter = max(0.1 * cfg.rel_tol * ratio, 1e-14)
        if tighter >= 0.5 * inner_rel_tol or spent >= cfg.max_evals * 20:
            return res
        inner_rel_tol = tighter
    return res


def _cone_pass(f, cone, d1, d2, cfg, inner_rel_tol, inner_center):
    inner_cfg = QuadratureConfig(
        rel_tol=inner_rel_tol,
        abs_tol=0.0,
        max_evals=max(1000, cfg.max_evals // 50),
    )
    # Per-node inner results: (|value|, error estimate).
    nodes: list[tuple[float, float]] = []
    inner_evals = [0]

    def run_inner(res: IntegrationResult):
        nodes.append((abs(res.value), float(res.error_estimate)))
        inner_evals[0] += res.evals
        return res.value

    if cone == "paraboloid":
        rate = d2 if d2 > 0 else 1.0

        def outer(y1s):
            out = []
            for y1 in np.atleast_1d(y1s):
                res = integrate_semi_infinite(lambda s, y1=y1: f(y1, s + y1 * y1, s), rate, inner_cfg)
                out.append(run_inner(res))
            return np.array(out)

        center = -d1 / (2.0 * d2) if d2 > 0 else 0.0
        result = integrate_line(outer, center, 1.0 / math.sqrt(rate), cfg, half_width=1e100)
    elif cone == "lorentz":
        def outer(ths):
            out = []
            for th in np.atleast_1d(ths):
                sh, ch = math.sinh(th), math.cosh(th)
                rate = d1 * sh + d2 * ch
                rate = rate if rate > 0 else 1.0
                res = integrate_semi_infinite(
                    lambda r, sh=sh, ch=ch: f(r * sh, r * ch, r * r) * r, rate, inner_cfg
                )
                out.append(run_inner(res))
            return np.array(out)

        center = math.atanh(-d1 / d2) if d2 > abs(d1) else 0.0
        # Beyond |th| ~ 300 the inner window in r is so small that r^2
        # underflows; the dropped tail is below exp(-600 (1 + alpha)) for
        # integrands of the form q^alpha exp(-d . y).
        half = max(300.0 - abs(center), 50.0)
        result = integrate_line(outer, center, 1.0, cfg, half_width=half)
    else:
        def outer(y2s):
            out = []
            for y2 in np.atleast_1d(y2s):
                scale = 1.0 / math.sqrt(max(y2, 1e-300)) if y2 < 1.0 else 1.0
                res = integrate_line(lambda sig, y2=y2: f(y2 * sig, y2, y2) * y2, inner_center, scale, inner_cfg)
                out.append(run_inner(res))
            return np.array(out)

        result = integrate_semi_infinite(outer, d2 if d2 > 0 else 1.0, cfg)

    mags = np.array([m for m, _ in nodes])
    errs = np.array([e for _, e in nodes])
    # Propagated inner error ~ int err / int |inner| * int |f|; the node sums
    # stand in for the two integrals (nodes cluster where the mass is).
    total = float(mags.sum()) if mags.size else 0.0
    inner_rel = float(errs.sum()) / total if total > 0.0 else 0.0
    # An inner rule that stalled still reports an honest error, which is
    # already part of inner_rel; only unusable estimates spoil the result.
    inner_ok = bool(np.all(np.isfinite(errs)))
    abs_int = result.abs_integral if math.isfinite(result.abs_integral) else abs(result.value)
    err = result.error_estimate + inner_rel * abs_int
    converged = result.converged and inner_ok and err <= cfg.target(result.value) * 1.5
    return IntegrationResult(result.value, err, result.evals + inner_evals[0], converged, abs_int)


Sampler = Callable[[int, np.random.Generator], tuple]


def integrate_mc(
    f: Callable,
    sampler: Sampler,
    cfg: Optional[QuadratureConfig] = None,
    chunk: int = 1 << 16,
) -> IntegrationResult:
    """Importance-sampled mean of ``f / pdf`` with its standard error.

    ``sampler(count, rng)`` returns ``(points, pdf)``. Samples are drawn in
    chunks, each from its own child of ``SeedSequence(cfg.seed)``, so the
    result depends only on the seed and the sample count.
    """
    cfg = cfg or QuadratureConfig()
    total = cfg.mc_samples
    nchunks = -(-total // chunk)
    children = np.random.SeedSequence(cfg.seed).spawn(nchunks)
    s1 = 0.0
    s2 = 0.0
    for i, child in enumerate(children):
        m = min(chunk, total - i * chunk)
        pts, pdf = sampler(m, np.random.default_rng(child))
        pdf = np.asarray(pdf, dtype=float)
        if pdf.size == 0 or not np.all(np.isfinite(pdf)) or np.any(pdf <= 0.0):
            raise DegenerateSamplerError("sampler returned no samples or a non-positive density")
        w = np.asarray(f(pts)) / pdf
        s1 = s1 + w.sum()
        s2 += float(np.sum(np.abs(w) ** 2))
    mean = s1 / total
    if total > 1:
        var = max(s2 / total - abs(mean) ** 2, 0.0) * total / (total - 1)
        stderr = math.sqrt(var / total)
    else:
        stderr = math.inf
    return IntegrationResult(mean, stderr, total, stderr <= cfg.target(mean))
