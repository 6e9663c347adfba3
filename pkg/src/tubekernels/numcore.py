"""Scalar helpers: real gamma/beta, principal-branch powers, and point handling.

Points in C^n are passed around as 1-D complex numpy arrays. The split
``z = (z', z_n)`` puts the last coordinate in ``z_n``; ``z'`` is empty when
``n == 1``.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence, Union

import numpy as np

from .errors import BranchCutError, DimensionError, DomainError

Number = Union[int, float, complex]

# Above this, Gamma(x) overflows a double; beta switches to log space.
_GAMMA_OVERFLOW = 171.0


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


def gamma(x: float) -> float:
    """Gamma function for real ``x > 0``."""
    x = _check_positive("x", x)
    return math.gamma(x)


def log_gamma(x: float) -> float:
    x = _check_positive("x", x)
    return math.lgamma(x)


def beta(a: float, b: float) -> float:
    """Euler beta function ``Gamma(a) Gamma(b) / Gamma(a + b)`` for ``a, b > 0``."""
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    if a + b < _GAMMA_OVERFLOW:
        return math.gamma(a) * math.gamma(b) / math.gamma(a + b)
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def unit_ball_volume(k: int) -> float:
    """Lebesgue volume of the unit ball in R^k (1 for k = 0)."""
    return math.pi ** (k / 2.0) / math.gamma(k / 2.0 + 1.0)


def on_branch_cut(w: complex) -> bool:
    return w.imag == 0.0 and w.real <= 0.0


def principal_pow(w: Number, s: Number) -> complex:
    """``w**s`` on the principal branch, ``exp(s (ln|w| + i Arg w))``.

    Raises BranchCutError when ``w`` lies on ``(-inf, 0]``; such points are
    never evaluated by continuity from either side.
    """
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"non-finite base {w!r}")
    if on_branch_cut(w):
        raise BranchCutError(f"base {w!r} lies on the branch cut (-inf, 0]")
    log_w = complex(math.log(abs(w)), math.atan2(w.imag, w.real))
    return cmath.exp(complex(s) * log_w)


def principal_pow_array(w, s: float) -> np.ndarray:
    """Vectorised principal power; raises if any entry sits on the cut."""
    w = np.asarray(w, dtype=complex)
    if np.any((w.imag == 0.0) & (w.real <= 0.0)):
        raise BranchCutError("array contains points on the branch cut (-inf, 0]")
    return np.exp(s * (np.log(np.abs(w)) + 1j * np.arctan2(w.imag, w.real)))


def as_point(z, n: int | None = None) -> np.ndarray:
    """Coerce a scalar or sequence into a complex point of length ``n``."""
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty 1-D point, got shape {arr.shape}")
    if n is not None and arr.size != n:
        raise DimensionError(f"expected a point in C^{n}, got length {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("point has non-finite coordinates")
    return arr


def as_real_vector(y, n: int | None = None) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(y, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    if n is not None and arr.size != n:
        raise DimensionError(f"expected a vector in R^{n}, got length {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("vector has non-finite coordinates")
    return arr


def split(z: np.ndarray) -> tuple[np.ndarray, complex]:
    """Return ``(z', z_n)``."""
    return z[:-1], z[-1]


def bilinear_dot(a: Sequence[complex], b: Sequence[complex]) -> complex:
    """``sum a_k b_k`` without conjugation (the dot product used in kernel formulas)."""
    return complex(np.sum(np.asarray(a, dtype=complex) * np.asarray(b, dtype=complex)))
