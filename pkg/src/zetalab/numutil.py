"""Small number-theoretic and smooth-cutoff utilities.

Contents:

* exact divisor-count table d(1..limit) by sieve;
* arsinh(x) = log(x + sqrt(1 + x^2)), scalar and array;
* a C-infinity bump built from the classical mollifier
      h(u) = exp(-1/u) for u > 0,     s(u) = h(u) / (h(u) + h(1 - u)),
  equal to 1 on [c - G, c + G], 0 outside [c - 2G, c + 2G], with exact
  derivatives up to order 4 via truncated Taylor (jet) arithmetic;
* the sawtooth psi(x) = x - floor(x) - 1/2 together with its truncated
  Fourier series -(1/pi) sum_{n<=N} sin(2 pi n x)/n and the standard
  truncation bound min(1, 1/(N ||x||));
* distance to the nearest integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ValidationError

_SIEVE_LIMIT_MAX = 10**8
_PSI_TERMS_MAX = 10**7


# ----------------------------------------------------------------------
# divisor counts
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DivisorTable:
    """Dense table of d(k) for 1 <= k <= limit.  counts[0] is unused (0)."""

    limit: int
    counts: np.ndarray

    def d(self, k: int) -> int:
        if not 1 <= k <= self.limit:
            raise ValidationError(f"divisor lookup out of range: k={k}, limit={self.limit}")
        return int(self.counts[k])

    def values(self, lo: int, hi: int) -> np.ndarray:
        """d(k) for lo <= k <= hi as an int64 array."""
        if not 1 <= lo <= hi <= self.limit:
            raise ValidationError(f"divisor range out of table: [{lo}, {hi}], limit={self.limit}")
        return self.counts[lo : hi + 1]


def divisor_sieve(limit: int) -> DivisorTable:
    """Exact d(k) for k <= limit, O(limit log limit) increments."""
    if not isinstance(limit, (int, np.integer)) or isinstance(limit, bool):
        raise ValidationError(f"sieve limit must be an integer, got {limit!r}")
    if not 1 <= limit <= _SIEVE_LIMIT_MAX:
        raise ValidationError(f"sieve limit must be in [1, {_SIEVE_LIMIT_MAX}], got {limit}")
    counts = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, limit + 1):
        counts[i::i] += 1
    return DivisorTable(limit=int(limit), counts=counts)


# ----------------------------------------------------------------------
# arsinh
# ----------------------------------------------------------------------

def arsinh(x):
    """log(x + sqrt(1 + x^2)); accepts scalars or arrays."""
    if isinstance(x, np.ndarray):
        return np.arcsinh(x)
    return math.asinh(x)


# ----------------------------------------------------------------------
# jet (truncated Taylor) arithmetic, enough for 4 derivatives of the bump
# ----------------------------------------------------------------------

def _jet_const(value: float, order: int) -> list[float]:
    c = [0.0] * (order + 1)
    c[0] = value
    return c


def _jet_affine(value: float, slope: float, order: int) -> list[float]:
    c = _jet_const(value, order)
    if order >= 1:
        c[1] = slope
    return c


def _jet_add(a: list[float], b: list[float]) -> list[float]:
    return [x + y for x, y in zip(a, b)]


def _jet_recip(a: list[float]) -> list[float]:
    # series of 1/a; requires a[0] != 0
    n = len(a)
    b = [0.0] * n
    b[0] = 1.0 / a[0]
    for m in range(1, n):
        acc = 0.0
        for k in range(1, m + 1):
            acc += a[k] * b[m - k]
        b[m] = -acc / a[0]
    return b


def _jet_exp(a: list[float]) -> list[float]:
    # series of exp(a) via e' = a' e
    n = len(a)
    e = [0.0] * n
    e[0] = math.exp(a[0])
    for m in range(1, n):
        acc = 0.0
        for k in range(1, m + 1):
            acc += k * a[k] * e[m - k]
        e[m] = acc / m
    return e


def _jet_scale(a: list[float], c: float) -> list[float]:
    return [c * x for x in a]


def _jet_mul(a: list[float], b: list[float]) -> list[float]:
    n = len(a)
    out = [0.0] * n
    for m in range(n):
        acc = 0.0
        for k in range(m + 1):
            acc += a[k] * b[m - k]
        out[m] = acc
    return out


def _transition_jet(u: float, order: int) -> list[float]:
    """Taylor coefficients of s at u, 0 < u < 1."""
    uj = _jet_affine(u, 1.0, order)
    h1 = _jet_exp(_jet_scale(_jet_recip(uj), -1.0))
    vj = _jet_affine(1.0 - u, -1.0, order)
    h2 = _jet_exp(_jet_scale(_jet_recip(vj), -1.0))
    return _jet_mul(h1, _jet_recip(_jet_add(h1, h2)))


def _transition_value(u: np.ndarray) -> np.ndarray:
    """s(u) for array u clipped to (0, 1); endpoints map to exact 0/1."""
    u = np.asarray(u, dtype=float)
    lo = u <= 0.0
    hi = u >= 1.0
    mid = ~(lo | hi)
    out = np.zeros_like(u)
    out[hi] = 1.0
    um = u[mid]
    if um.size:
        p = np.exp(-1.0 / um)
        q = np.exp(-1.0 / (1.0 - um))
        out[mid] = p / (p + q)
    return out


def smooth_step(u):
    """The C-infinity unit step s(u) = h(u)/(h(u)+h(1-u)), h(u)=exp(-1/u)[u>0].

    0 for u <= 0, 1 for u >= 1, strictly increasing between, and
    s(u) + s(1-u) = 1 exactly, which is what makes adjoining windows built
    from it tile into an exact partition of unity.
    """
    out = _transition_value(np.asarray(u, dtype=float))
    if out.ndim == 0:
        return float(out)
    return out


# ----------------------------------------------------------------------
# smooth bump
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SmoothBump:
    """C-infinity window: 1 on [center-G, center+G], 0 outside [center-2G, center+2G].

    G is the plateau radius; the two shoulders each have width G, so the
    support radius is exactly 2G.
    """

    center: float
    plateau_radius: float

    def __post_init__(self):
        if not (math.isfinite(self.center) and math.isfinite(self.plateau_radius)):
            raise ValidationError("bump parameters must be finite")
        if self.plateau_radius <= 0.0:
            raise ValidationError(f"plateau radius must be positive, got {self.plateau_radius}")

    @property
    def support(self) -> tuple[float, float]:
        g = self.plateau_radius
        return (self.center - 2.0 * g, self.center + 2.0 * g)

    @property
    def plateau(self) -> tuple[float, float]:
        g = self.plateau_radius
        return (self.center - g, self.center + g)


def bump_eval(bump: SmoothBump, t, order: int = 0):
    """phi(t) or its order-th derivative; order <= 4.

    Order 0 accepts arrays (vectorised, used by the quadrature hot path);
    higher orders accept scalars or arrays (evaluated pointwise through
    jet arithmetic on the two shoulders).
    """
    if not isinstance(order, (int, np.integer)) or order < 0:
        raise ValidationError(f"derivative order must be a non-negative integer, got {order!r}")
    if order > 4:
        raise ValidationError(f"derivative order {order} unsupported (max 4)")

    c, g = bump.center, bump.plateau_radius
    if order == 0:
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        rel = arr - c
        out = np.zeros(arr.shape)
        out[np.abs(rel) <= g] = 1.0
        left = (rel < -g) & (rel > -2.0 * g)
        right = (rel > g) & (rel < 2.0 * g)
        if np.any(left):
            out[left] = _transition_value((rel[left] + 2.0 * g) / g)
        if np.any(right):
            out[right] = _transition_value((2.0 * g - rel[right]) / g)
        if np.isscalar(t) or np.asarray(t).ndim == 0:
            return float(out[0])
        return out

    arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(arr.shape)
    fact = math.factorial(order)
    for i, ti in enumerate(arr):
        rel = ti - c
        if abs(rel) <= g or abs(rel) >= 2.0 * g:
            out[i] = 0.0  # flat on the plateau, zero outside
        elif rel < 0.0:
            coeffs = _transition_jet((rel + 2.0 * g) / g, order)
            out[i] = fact * coeffs[order] / g**order
        else:
            coeffs = _transition_jet((2.0 * g - rel) / g, order)
            out[i] = fact * coeffs[order] * (-1.0 / g) ** order
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


# ----------------------------------------------------------------------
# sawtooth
# ----------------------------------------------------------------------

class SawtoothResult(NamedTuple):
    exact: float
    fourier: float
    error_bound: float
    at_integer: bool


def dist_nearest_int(x: float) -> float:
    """||x||, the distance from x to the nearest integer; in [0, 1/2]."""
    frac = x % 1.0
    return min(frac, 1.0 - frac)


def sawtooth_psi(x: float, n_terms: int) -> SawtoothResult:
    """psi(x) = x - floor(x) - 1/2, its N-term Fourier sum, and the bound.

    At integers the floor convention gives exact = -1/2 and the result is
    flagged (the Fourier series converges to 0 there).
    """
    if not 3 <= n_terms <= _PSI_TERMS_MAX:
        raise ValidationError(f"n_terms must be in [3, {_PSI_TERMS_MAX}], got {n_terms}")
    if not math.isfinite(x):
        raise ValidationError(f"x must be finite, got {x}")
    exact = x - math.floor(x) - 0.5
    n = np.arange(1, n_terms + 1, dtype=float)
    fourier = -math.fsum(np.sin(2.0 * math.pi * n * x) / n) / math.pi
    dist = dist_nearest_int(x)
    at_integer = dist == 0.0
    if at_integer:
        bound = 1.0
    else:
        bound = min(1.0, 1.0 / (n_terms * dist))
    return SawtoothResult(exact=exact, fourier=fourier, error_bound=bound, at_integer=at_integer)
