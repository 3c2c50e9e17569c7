"""The oscillation phase f(t,k), its Taylor tail, and divisor-weighted sums.

The phase is

    f(t,k) = 2t arsinh(sqrt(pi k / (2t))) + sqrt(2 pi k t + pi^2 k^2) - pi/4,

with t-derivative exactly 2 arsinh(sqrt(pi k / (2t))).  For k well below t
the phase expands as

    f(t,k) = -pi/4 + 2 sqrt(2 pi k t) + a3 k^(3/2) t^(-1/2)
             + a5 k^(5/2) t^(-3/2) + a7 k^(7/2) t^(-5/2) + ...

a3 = sqrt(2 pi^3)/6 is exact.  a5 and a7 were fitted once by Richardson
extrapolation of the residual (scripts/fit_phase_tail.py) and frozen below;
the fitted values agree with the closed forms -pi^2 sqrt(2 pi)/80 and
pi^3 sqrt(2 pi)/448 to the fit resolution, which is a useful independent
sanity anchor but not the source of the constants.

The divisor-weighted sums attach (-1)^k d(k) k^(-1/2) and the quartic-root
weight (1/4 + t/(2 pi k))^(-1/4) (or its large-t simplification
(t/(2 pi k))^(-1/4)) to sin f(t,k), summed over k up to
k_limit = ceil(T^(1+eps) G^(-2)) and integrated against the window bumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from . import zeta
from .errors import ValidationError
from .intervals import SamplePointSet
from .numutil import bump_eval, divisor_sieve
from .parallel import ordered_map
from .quadrature import integrate_adaptive, integrate_simpson

TAYLOR_A3 = math.sqrt(2.0 * math.pi**3) / 6.0
# Frozen output of scripts/fit_phase_tail.py (Richardson-extrapolated fit
# of f_phase minus its first three expansion terms).
TAYLOR_A5 = -0.309242868616625
TAYLOR_A7 = 0.17348516957426166

K_LIMIT_MAX = 10**7


def _as_positive_k(k) -> np.ndarray:
    arr = np.asarray(k)
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise ValidationError(f"k must be a positive integer, got {k!r}")
    if np.any(arr < 1):
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    return arr.astype(float)


def f_phase(t, k):
    """f(t,k) = 2t arsinh(sqrt(pi k/(2t))) + sqrt(2 pi k t + pi^2 k^2) - pi/4."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0.0):
        raise ValidationError("t must be positive")
    k_arr = _as_positive_k(k)
    t_b, k_b = np.broadcast_arrays(t_arr, k_arr)
    root = np.sqrt(math.pi * k_b / (2.0 * t_b))
    out = (
        2.0 * t_b * np.arcsinh(root)
        + np.sqrt(2.0 * math.pi * k_b * t_b + (math.pi * k_b) ** 2)
        - math.pi / 4.0
    )
    if out.ndim == 0:
        return float(out)
    return out


def f_phase_dt(t, k):
    """d f(t,k) / dt = 2 arsinh(sqrt(pi k/(2t))), asymptotically sqrt(2 pi k/t)."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0.0):
        raise ValidationError("t must be positive")
    k_arr = _as_positive_k(k)
    out = 2.0 * np.arcsinh(np.sqrt(math.pi * k_arr / (2.0 * t_arr)))
    if out.ndim == 0:
        return float(out)
    return out


def f_taylor(t: float, k: int, depth: int = 5) -> float:
    """Partial sum of the expansion of f(t,k), counted in displayed summands.

    depth 2 gives -pi/4 + 2 sqrt(2 pi k t); depth 3 adds the a3 term; depth
    4 the a5 term; depth 5 the a7 term.  Requires k^(5/2) t^(-3/2) < 1,
    the window where the expansion is an asymptotic series with terms of
    descending size.
    """
    if not 2 <= depth <= 5:
        raise ValidationError(f"depth must be in [2, 5], got {depth}")
    t = float(t)
    if t <= 0.0:
        raise ValidationError("t must be positive")
    k = float(_as_positive_k(k))
    if k**2.5 * t**-1.5 >= 1.0:
        raise ValidationError(
            f"outside the expansion window: k^(5/2) t^(-3/2) = {k**2.5 * t**-1.5:.3g} >= 1"
        )
    total = -math.pi / 4.0 + 2.0 * math.sqrt(2.0 * math.pi * k * t)
    if depth >= 3:
        total += TAYLOR_A3 * k**1.5 / math.sqrt(t)
    if depth >= 4:
        total += TAYLOR_A5 * k**2.5 * t**-1.5
    if depth >= 5:
        total += TAYLOR_A7 * k**3.5 * t**-2.5
    return total


class TailFit(NamedTuple):
    a5: float
    a7: float
    a5_spread: float
    a7_spread: float


def fit_tail_coefficients(k_values: Sequence[int] = (1, 2, 3, 4, 5, 6),
                          t_over_k: Sequence[float] = (50.0, 70.0, 100.0, 140.0,
                                                       200.0, 280.0, 400.0)
                          ) -> TailFit:
    """Fit a5, a7 from f_phase alone by extrapolating the residual to k/t -> 0.

    For each k and t = k * (t/k ratio), the residual of f_phase minus the
    depth-3 partial sum, rescaled by t^(3/2) k^(-5/2), equals
    a5 + a7 h + a9 h^2 + ... with h = k/t exactly.  Least squares against
    (1, h, ..., h^5) extrapolates the h -> 0 limit, Richardson style, with
    the higher columns soaking up what lower-order differencing would leave
    as bias.  The t/k ratios sit in the few-hundred range on purpose: small
    enough that the residual stands clear of the roundoff of f itself,
    large enough that the h-series truncates cleanly.  The spread fields
    report the gap between fits on the odd-index and even-index halves of
    the k grid, the fit's own error estimate.
    """
    if len(t_over_k) < 7 or len(k_values) < 2:
        raise ValidationError("need at least seven t/k ratios and two k values")

    def solve(ks):
        rows, rhs = [], []
        for k in ks:
            k = float(k)
            for r in t_over_k:
                t = k * float(r)
                resid = f_phase(t, int(k)) - (
                    -math.pi / 4.0
                    + 2.0 * math.sqrt(2.0 * math.pi * k * t)
                    + TAYLOR_A3 * k**1.5 / math.sqrt(t)
                )
                h = k / t
                rows.append([h**j for j in range(6)])
                rhs.append(resid * t**1.5 / k**2.5)
        coef, *_ = np.linalg.lstsq(np.asarray(rows), np.asarray(rhs), rcond=None)
        return coef[0], coef[1]

    a5_all, a7_all = solve(k_values)
    a5_odd, a7_odd = solve(k_values[0::2])
    a5_even, a7_even = solve(k_values[1::2])
    return TailFit(
        a5=float(a5_all),
        a7=float(a7_all),
        a5_spread=float(abs(a5_odd - a5_even)),
        a7_spread=float(abs(a7_odd - a7_even)),
    )


# ----------------------------------------------------------------------
# divisor-weighted sums
# ----------------------------------------------------------------------

def k_limit(big_t: float, g: float, eps: float = 0.05) -> int:
    """Truncation bound ceil(T^(1+eps) G^(-2)) of the divisor-weighted sum."""
    if big_t <= 0.0 or g <= 0.0:
        raise ValidationError("T and G must be positive")
    return int(math.ceil(big_t ** (1.0 + eps) * g**-2.0))


@dataclass(frozen=True)
class DivisorSumSpec:
    """Geometry and truncation of a divisor-weighted oscillating sum.

    k_max defaults to ceil(T^(1+eps) G^(-2)).  The sign convention is
    (-1)^k and the weight is k^(-1/2) (1/4 + t/(2 pi k))^(-1/4), with the
    simplified variant replacing the quartic-root factor by
    (t/(2 pi k))^(-1/4); both forms agree to O(k/t) relative.
    """

    big_t: float
    g: float
    eps: float = 0.05
    k_max: int | None = None

    def __post_init__(self):
        if self.big_t <= 0.0 or self.g <= 0.0:
            raise ValidationError("T and G must be positive")
        if self.k_max is None:
            object.__setattr__(self, "k_max", k_limit(self.big_t, self.g, self.eps))
        if self.k_max < 0:
            raise ValidationError(f"k_max must be >= 0, got {self.k_max}")
        if self.k_max > K_LIMIT_MAX:
            raise ValidationError(f"k_max {self.k_max} exceeds the cap {K_LIMIT_MAX}")


@lru_cache(maxsize=8)
def _divisor_counts(k_max: int) -> np.ndarray:
    return divisor_sieve(k_max).counts[1:].astype(float)


_K_CHUNK = 4096


def divisor_series(t, k_max: int, simplified: bool = False):
    """sum_{k <= k_max} (-1)^k d(k) k^(-1/2) w(t,k) sin f(t,k) at height(s) t.

    w is the quartic-root weight (full form) or its large-t simplification.
    The k-sum runs in fixed chunks of 4096 so the reduction order never
    depends on worker count.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr <= 0.0):
        raise ValidationError("t must be positive")
    out = np.zeros_like(t_arr)
    for k0 in range(1, k_max + 1, _K_CHUNK):
        k = np.arange(k0, min(k0 + _K_CHUNK, k_max + 1), dtype=float)
        d = _divisor_counts(k_max)[k0 - 1 : k0 - 1 + len(k)]
        sign = np.where(np.asarray(k, dtype=np.int64) % 2 == 0, 1.0, -1.0)
        coeff = sign * d / np.sqrt(k)
        kc = k[:, None]
        tc = t_arr[None, :]
        phase = (
            2.0 * tc * np.arcsinh(np.sqrt(math.pi * kc / (2.0 * tc)))
            + np.sqrt(2.0 * math.pi * kc * tc + (math.pi * kc) ** 2)
            - math.pi / 4.0
        )
        if simplified:
            w = (tc / (2.0 * math.pi * kc)) ** -0.25
        else:
            w = (0.25 + tc / (2.0 * math.pi * kc)) ** -0.25
        out += coeff @ (w * np.sin(phase))
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


def _window_osc_width(g: float, k_max: int):
    """Panel width: a tenth of the fastest k-mode's period, capped by G/4."""

    def width(t: float) -> float:
        freq = 2.0 * math.asinh(math.sqrt(math.pi * k_max / (2.0 * t)))
        return min((2.0 * math.pi / freq) / 10.0, g / 4.0)

    return width


def divisor_expression(spec: DivisorSumSpec, points: SamplePointSet,
                       simplified: bool = False, rel_tol: float = 1e-6,
                       scheme: str = "gl") -> float:
    """sum_r integral of phi_r(t) * divisor_series(t) over the windows."""
    points.validate(check_g_window=False)
    if spec.k_max == 0 or points.r_count == 0:
        return 0.0

    def one_window(bump):
        f = lambda t: bump_eval(bump, t) * divisor_series(t, spec.k_max, simplified)
        lo, hi = bump.support
        if scheme == "gl":
            width = _window_osc_width(points.g, spec.k_max)
            return float(
                integrate_adaptive(f, lo, hi, rel_tol=rel_tol, initial_width=width)
            )
        if scheme == "simpson":
            w0 = _window_osc_width(points.g, spec.k_max)(lo)
            n0 = max(64, int(math.ceil(2.0 * (hi - lo) / w0)))
            return float(integrate_simpson(f, lo, hi, rel_tol=rel_tol, n_start=n0))
        raise ValidationError(f"unknown scheme {scheme!r}")

    vals = ordered_map(one_window, points.bumps())
    return math.fsum(vals)


def smoothed_main_term(points: SamplePointSet, rel_tol: float = 1e-9) -> float:
    """sum_r integral of phi_r(t) (log(t/(2 pi)) + 2 gamma) dt.

    The non-oscillating density of the smoothed mean square; subtracting it
    from intervals.smoothed_sum leaves the oscillating part that the
    divisor-weighted expression models.
    """
    points.validate(check_g_window=False)

    def one_window(bump):
        f = lambda t: bump_eval(bump, t) * (
            np.log(np.asarray(t) / (2.0 * math.pi)) + 2.0 * zeta.EULER_GAMMA
        )
        lo, hi = bump.support
        return float(
            integrate_adaptive(f, lo, hi, rel_tol=rel_tol,
                               initial_width=points.g / 4.0)
        )

    return math.fsum(ordered_map(one_window, points.bumps()))


def essential_sum(points: SamplePointSet, tau: Sequence[float],
                  k_max: int | None = None, eps: float = 0.05) -> float:
    """G * sum_r phi_r(tau_r) tau_r^(-1/4) sum_{k<=k_max} d(k) k^(-1/4) sin f(tau_r,k).

    tau_r are mean-value heights, one per window, each required to lie in
    its own support [t_r - 2G, t_r + 2G].  No (-1)^k here and no absolute
    values anywhere, so the r- and k-sums may be exchanged freely; the
    implementation is r-outer with fixed k-chunks.
    """
    points.validate(check_g_window=False)
    tau = [float(x) for x in tau]
    if len(tau) != points.r_count:
        raise ValidationError(
            f"need one tau per window, got {len(tau)} for R={points.r_count}"
        )
    for t_r, tau_r in zip(points.centers, tau):
        if not t_r - 2.0 * points.g <= tau_r <= t_r + 2.0 * points.g:
            raise ValidationError(
                f"tau={tau_r} outside its window [{t_r - 2 * points.g}, {t_r + 2 * points.g}]"
            )
    if k_max is None:
        k_max = k_limit(points.big_t, points.g, eps)
    if k_max > K_LIMIT_MAX:
        raise ValidationError(f"k_max {k_max} exceeds the cap {K_LIMIT_MAX}")
    if k_max == 0 or points.r_count == 0:
        return 0.0

    d_all = _divisor_counts(k_max)
    terms = []
    for bump, tau_r in zip(points.bumps(), tau):
        weight = bump_eval(bump, tau_r) * tau_r**-0.25
        inner = 0.0
        for k0 in range(1, k_max + 1, _K_CHUNK):
            k = np.arange(k0, min(k0 + _K_CHUNK, k_max + 1), dtype=float)
            d = d_all[k0 - 1 : k0 - 1 + len(k)]
            inner += float(
                np.sum(d * k**-0.25 * np.sin(f_phase(tau_r, k.astype(np.int64))))
            )
        terms.append(weight * inner)
    return points.g * math.fsum(terms)
