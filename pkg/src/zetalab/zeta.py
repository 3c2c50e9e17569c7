"""Critical-line evaluation of |zeta(1/2+it)|^2 and its mean square.

Two independent evaluation routes:

* Riemann-Siegel (primary for t >= 500): Z(t) = 2 sum_{n <= N} n^{-1/2}
  cos(theta(t) - t log n) + remainder, N = floor(sqrt(t/(2 pi))), with the
  remainder expanded to depth 4: (-1)^(N-1) (t/2pi)^(-1/4) [C0(p) + C1(p) x +
  ... + C4(p) x^4], x = (t/2pi)^(-1/2), p the fractional part of sqrt(t/2pi).
  C0 is the classical closed form cos(2 pi (p^2 - p - 1/16))/cos(2 pi p);
  C1..C4 are frozen Chebyshev models (see scripts/fit_rs_correction.py).

* Euler-Maclaurin (fallback below t = 500, and the designated independent
  oracle shape): zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
  + Bernoulli tail.

theta(t) uses the Stirling expansion with three correction terms
(1/(48t) + 7/(5760 t^3) + 31/(80640 t^5)).

The mean-square integral uses adaptive Gauss-Legendre panels whose initial
width tracks the local oscillation scale 2 pi / log(t/(2 pi)); composite
Simpson at doubled resolution serves as the cross-check scheme, never the
primary.  E(T) subtracts the main term T (log(T/(2 pi)) + 2 gamma - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as _cheb
from scipy.special import loggamma

from . import _rs_correction
from .errors import ConvergenceError, PrecisionError, ValidationError
from .quadrature import (build_edges, fixed_gl_panels, integrate_adaptive,
                         integrate_simpson)

TWO_PI = 2.0 * math.pi
EULER_GAMMA = float(np.euler_gamma)

# Riemann-Siegel is used at and above this height; Euler-Maclaurin below.
# The depth-4 remainder keeps |Z_RS - Z| well under 1e-8 from here up.
RS_MIN_T = 500.0
T_MAX = 1.0e8
CHI_T_MAX = 1.0e4
MEAN_SQUARE_T_MAX = 1.0e6

# B_{2k} / (2k)! for the Euler-Maclaurin tail, k = 1..14
_B2K_OVER_FACT = [
    8.333333333333333e-02,   # B2/2!
    -1.3888888888888889e-03,  # B4/4!
    3.3068783068783067e-05,
    -8.267195767195768e-07,
    2.0876756987868098e-08,
    -5.284190138687493e-10,
    1.3382536530684678e-11,
    -3.3896802963225828e-13,
    8.586062056277844e-15,
    -2.1748686985580618e-16,
    5.509002828360229e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
]


# ----------------------------------------------------------------------
# theta and the Riemann-Siegel route
# ----------------------------------------------------------------------

def theta(t):
    """Riemann-Siegel theta by Stirling with three correction terms."""
    t = np.asarray(t, dtype=float)
    out = (
        0.5 * t * (np.log(t / TWO_PI) - 1.0)
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
        + 31.0 / (80640.0 * t**5)
    )
    if out.ndim == 0:
        return float(out)
    return out


def _psi_c0(p: np.ndarray) -> np.ndarray:
    """C0(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).

    The zeros of the denominator at p = 1/4, 3/4 are removable; in double
    precision the raw quotient is accurate to ~2e-16/|cos(2 pi p)|, which
    stays far below the 1e-8 needs of this package for any p representable
    away from the exact singular points.
    """
    return np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)


def _rs_z(t: np.ndarray) -> np.ndarray:
    """Z(t) by Riemann-Siegel, vectorised; assumes t >= RS_MIN_T."""
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / TWO_PI)
    n_terms = np.floor(a).astype(np.int64)
    p = a - n_terms
    th = 0.5 * t * (np.log(t / TWO_PI) - 1.0) - math.pi / 8.0 \
        + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t**3) + 31.0 / (80640.0 * t**5)

    main = np.zeros_like(t)
    for n_val in np.unique(n_terms):
        idx = n_terms == n_val
        n = np.arange(1, n_val + 1, dtype=float)
        args = th[idx, None] - t[idx, None] * np.log(n)[None, :]
        main[idx] = 2.0 * np.sum(np.cos(args) / np.sqrt(n)[None, :], axis=1)

    x = 1.0 / a
    corr = _psi_c0(p)
    corr = corr + _cheb.chebval(2.0 * p - 1.0, _rs_correction.C1_CHEB) * x
    corr = corr + _cheb.chebval(2.0 * p - 1.0, _rs_correction.C2_CHEB) * x**2
    corr = corr + _cheb.chebval(2.0 * p - 1.0, _rs_correction.C3_CHEB) * x**3
    corr = corr + _cheb.chebval(2.0 * p - 1.0, _rs_correction.C4_CHEB) * x**4
    sign = np.where(n_terms % 2 == 1, 1.0, -1.0)  # (-1)^(N-1)
    return main + sign * corr / np.sqrt(a)


# ----------------------------------------------------------------------
# Euler-Maclaurin route
# ----------------------------------------------------------------------

def _em_zeta_chunk(t: np.ndarray, terms_factor: float = 2.5, tail_terms: int = 14) -> np.ndarray:
    """zeta(1/2 + i t) by Euler-Maclaurin for a 1-d chunk of heights."""
    t = np.asarray(t, dtype=float)
    s = 0.5 + 1j * t
    t_max = float(np.max(np.abs(t)))
    n_cut = int(max(32, math.ceil(terms_factor * t_max / TWO_PI) + 24))

    n = np.arange(1, n_cut, dtype=float)
    log_n = np.log(n)
    # sum_{n < N} n^-s, chunked over n to bound memory
    acc = np.zeros(len(t), dtype=complex)
    step = max(1, int(4_000_000 / max(len(t), 1)))
    for i0 in range(0, len(n), step):
        seg = slice(i0, i0 + step)
        phase = np.exp(-1j * np.outer(t, log_n[seg]))
        acc += phase @ (1.0 / np.sqrt(n[seg]))
    big_n = float(n_cut)
    ns = np.exp(-s * math.log(big_n))  # N^-s
    acc += big_n * ns / (s - 1.0)
    acc += 0.5 * ns

    # Bernoulli tail: sum_k B_2k/(2k)! * N^(1-s-2k) * prod_{j=0}^{2k-2}(s+j)
    poch = s.copy()
    n_power = ns / big_n  # N^(-s-1)
    for k in range(1, tail_terms + 1):
        acc += _B2K_OVER_FACT[k - 1] * poch * n_power * big_n**2 / big_n**(2 * k)
        poch = poch * (s + (2 * k - 1)) * (s + 2 * k)
    return acc


def _em_zeta(t: np.ndarray, terms_factor: float = 2.5, tail_terms: int = 14,
             chunk: int = 96) -> np.ndarray:
    """Euler-Maclaurin zeta on an array, chunked by height so N tracks max|t|."""
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    order = np.argsort(flat, kind="stable")
    out = np.empty(flat.shape, dtype=complex)
    for i0 in range(0, len(flat), chunk):
        idx = order[i0 : i0 + chunk]
        out[idx] = _em_zeta_chunk(flat[idx], terms_factor, tail_terms)
    return out.reshape(t.shape)


# ----------------------------------------------------------------------
# public evaluators
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPoint:
    """Evaluation record at a single height t."""

    t: float
    z_value: float
    theta: float
    zeta_abs2: float


def zeta_abs2(t):
    """|zeta(1/2 + i t)|^2 for scalar or array t; hybrid RS / EM evaluator."""
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(arr < 0.0):
        raise ValidationError("t must be non-negative")
    if np.any(arr > T_MAX):
        raise PrecisionError(f"t beyond the double-precision window (max {T_MAX:g})")
    out = np.empty(arr.shape)
    hi = arr >= RS_MIN_T
    if np.any(hi):
        out[hi] = _rs_z(arr[hi]) ** 2
    if np.any(~hi):
        out[~hi] = np.abs(_em_zeta(arr[~hi])) ** 2
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


def z_function(t):
    """Hardy's Z(t) (real, |Z| = |zeta(1/2+it)|), scalar or array."""
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(arr <= 0.0):
        raise ValidationError("t must be positive for Z(t)")
    if np.any(arr > T_MAX):
        raise PrecisionError(f"t beyond the double-precision window (max {T_MAX:g})")
    out = np.empty(arr.shape)
    hi = arr >= RS_MIN_T
    if np.any(hi):
        out[hi] = _rs_z(arr[hi])
    if np.any(~hi):
        lo = arr[~hi]
        out[~hi] = np.real(np.exp(1j * theta(lo)) * _em_zeta(lo))
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


def critical_point(t: float) -> CriticalPoint:
    """Full evaluation record at height t."""
    z = float(z_function(t))
    return CriticalPoint(t=float(t), z_value=z, theta=float(theta(t)), zeta_abs2=z * z)


def zeta_abs2_em_oracle(t, terms_factor: float = 3.5, tail_terms: int = 14):
    """|zeta(1/2+it)|^2 by Euler-Maclaurin only, with a denser term count.

    Exposed so downstream checks can re-evaluate points along the
    independent route regardless of where the hybrid switch sits.
    """
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.abs(_em_zeta(arr, terms_factor=terms_factor, tail_terms=tail_terms)) ** 2
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


def chi_modulus(t: float) -> float:
    """|chi(1/2 + i t)| for the functional-equation factor
    chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s); identically 1 on the
    critical line, which the tests assert to 1e-8.

    Computed in log space so sin of a large imaginary argument cannot
    overflow: log|sin(x+iy)| = |y| - log 2 + (1/2) log1p((sin^2 x - ...)
    e^(-2|y|) corrections), here simply 0.5*log(sin^2 x + sinh^2 y) for
    moderate y and the asymptote beyond.
    """
    if not 0.0 <= t <= CHI_T_MAX:
        raise ValidationError(f"chi modulus supported for 0 <= t <= {CHI_T_MAX:g}, got {t}")
    x = math.pi / 4.0
    y = math.pi * t / 2.0
    if y < 20.0:
        log_sin = 0.5 * math.log(math.sin(x) ** 2 + math.sinh(y) ** 2)
    else:
        log_sin = y - math.log(2.0)
    log_gamma_re = float(np.real(loggamma(0.5 - 1j * t)))
    log_mod = 0.5 * math.log(2.0) - 0.5 * math.log(math.pi) + log_sin + log_gamma_re
    return math.exp(log_mod)


# ----------------------------------------------------------------------
# mean-square integrals and the error term
# ----------------------------------------------------------------------

def oscillation_width(t: float) -> float:
    """Local zero-spacing scale of Z(t): 2 pi / log(t / (2 pi)), clipped below."""
    return TWO_PI / max(math.log(max(t, 8.0) / TWO_PI), 0.7)


def _check_range(a: float, b: float, rel_tol: float, abs_tol: float = 0.0):
    if not 2.0 <= a <= b <= MEAN_SQUARE_T_MAX:
        raise ValidationError(
            f"integration range must satisfy 2 <= a <= b <= {MEAN_SQUARE_T_MAX:g}, got [{a}, {b}]"
        )
    if abs_tol <= 0.0 and rel_tol < 1e-8:
        raise ValidationError(f"rel_tol below the supported floor 1e-8: {rel_tol}")


def integrate_mean_square(a: float, b: float, rel_tol: float = 1e-7,
                          abs_tol: float = 0.0) -> float:
    """integral_a^b |zeta(1/2+it)|^2 dt, adaptive GL7 panels (primary scheme).

    Supported for 2 <= a < b <= 1e6; the [0, 2] head is a fixed constant
    handled separately inside error_term via mean_square_head().  An
    abs_tol > 0 targets the absolute error of the integral instead; that
    path uses mesh-doubled fixed GL7 panels, because a per-panel split
    threshold far below the panel mass makes the adaptive driver chase
    structure it cannot resolve.
    """
    _check_range(a, b, rel_tol, abs_tol)
    if a == b:
        return 0.0
    if abs_tol > 0.0:
        return _gl_mesh_refined(a, b, abs_tol)
    width = lambda t: min(oscillation_width(t), max((b - a) / 4.0, 1e-3))
    return float(
        integrate_adaptive(zeta_abs2, a, b, rel_tol=rel_tol, initial_width=width)
    )


def _gl_mesh_refined(a: float, b: float, abs_tol: float,
                     max_refine: int = 12) -> float:
    """Fixed GL7 panels at oscillation-matched width, halved until two
    successive meshes agree to abs_tol.  GL7 gains roughly 2^14 per
    halving on this integrand, so the loop exits in a few rounds."""
    prev = None
    for level in range(max_refine):
        r = 2.0**level
        width = lambda t: min(oscillation_width(t) / r, max((b - a) / 4.0, 1e-3))
        val = float(fixed_gl_panels(zeta_abs2, build_edges(a, b, width)))
        if prev is not None and abs(val - prev) <= abs_tol:
            return val
        prev = val
    raise ConvergenceError(
        f"GL mesh refinement did not reach abs_tol={abs_tol:g} on [{a}, {b}]",
        partial=prev,
    )


def integrate_mean_square_simpson(a: float, b: float, rel_tol: float = 1e-7,
                                  abs_tol: float = 0.0) -> float:
    """Cross-check scheme: composite Simpson at doubled base resolution."""
    _check_range(a, b, rel_tol, abs_tol)
    if a == b:
        return 0.0
    # base mesh twice as fine as the finest GL panel width over the range
    finest = min(oscillation_width(a), oscillation_width(b))
    n0 = max(64, int(math.ceil(2.0 * (b - a) / finest)))
    return float(integrate_simpson(zeta_abs2, a, b, rel_tol=rel_tol,
                                   abs_tol=abs_tol, n_start=n0))


def mean_square_main_term(big_t: float) -> float:
    """T (log(T/(2 pi)) + 2 gamma - 1)."""
    return big_t * (math.log(big_t / TWO_PI) + 2.0 * EULER_GAMMA - 1.0)


_HEAD_CACHE: dict[str, float] = {}


def mean_square_head() -> float:
    """integral_0^2 |zeta(1/2+it)|^2 dt by Euler-Maclaurin quadrature.

    The integrand is smooth and O(2.2) on [0, 2], so a fixed 1e-9 tolerance
    is cheap; the value is cached after the first call.
    """
    if "head" not in _HEAD_CACHE:
        f = lambda u: np.abs(_em_zeta(u)) ** 2
        _HEAD_CACHE["head"] = float(
            integrate_adaptive(f, 0.0, 2.0, rel_tol=1e-9, initial_width=0.25)
        )
    return _HEAD_CACHE["head"]


@dataclass(frozen=True)
class ErrorTermSample:
    """E(T) = integral_0^T |zeta(1/2+it)|^2 dt - T(log(T/2pi) + 2 gamma - 1)."""

    big_t: float
    integral: float
    main_term: float
    e_value: float
    rel_tol: float
    scheme: str


def error_term(big_t: float, rel_tol: float = 1e-7, scheme: str = "gl",
               e_rel_tol: float | None = None) -> ErrorTermSample:
    """E(T) with the requested quadrature scheme ('gl' primary, 'simpson' check).

    rel_tol drives the integral.  E is a small difference of large
    quantities, so relative accuracy of E itself is lost by the ratio
    |integral| / |E| (a factor of 1e4 or worse).  Passing e_rel_tol runs a
    second pass whose absolute integral target is sized from a bootstrap E
    of the first pass; head and main term are exact, so the absolute error
    of the integral is the absolute error of E.  Each scheme bootstraps
    itself, keeping the two routes independent.
    """
    if not 10.0 <= big_t <= MEAN_SQUARE_T_MAX:
        raise ValidationError(
            f"T must lie in [10, {MEAN_SQUARE_T_MAX:g}], got {big_t}"
        )
    if scheme == "gl":
        integrator = integrate_mean_square
    elif scheme == "simpson":
        integrator = integrate_mean_square_simpson
    else:
        raise ValidationError(f"unknown scheme {scheme!r}")
    main = mean_square_main_term(big_t)
    integral = mean_square_head() + integrator(2.0, big_t, rel_tol=rel_tol)
    if e_rel_tol is not None:
        if not 0.0 < e_rel_tol <= 1.0:
            raise ValidationError(f"e_rel_tol must lie in (0, 1], got {e_rel_tol}")
        e_boot = abs(integral - main)
        abs_target = max(0.25 * e_rel_tol * max(e_boot, 1e-3), 1e-9)
        integral = mean_square_head() + integrator(
            2.0, big_t, rel_tol=0.0, abs_tol=abs_target
        )
    return ErrorTermSample(
        big_t=float(big_t),
        integral=integral,
        main_term=main,
        e_value=integral - main,
        rel_tol=rel_tol,
        scheme=scheme,
    )


def error_term_scan(t_lo: float, t_hi: float, n_grid: int = 200,
                    rel_tol: float = 1e-7) -> tuple[np.ndarray, np.ndarray]:
    """E(T) sampled on a grid by cumulative segment integration.

    Returns (grid, e_values).  Segments are integrated left to right and
    accumulated with fsum, so the scan costs one pass over [0, t_hi].
    """
    if not 10.0 <= t_lo < t_hi <= MEAN_SQUARE_T_MAX:
        raise ValidationError(f"bad scan range [{t_lo}, {t_hi}]")
    if n_grid < 2:
        raise ValidationError("n_grid must be at least 2")
    grid = np.linspace(t_lo, t_hi, n_grid)
    partials = [mean_square_head() + integrate_mean_square(2.0, float(grid[0]), rel_tol=rel_tol)]
    for i in range(1, n_grid):
        partials.append(
            integrate_mean_square(float(grid[i - 1]), float(grid[i]), rel_tol=rel_tol)
        )
    cumulative = np.cumsum(partials)
    e_vals = cumulative - np.array([mean_square_main_term(float(g)) for g in grid])
    return grid, e_vals


def sign_changes(values: np.ndarray) -> int:
    """Number of strict sign alternations in a sampled sequence."""
    v = np.asarray(values)
    signs = np.sign(v[v != 0.0])
    if len(signs) < 2:
        return 0
    return int(np.sum(signs[1:] != signs[:-1]))
