"""Exponential sums over dyadic k-ranges, exponent-pair predicted bounds,
derivative-test oracles, and the oscillatory integral with phase Dx + E/x.

The sums in question have phase f(tau_r, k) - f(tau_s, k) for two sample
points tau_r, tau_s, summed over a dyadic block K < k <= K' <= 2K.  The
classical prediction for such a block is F^kappa K^lambda + 1/F with
F = |tau_r - tau_s| (KT)^(-1/2), for any exponent pair (kappa, lambda);
the default pair is (1/2, 1/2).  Everything here is measured, not assumed:
the triangle inequality |S| <= #terms is asserted on every evaluation, the
derivative tests carry their classical constants (c1 = 4, c2 = 8, desk
conventions) and are checked against direct quadrature, and the walkthrough
instantiates the whole sixth-moment-by-Cauchy-Schwarz chain numerically so
each step's predicted scaling can be regressed against what actually
happened.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import intervals, phase
from .errors import PrecisionError, ValidationError
from .numutil import SmoothBump, bump_eval, divisor_sieve
from .quadrature import integrate_adaptive
from .report import ExperimentReport

TWO_PI = 2.0 * math.pi

# classical desk-convention constants for the derivative tests
C1_FIRST_DERIVATIVE = 4.0
C2_SECOND_DERIVATIVE = 8.0

# saddle-regime window for the Dx + E/x integral: C1 E <= D T <= C2 E
REGIME_C1 = 0.5
REGIME_C2 = 8.0

K_CAP = 10**7


@dataclass(frozen=True)
class ExponentPair:
    """A one-dimensional exponent pair (kappa, lambda)."""

    kappa: float
    lam: float

    def __post_init__(self):
        if not 0.0 <= self.kappa <= 0.5:
            raise ValidationError(f"kappa must lie in [0, 1/2], got {self.kappa}")
        if not 0.5 <= self.lam <= 1.0:
            raise ValidationError(f"lambda must lie in [1/2, 1], got {self.lam}")


DEFAULT_PAIR = ExponentPair(0.5, 0.5)
TRIVIAL_PAIR = ExponentPair(0.0, 1.0)


@dataclass(frozen=True)
class ExpSumInstance:
    """One dyadic block K < k <= K' of the two-point exponential sum.

    tau_r, tau_s must lie in (T/3, 8T/3); the block must be dyadic
    (K' <= 2K) and stay under the global cap.
    """

    tau_r: float
    tau_s: float
    big_t: float
    k_lo: float
    k_hi: float

    def __post_init__(self):
        if self.big_t <= 0.0:
            raise ValidationError("T must be positive")
        for name, tau in (("tau_r", self.tau_r), ("tau_s", self.tau_s)):
            if not self.big_t / 3.0 < tau < 8.0 * self.big_t / 3.0:
                raise ValidationError(
                    f"{name}={tau} outside (T/3, 8T/3) for T={self.big_t}"
                )
        if not 0.0 < self.k_lo < self.k_hi <= 2.0 * self.k_lo:
            raise ValidationError(
                f"need dyadic 0 < K < K' <= 2K, got K={self.k_lo}, K'={self.k_hi}"
            )
        if self.k_hi > K_CAP:
            raise ValidationError(f"K' exceeds the global cap {K_CAP}")

    def k_values(self) -> np.ndarray:
        return np.arange(math.floor(self.k_lo) + 1,
                         math.floor(self.k_hi) + 1, dtype=float)

    @property
    def term_count(self) -> int:
        return len(self.k_values())


def _phase_matrix(tau: float, k: np.ndarray) -> np.ndarray:
    return np.asarray(phase.f_phase(tau, k), dtype=float)


def exp_sum_S(inst: ExpSumInstance) -> complex:
    """Direct evaluation of sum_{K<k<=K'} exp(i f(tau_r,k) - i f(tau_s,k)).

    Real and imaginary parts are accumulated with math.fsum (error-free up
    to the final rounding, which dominates the compensated-summation
    contract).  The triangle inequality |S| <= #terms is asserted.
    """
    k = inst.k_values()
    if len(k) == 0:
        return 0.0j
    diff = _phase_matrix(inst.tau_r, k) - _phase_matrix(inst.tau_s, k)
    value = complex(math.fsum(np.cos(diff).tolist()),
                    math.fsum(np.sin(diff).tolist()))
    if abs(value) > len(k) * (1.0 + 1e-12):
        raise PrecisionError("triangle inequality |S| <= #terms violated")
    return value


class PairBound(NamedTuple):
    value: float
    trivial: bool


def exponent_pair_bound(inst: ExpSumInstance,
                        pair: ExponentPair = DEFAULT_PAIR) -> PairBound:
    """Predicted block bound F^kappa K^lambda + 1/F, F = |tau_r-tau_s| (KT)^(-1/2).

    Coinciding points make F = 0; the predicted bound degenerates and the
    exact term count is returned with the trivial flag set.
    """
    spread = abs(inst.tau_r - inst.tau_s)
    if spread == 0.0:
        return PairBound(value=float(inst.term_count), trivial=True)
    f_val = spread / math.sqrt(inst.k_lo * inst.big_t)
    value = f_val**pair.kappa * inst.k_lo**pair.lam + 1.0 / f_val
    return PairBound(value=value, trivial=False)


# ----------------------------------------------------------------------
# derivative tests
# ----------------------------------------------------------------------

class DerivativeTest(NamedTuple):
    bound: float
    direct: float


def _sample_grid(a: float, b: float, n: int) -> np.ndarray:
    return np.linspace(a, b, n)


def _osc_width(g_prime: Callable, a: float, b: float, floor: float):
    cap = (b - a) / 8.0

    def width(x: float) -> float:
        freq = max(abs(float(np.asarray(g_prime(x)))), floor)
        return max(min((TWO_PI / freq) / 10.0, cap), 1e-12 * (b - a))

    return width


def first_derivative_test(g: Callable, g_prime: Callable, weight: Callable,
                          a: float, b: float, rel_tol: float = 1e-8,
                          n_grid: int = 2049) -> DerivativeTest:
    """|int_a^b w(x) e^(i g(x)) dx| against the bound c1 sup|w| / min|g'|.

    Requires g' monotone and of one sign on [a, b] (checked on a grid;
    a sign change or a vanishing minimum is refused).  The direct value is
    oscillation-aware quadrature; direct <= bound is asserted.
    """
    if not a < b:
        raise ValidationError(f"bad interval [{a}, {b}]")
    x = _sample_grid(a, b, n_grid)
    gp = np.asarray(g_prime(x), dtype=float)
    if np.min(np.abs(gp)) == 0.0 or np.min(gp) * np.max(gp) <= 0.0:
        raise ValidationError("g' must be nonvanishing and of one sign")
    dgp = np.diff(gp)
    span = np.max(np.abs(gp))
    if np.any(dgp > 1e-9 * span) and np.any(dgp < -1e-9 * span):
        raise ValidationError("g' must be monotone on the interval")
    m1 = float(np.min(np.abs(gp)))
    w_sup = float(np.max(np.abs(np.asarray(weight(x), dtype=float))))
    bound = C1_FIRST_DERIVATIVE * w_sup / m1

    f = lambda u: np.asarray(weight(u)) * np.exp(1j * np.asarray(g(u)))
    direct = abs(complex(integrate_adaptive(
        f, a, b, rel_tol=rel_tol, abs_tol=1e-12 * (b - a) * max(w_sup, 1.0),
        initial_width=_osc_width(g_prime, a, b, m1),
    )))
    if direct > bound * (1.0 + 1e-9):
        raise PrecisionError(
            f"first derivative test unsound: direct {direct:.6g} > bound {bound:.6g}"
        )
    return DerivativeTest(bound=bound, direct=direct)


def second_derivative_test(g: Callable, g_prime: Callable, g_double_prime: Callable,
                           weight: Callable, a: float, b: float,
                           rel_tol: float = 1e-8,
                           n_grid: int = 2049) -> DerivativeTest:
    """|int w e^(ig)| against c2 sup|w| / sqrt(min|g''|), allowing a saddle."""
    if not a < b:
        raise ValidationError(f"bad interval [{a}, {b}]")
    x = _sample_grid(a, b, n_grid)
    gpp = np.asarray(g_double_prime(x), dtype=float)
    if np.min(np.abs(gpp)) == 0.0 or np.min(gpp) * np.max(gpp) <= 0.0:
        raise ValidationError("g'' must be nonvanishing and of one sign")
    m2 = float(np.min(np.abs(gpp)))
    w_sup = float(np.max(np.abs(np.asarray(weight(x), dtype=float))))
    bound = C2_SECOND_DERIVATIVE * w_sup / math.sqrt(m2)

    floor = math.sqrt(TWO_PI * m2)
    f = lambda u: np.asarray(weight(u)) * np.exp(1j * np.asarray(g(u)))
    direct = abs(complex(integrate_adaptive(
        f, a, b, rel_tol=rel_tol, abs_tol=1e-12 * (b - a) * max(w_sup, 1.0),
        initial_width=_osc_width(g_prime, a, b, floor),
    )))
    if direct > bound * (1.0 + 1e-9):
        raise PrecisionError(
            f"second derivative test unsound: direct {direct:.6g} > bound {bound:.6g}"
        )
    return DerivativeTest(bound=bound, direct=direct)


# ----------------------------------------------------------------------
# the oscillatory integral with phase D x + E / x
# ----------------------------------------------------------------------

class OscIntegral(NamedTuple):
    direct: complex
    bound_411: float
    negligible: bool


def osc_integral_IT(d_value: float, e_value: float, big_t: float,
                    eps: float = 0.05, rel_tol: float = 1e-7) -> OscIntegral:
    """int Phi(x) exp(i D x + i E / x) dx over [sqrt(T/2), sqrt(5T/2)].

    Phi(x) = 2 x phi(x^2) where phi is the standard smooth T-window
    (plateau [T, 2T], support [T/2, 5T/2]).  The D > 0, E > 0 branch is
    primary: the saddle sits at x* = sqrt(E/D) and the predicted size is
    E^(3/4) D^(-5/4), evaluated when C1 E <= D T <= C2 E.  Outside that
    window with D > T^(eps - 1/2), repeated integration by parts makes the
    integral negligible and the flag says so; the direct value is always
    computed.
    """
    if big_t <= 0.0:
        raise ValidationError("T must be positive")
    phi_t = SmoothBump(center=1.5 * big_t, plateau_radius=big_t / 2.0)
    x_lo, x_hi = math.sqrt(big_t / 2.0), math.sqrt(2.5 * big_t)

    def weight(x):
        x = np.asarray(x, dtype=float)
        return 2.0 * x * bump_eval(phi_t, x * x)

    def p(x):
        x = np.asarray(x, dtype=float)
        return d_value * x + e_value / x

    def p_prime(x):
        x = np.asarray(x, dtype=float)
        return d_value - e_value / x**2

    w_sup = 2.0 * x_hi
    if d_value > 0.0 and e_value > 0.0:
        x_star = math.sqrt(e_value / d_value)
        floor = math.sqrt(TWO_PI * 2.0 * e_value / x_star**3)
    else:
        floor = max(abs(d_value) * 1e-3, 1e-12)
    f = lambda x: weight(x) * np.exp(1j * p(x))
    direct = complex(integrate_adaptive(
        f, x_lo, x_hi, rel_tol=rel_tol,
        abs_tol=1e-11 * (x_hi - x_lo) * w_sup,
        initial_width=_osc_width(p_prime, x_lo, x_hi, floor),
    ))

    bound_411 = float("nan")
    negligible = False
    if d_value > 0.0 and e_value > 0.0:
        dt = d_value * big_t
        if REGIME_C1 * e_value <= dt <= REGIME_C2 * e_value:
            bound_411 = e_value**0.75 * d_value**-1.25
        elif d_value > big_t ** (eps - 0.5):
            negligible = True
    return OscIntegral(direct=direct, bound_411=bound_411, negligible=negligible)


# ----------------------------------------------------------------------
# dyadic splitting and the walkthrough
# ----------------------------------------------------------------------

def dyadic_blocks(k_max: int) -> list[tuple[float, float]]:
    """Blocks (K, K'] with K' <= 2K covering 1..k_max; the first is (1/2, 1]."""
    if k_max < 1:
        raise ValidationError("k_max must be >= 1")
    blocks = []
    k = 0.5
    while k < k_max:
        blocks.append((k, min(2.0 * k, float(k_max))))
        k *= 2.0
    return blocks


def twelfth_moment_walkthrough(big_t: float, g: float, eps: float = 0.05,
                               r_max: int | None = None,
                               seed: int = 7) -> ExperimentReport:
    """Numerical instantiation of the Cauchy-Schwarz / exponential-sum chain.

    Builds a deterministic sample point set on [T, 2T] (spacing >= 5G),
    takes tau_r = t_r, and walks the chain: the essential divisor sum, its
    Cauchy-Schwarz majorant, the order-swap identity behind it, the
    diagonal term, the off-diagonal exponential sums measured dyadically
    against their exponent-pair predictions, and the J = T^(-eps) G^3
    partition bookkeeping R <= R0 (1 + T/J).  Every quantity lands in the
    report next to its predicted scaling so a T-grid run can regress the
    exponents.
    """
    if not 100.0 <= big_t <= 1.0e5:
        raise ValidationError(f"walkthrough wants T in [100, 1e5], got {big_t}")
    points = intervals.build_point_set(
        big_t, g, r_max=10**9 if r_max is None else r_max, seed=seed)
    centers = np.asarray(points.centers)
    r_count = len(centers)
    k_count = phase.k_limit(big_t, g, eps)
    k = np.arange(1, k_count + 1, dtype=float)

    # unit-modulus matrix U[r, j] = exp(i f(tau_r, k_j)); every pair sum is
    # then S_rs = (U U*)_rs restricted to a k-block
    f_matrix = np.asarray(phase.f_phase(centers[:, None], k[None, :]))
    u = np.exp(1j * f_matrix)

    blocks = dyadic_blocks(k_count)
    edges = [(math.floor(lo) + 1, math.floor(hi)) for lo, hi in blocks]

    s_full = np.zeros((r_count, r_count), dtype=complex)
    block_rows = []
    spread = np.abs(centers[:, None] - centers[None, :])
    off_diag = ~np.eye(r_count, dtype=bool)
    for (lo, hi), (k_lo, _k_hi) in zip(edges, blocks):
        cols = slice(lo - 1, hi)
        s_block = u[:, cols] @ u[:, cols].conj().T
        s_full += s_block
        n_terms = hi - lo + 1
        abs_s = np.abs(s_block)
        if np.max(abs_s) > n_terms * (1.0 + 1e-12):
            raise PrecisionError("block triangle inequality violated")
        f_vals = spread / math.sqrt(k_lo * big_t)
        with np.errstate(divide="ignore"):
            bounds = np.sqrt(f_vals) * math.sqrt(k_lo) + 1.0 / f_vals
        ratios = abs_s[off_diag] / bounds[off_diag]
        block_rows.append({
            "k_lo": float(k_lo),
            "n_terms": float(n_terms),
            "max_abs_s": float(np.max(abs_s[off_diag])) if r_count > 1 else 0.0,
            "max_ratio": float(np.max(ratios)) if r_count > 1 else 0.0,
            "mean_ratio": float(np.mean(ratios)) if r_count > 1 else 0.0,
        })

    # the essential sum and its Cauchy-Schwarz majorant
    ess = phase.essential_sum(points, tuple(centers.tolist()), k_max=k_count, eps=eps)
    d_k = divisor_sieve(k_count).values(1, k_count).astype(float)
    d_sq_sum = float(np.sum(d_k**2 * k**-0.5))
    v = np.array([
        bump_eval(b, tau) * tau**-0.25
        for b, tau in zip(points.bumps(), centers)
    ])
    inner_direct = float(np.sum(np.abs(v @ u) ** 2))
    inner_swapped = float(np.real(v @ s_full @ v))
    cs_rhs = g * math.sqrt(d_sq_sum) * math.sqrt(inner_direct)
    swap_gap = abs(inner_direct - inner_swapped) / max(inner_direct, 1e-300)

    # diagonal and off-diagonal pieces of T^(-1/2) sum_{r,s} |S_rs|
    diag_value = big_t**-0.5 * r_count * k_count
    diag_predicted = r_count * big_t ** (0.5 + eps) * g**-2.0
    abs_s_full = np.abs(s_full)
    offdiag_value = big_t**-0.5 * float(np.sum(abs_s_full[off_diag]))

    # J-partition bookkeeping
    j_length = big_t**-eps * g**3.0
    n_bins = int(math.ceil(big_t / j_length))
    bins = np.minimum(((centers - big_t) / j_length).astype(int), n_bins - 1)
    r0 = int(np.max(np.bincount(bins, minlength=n_bins)))
    r0_cap = big_t ** (1.0 + eps) * g**-3.0
    r_bound = r0 * (1.0 + big_t / j_length)
    r_cap_paper = big_t ** (2.0 + eps) * g**-6.0

    pair_mask = off_diag & (spread <= j_length)
    offdiag_value_j = big_t**-0.5 * float(np.sum(abs_s_full[pair_mask]))

    report = ExperimentReport(
        name="twelfth_moment_walkthrough",
        config={"T": big_t, "G": g, "eps": eps, "seed": seed,
                "R": r_count, "k_count": k_count,
                "truncated": points.truncated},
        scalars={
            "essential_sum": ess,
            "cauchy_schwarz_rhs": cs_rhs,
            "order_swap_rel_gap": swap_gap,
            "diagonal_value": diag_value,
            "diagonal_predicted": diag_predicted,
            "offdiagonal_value": offdiag_value,
            "offdiagonal_value_within_J": offdiag_value_j,
            "J": j_length,
            "R0": float(r0),
            "R0_cap": r0_cap,
            "R_bound_from_partition": r_bound,
            "R_cap_predicted": r_cap_paper,
        },
        series={
            "block_k_lo": [row["k_lo"] for row in block_rows],
            "block_terms": [row["n_terms"] for row in block_rows],
            "block_max_abs_s": [row["max_abs_s"] for row in block_rows],
            "block_max_ratio": [row["max_ratio"] for row in block_rows],
            "block_mean_ratio": [row["mean_ratio"] for row in block_rows],
        },
        notes=[
            "pair bounds use the default exponent pair (1/2, 1/2)",
            "tau_r = t_r (window centers); spacing >= 5G by construction",
            "R_cap_predicted presumes the points are large values of |zeta|; "
            "this generic maximally packed system reports it for scaling "
            "regressions only",
        ],
    )
    report.add_check("cauchy_schwarz", value=abs(ess) / cs_rhs, budget=1.0,
                     note="the essential sum against its majorant")
    report.add_check("order_swap_identity", value=swap_gap, budget=1e-10,
                     note="sum_k |sum_r|^2 vs sum_{r,s} S_rs, two orders")
    report.add_check("diagonal_ratio", value=diag_value / diag_predicted,
                     budget=1.05, note="measured diagonal vs R T^(1/2+eps) G^-2")
    report.add_check("partition_pigeonhole", value=r_count / r_bound, budget=1.0,
                     note="R against R0 (1 + T/J)")
    return report
