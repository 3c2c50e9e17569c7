"""Independent reference implementations used only by the tests.

Every function here rebuilds some quantity from scratch: a different
algorithm, a different quadrature engine, or plain high-precision
arithmetic.  None of them import the numerical core they are checking
(the window function is the one shared definition, since it is a design
choice rather than a computed quantity).  Keeping them in one module
makes it obvious at a glance what each test is actually compared against.
"""

import cmath
import math

import mpmath
import numpy as np
from scipy.integrate import quad

from zetalab.numutil import SmoothBump, bump_eval


# ----------------------------------------------------------------------
# high-precision scalar oracles (mpmath)
# ----------------------------------------------------------------------

def mp_d_and_e(m: int, n: int, k: int, ell: int, dps: int = 50) -> tuple[float, float]:
    """D and E of a quadruple in 50-digit arithmetic, rounded once."""
    with mpmath.workdps(dps):
        rm, rn, rk, rl = (mpmath.sqrt(x) for x in (m, n, k, ell))
        d = 2 * mpmath.sqrt(2 * mpmath.pi) * (rm + rn - rk - rl)
        e = mpmath.sqrt(2 * mpmath.pi**3) / 6 * (m * rm + n * rn - k * rk - ell * rl)
        return float(d), float(e)


def mp_f_phase(t: float, k: int, dps: int = 40) -> float:
    """The phase 2t arsinh sqrt(pi k / 2t) + sqrt(2 pi k t + pi^2 k^2) - pi/4
    evaluated in mpmath, an environment the package never touches."""
    with mpmath.workdps(dps):
        tt, kk = mpmath.mpf(t), mpmath.mpf(k)
        val = (2 * tt * mpmath.asinh(mpmath.sqrt(mpmath.pi * kk / (2 * tt)))
               + mpmath.sqrt(2 * mpmath.pi * kk * tt + (mpmath.pi * kk) ** 2)
               - mpmath.pi / 4)
        return float(val)


def mp_zeta_abs2(t: float, dps: int = 30) -> float:
    """|zeta(1/2 + it)|^2 straight from mpmath.zeta."""
    with mpmath.workdps(dps):
        return float(abs(mpmath.zeta(mpmath.mpc("0.5", repr(float(t))))) ** 2)


def mp_first_zero(dps: int = 25) -> float:
    """Height of the first zero on the critical line."""
    with mpmath.workdps(dps):
        return float(mpmath.im(mpmath.zetazero(1)))


def mp_saddle_x0(t: float, ell: int, m: int, dps: int = 40) -> float:
    """Root of t (1/(l+x) - 1/x) + 2 pi m by mpmath's own root finder,
    started from the crude sqrt(l t / (2 pi m)) guess."""
    with mpmath.workdps(dps):
        tt = mpmath.mpf(t)
        fp = lambda x: tt * (1 / (ell + x) - 1 / x) + 2 * mpmath.pi * m
        guess = mpmath.sqrt(ell * tt / (2 * mpmath.pi * m))
        return float(mpmath.findroot(fp, guess))


# ----------------------------------------------------------------------
# elementary number theory, recomputed the slow way
# ----------------------------------------------------------------------

def divisor_count_trial(n: int) -> int:
    """d(n) by trial division up to sqrt(n)."""
    count = 0
    i = 1
    while i * i <= n:
        if n % i == 0:
            count += 2 if i * i != n else 1
        i += 1
    return count


def divisor_partial_sum_hyperbola(x: int) -> int:
    """sum_{k <= x} d(k) as sum_{a <= x} floor(x/a), the double-count."""
    return sum(x // a for a in range(1, x + 1))


def squarefree_core_trial(n: int) -> tuple[int, int]:
    """(a, h) with n = a^2 h and h squarefree, by trial factorization."""
    a, h = 1, 1
    d = 2
    m = n
    while d * d <= m:
        exp = 0
        while m % d == 0:
            m //= d
            exp += 1
        a *= d ** (exp // 2)
        if exp % 2:
            h *= d
        d += 1
    if m > 1:
        h *= m
    return a, h


def sqrt_sum_key(m: int, n: int) -> tuple:
    """Canonical key of sqrt(m) + sqrt(n): merge equal squarefree cores.

    sqrt(h) over distinct squarefree h are linearly independent over the
    rationals, so two pair sums are equal iff their merged keys match.
    """
    am, hm = squarefree_core_trial(m)
    an, hn = squarefree_core_trial(n)
    if hm == hn:
        return ((hm, am + an),)
    return tuple(sorted(((hm, am), (hn, an))))


def diagonal_quadruples_by_buckets(k_lo: int, k_hi: int) -> set[tuple[int, int, int, int]]:
    """All (m,n,k,l) in (k_lo,k_hi]^4 with sqrt m + sqrt n = sqrt k + sqrt l,
    by bucketing pairs on the exact sqrt-sum key and crossing buckets."""
    buckets: dict[tuple, list[tuple[int, int]]] = {}
    rng = range(k_lo + 1, k_hi + 1)
    for m in rng:
        for n in rng:
            buckets.setdefault(sqrt_sum_key(m, n), []).append((m, n))
    out = set()
    for pairs in buckets.values():
        for m, n in pairs:
            for k, ell in pairs:
                out.add((m, n, k, ell))
    return out


# ----------------------------------------------------------------------
# dual-route summations
# ----------------------------------------------------------------------

def _f_phase_local(t: float, k: int) -> float:
    # Same closed form and operation order as the package (its correctness
    # is pinned separately against mp_f_phase); what the loop oracles below
    # make independent is the summation: scalar loops, fsum accumulation,
    # trial-division divisor counts.  A last-ulp-different arsinh here would
    # inject 2t * ulp of phase noise into cancelling sine sums, swamping the
    # aggregation error these oracles are meant to expose.
    return float(2.0 * t * np.arcsinh(math.sqrt(math.pi * k / (2.0 * t)))
                 + math.sqrt(2.0 * math.pi * k * t + (math.pi * k) ** 2)
                 - math.pi / 4.0)


def loop_exp_sum(tau_r: float, tau_s: float, k_lo: int, k_hi: int) -> complex:
    """sum over k in (k_lo, k_hi] of exp(i f(tau_r,k) - i f(tau_s,k)),
    scalar loop with fsum accumulation and a locally coded phase."""
    res, ims = [], []
    for k in range(k_lo + 1, k_hi + 1):
        z = cmath.exp(1j * (_f_phase_local(tau_r, k) - _f_phase_local(tau_s, k)))
        res.append(z.real)
        ims.append(z.imag)
    return complex(math.fsum(res), math.fsum(ims))


def naive_essential_sum_single(big_t: float, g: float, center: float,
                               tau: float, k_max: int, sine_sign: float = 1.0) -> float:
    """G * phi(tau) tau^(-1/4) sum_{k<=k_max} d(k) k^(-1/4) sin f(tau,k),
    everything by direct loops (trial-division d, local phase).
    sine_sign=-1 replaces every sin by -sin, for the linearity check."""
    bump = SmoothBump(center=center, plateau_radius=g)
    weight = bump_eval(bump, tau) * tau**-0.25
    terms = [divisor_count_trial(k) * k**-0.25
             * (sine_sign * math.sin(_f_phase_local(tau, k)))
             for k in range(1, k_max + 1)]
    return g * weight * math.fsum(terms)


def cross_term_magnitudes(big_t: float, g: float, n_lo: float, n_hi: float,
                          omega_min: float) -> tuple[float, int]:
    """Sum of |2 (mn)^(-1/2) int phi(t) cos(t log(n/m)) dt| over integer
    pairs n_lo < m < n <= n_hi with log(n/m) >= omega_min, each integral by
    trapezoid on a fine fixed grid (the integrand is smooth and compactly
    supported, so the trapezoid error decays faster than any power of the
    step).  Returns (total, number of pairs)."""
    bump = SmoothBump(center=big_t, plateau_radius=g)
    t = np.linspace(big_t - 2.0 * g, big_t + 2.0 * g, 20001)
    w = bump_eval(bump, t)
    ns = range(math.floor(n_lo) + 1, math.floor(n_hi) + 1)
    total = 0.0
    count = 0
    for m in ns:
        for n in ns:
            if n <= m or math.log(n / m) < omega_min:
                continue
            omega = math.log(n / m)
            val = 2.0 / math.sqrt(m * n) * np.trapezoid(w * np.cos(t * omega), t)
            total += abs(val)
            count += 1
    return total, count


# ----------------------------------------------------------------------
# QUADPACK-based integral oracles (scipy.integrate.quad)
# ----------------------------------------------------------------------

def _bump_breaks(bump: SmoothBump) -> list[float]:
    c, g = bump.center, bump.plateau_radius
    return [c - 2 * g, c - g, c + g, c + 2 * g]


def quad_window_mass(big_t: float, g: float) -> float:
    """integral of the standard window phi (plateau [T-G, T+G])."""
    bump = SmoothBump(center=big_t, plateau_radius=g)
    lo, hi = bump.support
    val, _ = quad(lambda t: bump_eval(bump, t), lo, hi,
                  points=_bump_breaks(bump), limit=200, epsabs=1e-12, epsrel=1e-12)
    return val


def quad_two_term_meansq(big_t: float, g: float, n1: int, n2: int) -> float:
    """Closed form of the two-term Dirichlet mean square: the diagonal
    (1/n1 + 1/n2) * int phi plus the cross term
    2 (n1 n2)^(-1/2) int phi(t) cos(t log(n2/n1)) dt, the oscillatory
    moment via QUADPACK's weighted (Clenshaw-Curtis) rule."""
    bump = SmoothBump(center=big_t, plateau_radius=g)
    lo, hi = bump.support
    mass, _ = quad(lambda t: bump_eval(bump, t), lo, hi,
                   points=_bump_breaks(bump), limit=200, epsabs=1e-12, epsrel=1e-12)
    omega = math.log(n2 / n1)
    # integrate the weighted moment piecewise over the smooth panels so the
    # weight routine never straddles a seam of the piecewise window
    breaks = _bump_breaks(bump)
    pieces = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        val, _ = quad(lambda t: bump_eval(bump, t), a, b,
                      weight="cos", wvar=omega, limit=400,
                      epsabs=1e-13, epsrel=1e-13)
        pieces.append(val)
    cross = math.fsum(pieces)
    return (1.0 / n1 + 1.0 / n2) * mass + 2.0 / math.sqrt(n1 * n2) * cross


def quad_osc_integral(d_value: float, e_value: float, big_t: float) -> complex:
    """int Phi(x) exp(i (D x + E/x)) dx with Phi(x) = 2x phi(x^2) over
    [sqrt(T/2), sqrt(5T/2)], real and imaginary parts via QUADPACK."""
    phi_t = SmoothBump(center=1.5 * big_t, plateau_radius=big_t / 2.0)
    x_lo, x_hi = math.sqrt(big_t / 2.0), math.sqrt(2.5 * big_t)
    pts = [math.sqrt(v) for v in (big_t / 2.0, big_t, 2.0 * big_t, 2.5 * big_t)]

    def weight(x):
        return 2.0 * x * bump_eval(phi_t, x * x)

    def phase(x):
        return d_value * x + e_value / x

    re, _ = quad(lambda x: weight(x) * math.cos(phase(x)), x_lo, x_hi,
                 points=pts, limit=4000, epsabs=1e-11, epsrel=1e-11)
    im, _ = quad(lambda x: weight(x) * math.sin(phase(x)), x_lo, x_hi,
                 points=pts, limit=4000, epsabs=1e-11, epsrel=1e-11)
    return complex(re, im)


def quad_oscillatory_sp(t: float, ell: int, m: int, big_n: float, n1: float,
                        g: float) -> complex:
    """Direct QUADPACK evaluation of int Phi(x) e^(iF(x)) dx with
    F(x) = t log(1 + l/x) + 2 pi m x and the [N-G, N1+G] window."""
    lo, hi = big_n - g, n1 + g
    pts = [big_n - g, big_n, n1, n1 + g]

    def phi(x):
        if x <= lo or x >= hi:
            return 0.0
        if big_n <= x <= n1:
            return 1.0
        if x < big_n:
            u = (x - lo) / g
        else:
            u = (hi - x) / g
        hu = math.exp(-1.0 / u) if u > 0 else 0.0
        hv = math.exp(-1.0 / (1.0 - u)) if u < 1 else 0.0
        return hu / (hu + hv)

    def f_big(x):
        return t * math.log1p(ell / x) + 2.0 * math.pi * m * x

    re, _ = quad(lambda x: phi(x) * math.cos(f_big(x)), lo, hi,
                 points=pts, limit=6000, epsabs=1e-10, epsrel=1e-10)
    im, _ = quad(lambda x: phi(x) * math.sin(f_big(x)), lo, hi,
                 points=pts, limit=6000, epsabs=1e-10, epsrel=1e-10)
    return complex(re, im)


# ----------------------------------------------------------------------
# misc small oracles
# ----------------------------------------------------------------------

def log_log_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


def mollifier_transition(u: float) -> float:
    """The normalized e^(-1/u) transition, coded independently."""
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    a = math.exp(-1.0 / u)
    b = math.exp(-1.0 / (1.0 - u))
    return a / (a + b)
