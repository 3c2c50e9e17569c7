"""Verify the two facts the pipeline comparison leans on, before freezing them.

1. Exact phase identity at the saddle of F(x) = t log(1+ell/x) + 2 pi m x:
       F(x0) + pi/4  ==  f(t, ell*m) + pi/2 - pi*ell*m   (mod 2 pi)
   equivalently cos(F(x0) + pi/4) = -(-1)^k sin f(t,k), k = ell*m.

2. The conversion constant: a fully covered cell aggregate
   2 * sum_{ell*m=k} Re sp_cell equals kappa^{-1} times the simplified
   divisor term; measure the ratio and compare against -sqrt(2) (i.e.
   kappa = -1/sqrt(2)) and against -2 (kappa = -1/2).
"""

import math
import sys

sys.path.insert(0, "src")

import numpy as np

from zetalab import phase
from zetalab.poisson import OscIntegralSpec, saddle_point

TWO_PI = 2.0 * math.pi


def mod_two_pi(x: float) -> float:
    return x - TWO_PI * math.floor(x / TWO_PI)


def main() -> None:
    rng = np.random.default_rng(7)
    worst_phase = 0.0
    worst_cos = 0.0
    for _ in range(200):
        t = float(rng.uniform(5.0e3, 5.0e5))
        ell = int(rng.integers(1, 9))
        m = int(rng.integers(1, 9))
        k = ell * m
        # place the window around the saddle so the spec validates
        x_star = math.sqrt(t * ell / (TWO_PI * m))
        big_n = 0.8 * x_star
        spec = OscIntegralSpec(t=t, ell=ell, m=m, big_n=big_n,
                               n1=1.6 * big_n, g=0.05 * big_n)
        s = saddle_point(spec)
        lhs = mod_two_pi(s.f_at_x0 + math.pi / 4.0)
        rhs = mod_two_pi(float(phase.f_phase(t, k)) + math.pi / 2.0 - math.pi * k)
        gap = min(abs(lhs - rhs), TWO_PI - abs(lhs - rhs))
        worst_phase = max(worst_phase, gap)
        cos_gap = abs(
            math.cos(s.f_at_x0 + math.pi / 4.0)
            - (-((-1.0) ** k)) * math.sin(float(phase.f_phase(t, k)))
        )
        worst_cos = max(worst_cos, cos_gap)
    print(f"phase identity worst |gap| mod 2pi : {worst_phase:.3e}")
    print(f"cos vs -(-1)^k sin  worst |gap|    : {worst_cos:.3e}")
    assert worst_phase < 1e-6 and worst_cos < 1e-6

    # conversion constant: ratio of the cell aggregate to the divisor term,
    # pointwise in t, for cells fully inside their window plateau.
    print()
    print("  t          k   ell x m      ratio(cell/series)   vs -sqrt(2)  vs -2")
    worst_vs_sqrt2 = 0.0
    worst_vs_two = 0.0
    for (t, k) in [(2.0e5, 1), (2.0e5, 2), (2.0e5, 3), (2.0e5, 4),
                   (5.0e5, 6), (1.0e5, 5), (7.7e4, 2), (3.3e5, 8)]:
        pairs = [(ell, k // ell) for ell in range(1, k + 1) if k % ell == 0]
        agg = 0.0
        for (ell, m) in pairs:
            x_star = math.sqrt(t * ell / (TWO_PI * m))
            spec = OscIntegralSpec(t=t, ell=ell, m=m, big_n=0.7 * x_star,
                                   n1=1.4 * x_star, g=0.05 * x_star)
            s = saddle_point(spec)
            assert s.inside, (t, ell, m)
            agg += 2.0 * (s.amplitude / s.x0) * math.cos(s.phase)
        d_k = float(len(pairs))
        series = (
            ((-1.0) ** k) * d_k * k**-0.5
            * (t / (TWO_PI * k)) ** -0.25
            * math.sin(float(phase.f_phase(t, k)))
        )
        ratio = agg / series
        worst_vs_sqrt2 = max(worst_vs_sqrt2, abs(ratio + math.sqrt(2.0)))
        worst_vs_two = max(worst_vs_two, abs(ratio + 2.0))
        print(f"  {t:8.3g} {k:4d}   {len(pairs)} pairs     {ratio:+.9f}"
              f"      {ratio + math.sqrt(2.0):+.2e}   {ratio + 2.0:+.2e}")
    print(f"\nworst |ratio + sqrt(2)| : {worst_vs_sqrt2:.3e}")
    print(f"worst |ratio + 2|       : {worst_vs_two:.3e}")
    print("kappa = -1/sqrt(2)" if worst_vs_sqrt2 < worst_vs_two else "kappa = -1/2")


if __name__ == "__main__":
    main()
