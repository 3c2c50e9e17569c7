"""Fit the a5, a7 tail coefficients of the phase expansion and check stability.

Runs the Richardson fit on two disjoint (k, t/k) grids, prints both results,
verifies the two a5 values agree to 1e-6 relative, and compares against the
closed forms -pi^2 sqrt(2 pi)/80 and pi^3 sqrt(2 pi)/448 as an independent
sanity anchor.  The values frozen in zetalab.phase come from grid A.

Usage: python3 scripts/fit_phase_tail.py
"""

import math
import sys

sys.path.insert(0, "src")

from zetalab.phase import TAYLOR_A5, TAYLOR_A7, fit_tail_coefficients


def main():
    fit_a = fit_tail_coefficients(k_values=(1, 2, 3, 4, 5, 6))
    fit_b = fit_tail_coefficients(k_values=(7, 8, 9, 10, 11, 12),
                                  t_over_k=(60.0, 84.0, 120.0, 168.0, 240.0,
                                            336.0, 480.0))
    print(f"grid A: a5 = {fit_a.a5:.16g}  (spread {fit_a.a5_spread:.3g})")
    print(f"        a7 = {fit_a.a7:.16g}  (spread {fit_a.a7_spread:.3g})")
    print(f"grid B: a5 = {fit_b.a5:.16g}  (spread {fit_b.a5_spread:.3g})")
    print(f"        a7 = {fit_b.a7:.16g}  (spread {fit_b.a7_spread:.3g})")

    rel_a5 = abs(fit_a.a5 - fit_b.a5) / abs(fit_a.a5)
    rel_a7 = abs(fit_a.a7 - fit_b.a7) / abs(fit_a.a7)
    print(f"two-grid agreement: a5 {rel_a5:.3g}, a7 {rel_a7:.3g}")
    assert rel_a5 < 1e-6, "a5 unstable across grids"
    assert rel_a7 < 1e-5, "a7 unstable across grids"

    closed_a5 = -math.pi**2 * math.sqrt(2.0 * math.pi) / 80.0
    closed_a7 = math.pi**3 * math.sqrt(2.0 * math.pi) / 448.0
    print(f"closed-form anchors: a5 = {closed_a5:.16g}, a7 = {closed_a7:.16g}")
    print(f"fit vs anchor: a5 {abs(fit_a.a5 - closed_a5):.3g}, "
          f"a7 {abs(fit_a.a7 - closed_a7):.3g}")

    drift_a5 = abs(fit_a.a5 - TAYLOR_A5)
    drift_a7 = abs(fit_a.a7 - TAYLOR_A7)
    print(f"frozen-constant drift: a5 {drift_a5:.3g}, a7 {drift_a7:.3g}")
    assert drift_a5 < 1e-9 and drift_a7 < 1e-6, "frozen constants out of date"
    print("ok")


if __name__ == "__main__":
    main()
