"""Extract Riemann-Siegel correction terms C1..C4 and freeze them as Chebyshev models.

Method: for a fixed fractional part p, pick several t with sqrt(t/(2 pi)) = N + p
(N integer).  At working precision dps=40 compute

    R(t) = (Z(t) - main_sum(t)) * (-1)^(N-1) * (t/(2 pi))^(1/4)
         = C0(p) + C1(p) x + C2(p) x^2 + ...       with x = (t/(2 pi))^(-1/2) = 1/(N+p),

and solve a least-squares Vandermonde system in x for C0..C4.  C0 must agree
with the closed form  Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p),
which validates the extraction; C1..C4 are then fit by Chebyshev polynomials
on p in [0, 1] and written to src/zetalab/_rs_correction.py.

Run:  python scripts/fit_rs_correction.py [--quick]
"""

from __future__ import annotations

import argparse
import pathlib
import sys

import mpmath as mp
import numpy as np

NS = [24, 36, 54, 81, 121, 181]
CHEB_DEGREE = 56
OUT_PATH = pathlib.Path(__file__).resolve().parent.parent / "src" / "zetalab" / "_rs_correction.py"


def psi_closed_form(p: float) -> float:
    return np.cos(2 * np.pi * (p * p - p - 1.0 / 16.0)) / np.cos(2 * np.pi * p)


def remainder_coeffs(p: float, ns=NS) -> np.ndarray:
    """Least-squares [C0..C4] at fractional part p."""
    mp.mp.dps = 40
    xs, rs = [], []
    for n in ns:
        a = mp.mpf(n) + mp.mpf(p)
        t = 2 * mp.pi * a * a
        theta = mp.siegeltheta(t)
        main = 2 * mp.fsum(
            mp.cos(theta - t * mp.log(k)) / mp.sqrt(k) for k in range(1, n + 1)
        )
        z = mp.siegelz(t)
        sign = 1 if (n - 1) % 2 == 0 else -1
        r = (z - main) * sign * mp.sqrt(a)
        xs.append(1.0 / float(a))
        rs.append(float(r))
    x = np.asarray(xs)
    v = np.vander(x, 5, increasing=True)
    coef, *_ = np.linalg.lstsq(v, np.asarray(rs), rcond=None)
    return coef


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="few nodes, sanity check only")
    ap.add_argument("--nodes", type=int, default=128)
    args = ap.parse_args(argv)

    n_nodes = 12 if args.quick else args.nodes
    # Chebyshev nodes on [0, 1]
    k = np.arange(n_nodes)
    ps = 0.5 + 0.5 * np.cos(np.pi * (2 * k + 1) / (2 * n_nodes))
    ps.sort()

    coeffs = np.array([remainder_coeffs(float(p)) for p in ps])
    c0_err = np.max(np.abs(coeffs[:, 0] - psi_closed_form(ps)))
    print(f"nodes={n_nodes}  max |C0_extracted - Psi| = {c0_err:.3e}")
    for j in range(1, 5):
        print(f"C{j}: range [{coeffs[:, j].min():+.6f}, {coeffs[:, j].max():+.6f}]")
    if c0_err > 1e-7:
        print("C0 extraction does not match the closed form; aborting", file=sys.stderr)
        return 1
    if args.quick:
        return 0

    from numpy.polynomial import chebyshev as C

    fits = []
    for j in range(1, 5):
        fit = C.Chebyshev.fit(ps, coeffs[:, j], deg=CHEB_DEGREE, domain=[0.0, 1.0])
        resid = np.max(np.abs(fit(ps) - coeffs[:, j]))
        print(f"C{j} chebfit deg {CHEB_DEGREE}: max node residual {resid:.3e}")
        fits.append(fit.coef)

    lines = [
        '"""Chebyshev models (domain [0, 1]) of the Riemann-Siegel correction terms C1..C4.',
        "",
        "Generated by scripts/fit_rs_correction.py; do not edit by hand.",
        '"""',
        "",
        "import numpy as np",
        "",
    ]
    for j, coef in enumerate(fits, start=1):
        vals = ",\n    ".join(repr(float(c)) for c in coef)
        lines.append(f"C{j}_CHEB = np.array([\n    {vals},\n])")
        lines.append("")
    OUT_PATH.write_text("\n".join(lines))
    print(f"wrote {OUT_PATH}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
