"""Development check: both zeta routes against mpmath at high precision.

Reports max |Z_RS(t) - Z(t)|, max |zeta_EM - zeta|, and the induced error in
|zeta|^2, over log-spaced plus random heights.  Run after regenerating
_rs_correction.py.
"""

from __future__ import annotations

import numpy as np
import mpmath as mp

from zetalab import zeta as zz


def main():
    rng = np.random.default_rng(20260815)
    mp.mp.dps = 30

    ts = np.concatenate([
        np.geomspace(500.0, 1e6, 40),
        rng.uniform(500.0, 1e5, 60),
        rng.uniform(500.0, 505.0, 10),
    ])
    worst_z = worst_z2 = 0.0
    for t in ts:
        z_rs = float(zz.z_function(float(t)))
        z_mp = float(mp.siegelz(mp.mpf(float(t))))
        worst_z = max(worst_z, abs(z_rs - z_mp))
        worst_z2 = max(worst_z2, abs(z_rs**2 - z_mp**2))
    print(f"RS route, {len(ts)} heights in [500, 1e6]:")
    print(f"  max |Z_rs - Z|     = {worst_z:.3e}")
    print(f"  max |Z_rs^2 - Z^2| = {worst_z2:.3e}")

    ts_lo = np.concatenate([
        np.geomspace(0.1, 499.0, 30),
        rng.uniform(0.0, 499.0, 40),
        np.geomspace(500.0, 1e5, 20),  # EM used as oracle up here too
    ])
    worst_em = worst_em2 = 0.0
    for t in ts_lo:
        z_em = complex(zz._em_zeta(np.array([float(t)]))[0])
        z_mp = complex(mp.zeta(mp.mpc(0.5, float(t))))
        worst_em = max(worst_em, abs(z_em - z_mp))
        worst_em2 = max(worst_em2, abs(abs(z_em) ** 2 - abs(z_mp) ** 2))
    print(f"EM route, {len(ts_lo)} heights in [0, 1e5]:")
    print(f"  max |zeta_em - zeta|     = {worst_em:.3e}")
    print(f"  max ||zeta_em|^2-|z|^2|  = {worst_em2:.3e}")

    # oracle parameterisation used by the tests
    worst_or = 0.0
    for t in rng.uniform(10.0, 1e5, 25):
        v = zz.zeta_abs2_em_oracle(float(t))
        z_mp = complex(mp.zeta(mp.mpc(0.5, float(t))))
        worst_or = max(worst_or, abs(v - abs(z_mp) ** 2))
    print(f"oracle parameterisation: max ||zeta|^2 err| = {worst_or:.3e}")


if __name__ == "__main__":
    main()
