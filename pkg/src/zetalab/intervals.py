"""Well-spaced sample point systems on [T, 2T] and sums over them.

A point system is R heights T <= t_1 < ... < t_R <= 2T with gaps of at
least 5G, so the weight windows [t_r - 2G, t_r + 2G] stay pairwise
disjoint and per-point integrals can be summed independently.  Two sums
are implemented over a system:

* smoothed_sum: sum_r integral of phi_r(t) |zeta(1/2+it)|^2 with phi_r the
  C-infinity bump that is 1 on [t_r - G, t_r + G] and 0 outside
  [t_r - 2G, t_r + 2G]; this majorizes
* classical_sum: sum_r integral over the bare plateau [t_r - G, t_r + G].

The large-value side scans a unit-spaced grid of [T, 2T] for heights with
|zeta(1/2+it)| >= V, with an independent re-evaluation pass through the
Euler-Maclaurin oracle guarding every accepted point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import zeta
from .errors import PrecisionError, ValidationError
from .numutil import SmoothBump, bump_eval
from .parallel import ordered_map
from .quadrature import integrate_adaptive, integrate_simpson

# Checked by build_point_set; the type validator re-checks the same window.
POINT_SET_MIN_T = 100.0
G_FLOOR_EXPONENT = 0.01
G_CEIL_EXPONENT = 1.0 / 3.0


@dataclass(frozen=True)
class SamplePointSet:
    """Well-spaced heights in [T, 2T] with their window radius G.

    spacing_factor is the minimum gap in units of G (5 by default, which
    is what makes the supports disjoint).  eps is the declared exponent
    for the lower admissibility window T^eps <= G.
    """

    big_t: float
    g: float
    centers: tuple[float, ...]
    spacing_factor: float = 5.0
    eps: float = G_FLOOR_EXPONENT
    truncated: bool = False
    seed: int | None = None

    @property
    def r_count(self) -> int:
        return len(self.centers)

    def validate(self, check_g_window: bool = True) -> None:
        """Raise ValidationError unless every type invariant holds.

        check_g_window=False skips the T^eps <= G <= T^(1/3) admissibility
        window only; ordering, range and spacing are always enforced.
        """
        if not self.big_t > 0.0 or not self.g > 0.0:
            raise ValidationError(f"need positive T and G, got T={self.big_t}, G={self.g}")
        if self.spacing_factor < 5.0:
            raise ValidationError(f"spacing_factor must be >= 5, got {self.spacing_factor}")
        if check_g_window:
            g_lo = self.big_t**self.eps
            g_hi = self.big_t**G_CEIL_EXPONENT
            if not g_lo <= self.g <= g_hi:
                raise ValidationError(
                    f"G={self.g} outside the admissible window "
                    f"[T^{self.eps:g}, T^(1/3)] = [{g_lo:.6g}, {g_hi:.6g}]"
                )
        c = np.asarray(self.centers, dtype=float)
        if c.size == 0:
            return
        if not (self.big_t <= c[0] and c[-1] <= 2.0 * self.big_t):
            raise ValidationError(
                f"centers must lie in [T, 2T] = [{self.big_t}, {2 * self.big_t}]"
            )
        gaps = np.diff(c)
        if c.size > 1 and not np.all(gaps > 0.0):
            raise ValidationError("centers must be strictly increasing")
        min_gap = self.spacing_factor * self.g
        if c.size > 1 and not np.all(gaps >= min_gap):
            raise ValidationError(
                f"minimum gap {gaps.min():.6g} below spacing_factor*G = {min_gap:.6g}"
            )

    def bumps(self) -> list[SmoothBump]:
        return [SmoothBump(center=t, plateau_radius=self.g) for t in self.centers]

    def support_intervals(self) -> list[tuple[float, float]]:
        """The weight supports [t_r - 2G, t_r + 2G], in order."""
        return [(t - 2.0 * self.g, t + 2.0 * self.g) for t in self.centers]

    def to_json(self) -> str:
        return json.dumps(
            {
                "T": self.big_t,
                "G": self.g,
                "R": self.r_count,
                "centers": list(self.centers),
                "spacing_factor": self.spacing_factor,
                "eps": self.eps,
                "truncated": self.truncated,
                "seed": self.seed,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "SamplePointSet":
        obj = json.loads(text)
        ps = cls(
            big_t=float(obj["T"]),
            g=float(obj["G"]),
            centers=tuple(float(x) for x in obj["centers"]),
            spacing_factor=float(obj.get("spacing_factor", 5.0)),
            eps=float(obj.get("eps", G_FLOOR_EXPONENT)),
            truncated=bool(obj.get("truncated", False)),
            seed=obj.get("seed"),
        )
        if "R" in obj and int(obj["R"]) != ps.r_count:
            raise ValidationError(
                f"serialized R={obj['R']} disagrees with {ps.r_count} centers"
            )
        return ps


def feasible_count(big_t: float, g: float, spacing_factor: float = 5.0) -> int:
    """Largest R that fits in [T, 2T] at gaps >= spacing_factor*G (pigeonhole)."""
    return int(math.floor(big_t / (spacing_factor * g))) + 1


def build_point_set(big_t: float, g: float, r_max: int, seed: int,
                    spacing_factor: float = 5.0) -> SamplePointSet:
    """Seeded-random admissible point system, deterministic per seed.

    Draws r sorted uniforms on [0, slack] with slack = T - (r-1)*5G and
    sets t_k = T + x_k + (k-1)*5G, which meets every invariant by
    construction.  If r_max exceeds the feasible count, returns the
    maximal feasible system with truncated=True.
    """
    if not big_t >= POINT_SET_MIN_T:
        raise ValidationError(f"T must be >= {POINT_SET_MIN_T:g}, got {big_t}")
    g_lo = big_t**G_FLOOR_EXPONENT
    g_hi = big_t**G_CEIL_EXPONENT
    if not g_lo <= g <= g_hi:
        raise ValidationError(
            f"G={g} outside [T^{G_FLOOR_EXPONENT}, T^(1/3)] = [{g_lo:.6g}, {g_hi:.6g}]"
        )
    if not (isinstance(r_max, (int, np.integer)) and r_max >= 1):
        raise ValidationError(f"r_max must be a positive integer, got {r_max!r}")
    if spacing_factor < 5.0:
        raise ValidationError(f"spacing_factor must be >= 5, got {spacing_factor}")

    capacity = feasible_count(big_t, g, spacing_factor)
    r = min(int(r_max), capacity)
    truncated = r < int(r_max)

    rng = np.random.default_rng(seed)
    step = spacing_factor * g
    slack = big_t - (r - 1) * step
    offsets = np.sort(rng.uniform(0.0, slack, size=r))
    centers = big_t + offsets + step * np.arange(r, dtype=float)

    ps = SamplePointSet(
        big_t=float(big_t),
        g=float(g),
        centers=tuple(float(t) for t in centers),
        spacing_factor=float(spacing_factor),
        truncated=truncated,
        seed=int(seed),
    )
    ps.validate()
    return ps


# ----------------------------------------------------------------------
# sums over a point system
# ----------------------------------------------------------------------

def _smoothed_window(bump: SmoothBump, rel_tol: float, scheme: str) -> float:
    f = lambda t: bump_eval(bump, t) * zeta.zeta_abs2(t)
    lo, hi = bump.support
    g = bump.plateau_radius
    if scheme == "gl":
        width = lambda t: min(zeta.oscillation_width(t), g / 4.0)
        return float(integrate_adaptive(f, lo, hi, rel_tol=rel_tol, initial_width=width))
    if scheme == "simpson":
        finest = min(zeta.oscillation_width(lo), g / 4.0)
        n0 = max(64, int(math.ceil(2.0 * (hi - lo) / finest)))
        return float(integrate_simpson(f, lo, hi, rel_tol=rel_tol, n_start=n0))
    raise ValidationError(f"unknown scheme {scheme!r}")


def smoothed_sum(points: SamplePointSet, rel_tol: float = 1e-7,
                 scheme: str = "gl") -> float:
    """sum_r integral phi_r(t) |zeta(1/2+it)|^2 dt over the weight supports.

    scheme 'gl' is the primary adaptive Gauss-Legendre path; 'simpson' is
    the doubled-resolution cross-check and is never the default.
    """
    points.validate(check_g_window=False)
    vals = ordered_map(
        lambda b: _smoothed_window(b, rel_tol, scheme), points.bumps()
    )
    return math.fsum(vals)


def classical_sum(points: SamplePointSet, rel_tol: float = 1e-7) -> float:
    """sum_r integral over the bare plateaus [t_r - G, t_r + G]."""
    points.validate(check_g_window=False)
    g = points.g
    vals = ordered_map(
        lambda t: zeta.integrate_mean_square(t - g, t + g, rel_tol=rel_tol),
        points.centers,
    )
    return math.fsum(vals)


class LocalBound(NamedTuple):
    lhs: float
    rhs: float
    ratio: float


def local_mean_square_bound(t_bar: float, rel_tol: float = 1e-7) -> LocalBound:
    """Pointwise-vs-local-mean comparison at height t_bar.

    lhs = |zeta(1/2 + i t_bar)|^2, rhs = log(t_bar) * (integral of |zeta|^2
    over [t_bar - 1, t_bar + 1] + 1).  The ratio lhs/rhs stays comfortably
    below an absolute constant; the tests scan for its empirical maximum.
    """
    if not 10.0 <= t_bar <= zeta.MEAN_SQUARE_T_MAX:
        raise ValidationError(f"t_bar must lie in [10, 1e6], got {t_bar}")
    lhs = float(zeta.zeta_abs2(t_bar))
    rhs = math.log(t_bar) * (
        zeta.integrate_mean_square(t_bar - 1.0, t_bar + 1.0, rel_tol=rel_tol) + 1.0
    )
    return LocalBound(lhs=lhs, rhs=rhs, ratio=lhs / rhs)


# ----------------------------------------------------------------------
# large values
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LargeValueSet:
    """Unit-spaced heights in [T, 2T] where |zeta(1/2+it)| clears a threshold."""

    big_t: float
    threshold: float
    points: tuple[float, ...]
    values: tuple[float, ...]
    scan_step: float

    @property
    def r_count(self) -> int:
        return len(self.points)

    def validate(self) -> None:
        if len(self.points) != len(self.values):
            raise ValidationError("points and values length mismatch")
        p = np.asarray(self.points, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if p.size == 0:
            return
        if not (self.big_t <= p[0] and p[-1] <= 2.0 * self.big_t):
            raise ValidationError("large-value points must lie in [T, 2T]")
        if p.size > 1 and not np.all(np.diff(p) >= 1.0):
            raise ValidationError("large-value points must be unit-spaced or wider")
        if not np.all(v >= self.threshold):
            raise ValidationError("a stored value dips below the threshold")

    def to_json(self) -> str:
        return json.dumps(
            {
                "T": self.big_t,
                "V": self.threshold,
                "R": self.r_count,
                "points": list(self.points),
                "values": list(self.values),
                "scan_step": self.scan_step,
            },
            sort_keys=True,
        )


def select_large_values(big_t: float, threshold: float,
                        scan_step: float = 0.25) -> LargeValueSet:
    """Greedy unit-spaced selection of large |zeta| heights in [T, 2T].

    Scans the step grid left to right, accepting any height whose modulus
    clears the threshold and sits at least 1 above the last accepted
    height.  Every accepted point is re-evaluated through the denser
    Euler-Maclaurin oracle; a disagreement beyond 1e-6 aborts rather than
    returning a point the two routes cannot agree on.
    """
    if not 0.0 < scan_step <= 0.5:
        raise ValidationError(f"scan_step must lie in (0, 1/2], got {scan_step}")
    if not 10.0 <= big_t <= zeta.MEAN_SQUARE_T_MAX / 2.0:
        raise ValidationError(f"T must lie in [10, 5e5], got {big_t}")
    if threshold < 0.0:
        raise ValidationError(f"threshold must be non-negative, got {threshold}")

    n_steps = int(math.floor(big_t / scan_step))
    accepted_t: list[float] = []
    accepted_v: list[float] = []
    last = -math.inf
    chunk = 65536
    for i0 in range(0, n_steps + 1, chunk):
        idx = np.arange(i0, min(i0 + chunk, n_steps + 1))
        grid = big_t + idx * scan_step
        mods = np.sqrt(zeta.zeta_abs2(grid))
        for t, v in zip(grid, mods):
            if v >= threshold and t - last >= 1.0:
                accepted_t.append(float(t))
                accepted_v.append(float(v))
                last = float(t)

    if accepted_t:
        oracle = np.sqrt(zeta.zeta_abs2_em_oracle(np.asarray(accepted_t)))
        worst = float(np.max(np.abs(oracle - np.asarray(accepted_v))))
        if worst > 1e-6:
            raise PrecisionError(
                f"large-value re-evaluation disagrees by {worst:.3g} > 1e-6"
            )

    lvs = LargeValueSet(
        big_t=float(big_t),
        threshold=float(threshold),
        points=tuple(accepted_t),
        values=tuple(accepted_v),
        scan_step=float(scan_step),
    )
    lvs.validate()
    return lvs


def g_from_threshold(threshold: float, big_t: float, eps: float = 0.05) -> float:
    """Window radius G = V^2 T^(-eps) used when converting a large-value
    threshold into a point-system geometry; eps is a knob, never hard-coded."""
    if threshold <= 0.0 or big_t <= 0.0:
        raise ValidationError("threshold and T must be positive")
    return threshold**2 * big_t ** (-eps)
