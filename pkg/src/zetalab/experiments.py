"""Experiment registry: every laboratory operation wrapped as a named,
seeded, report-producing run.

Each runner takes an ExperimentConfig, fills unset knobs with that
experiment's defaults, re-validates preconditions (the modules validate
again; errors surface as ValidationError), and returns an
ExperimentReport whose checks carry the pass/fail story.  The suite
definitions at the bottom group the runners into the smoke and desk
gates; the desk gate is the module-by-module acceptance list, and the
test suite calls exactly these runners so there is a single source of
truth for every criterion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, asdict
from typing import Callable, Optional

import numpy as np

from . import __version__
from .errors import PrecisionError, ValidationError
from .numutil import divisor_sieve
from .report import ExperimentReport
from . import expsum, intervals, phase, poisson, quadruple, zeta


@dataclass(frozen=True)
class ExperimentConfig:
    """Knobs for one run.  None means the experiment's default."""

    experiment: str
    big_t: Optional[float] = None
    g: Optional[float] = None
    k: Optional[int] = None
    v: Optional[float] = None
    m: Optional[int] = None
    eta: Optional[float] = None
    eps: Optional[float] = None
    seed: int = 1
    tol: Optional[float] = None
    out: str = "out"

    def __post_init__(self):
        if self.eps is not None and not 0.0 < self.eps <= 0.2:
            raise ValidationError("eps must lie in (0, 0.2]")
        if self.experiment not in REGISTRY:
            raise ValidationError(
                f"unknown experiment {self.experiment!r}; "
                f"known: {', '.join(sorted(REGISTRY))}"
            )

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(payload: dict) -> "ExperimentConfig":
        return ExperimentConfig(**payload)


def _echo(cfg: ExperimentConfig, **effective) -> dict:
    used = {k: v for k, v in cfg.to_dict().items() if v is not None}
    used.update(effective)
    used["version"] = __version__
    return used


# ----------------------------------------------------------------------
# zeta
# ----------------------------------------------------------------------

def run_zeta_routes(cfg: ExperimentConfig) -> ExperimentReport:
    """Two independent |zeta(1/2+it)|^2 routes on random t, plus the unit
    modulus of the functional-equation factor on a log grid."""
    t_hi = cfg.big_t or 1e5
    n = cfg.k or 1000
    tol = cfg.tol or 1e-6
    rng = np.random.default_rng(cfg.seed)
    t = rng.uniform(10.0, t_hi, size=n)
    ours = zeta.zeta_abs2(t)
    oracle = zeta.zeta_abs2_em_oracle(t)
    gaps = np.abs(ours - oracle)
    chi_hi = min(t_hi, zeta.CHI_T_MAX)
    t_grid = np.minimum(
        np.exp(np.linspace(math.log(10.0), math.log(chi_hi), 60)), chi_hi)
    chi_err = np.array([abs(zeta.chi_modulus(float(x)) - 1.0) for x in t_grid])
    report = ExperimentReport(
        name="zeta-routes",
        config=_echo(cfg, t_hi=t_hi, n=n, tol=tol),
        scalars={
            "max_abs_gap": float(gaps.max()),
            "median_abs_gap": float(np.median(gaps)),
            "max_chi_modulus_error": float(chi_err.max()),
        },
        series={"t": t.tolist(), "route_gap": gaps.tolist()},
    )
    report.add_check("route_agreement", value=float(gaps.max()), budget=tol,
                     note="independent evaluation routes, absolute gap")
    report.add_check("chi_unit_modulus", value=float(chi_err.max()), budget=1e-8)
    return report


def run_error_term(cfg: ExperimentConfig) -> ExperimentReport:
    """The mean-square error term at fixed T by two quadrature schemes,
    plus a sign-change scan."""
    tol = cfg.tol or 1e-6
    t_values = [50.0, 100.0, 1000.0, 10000.0]
    rows = []
    worst = 0.0
    for big_t in t_values:
        a = zeta.error_term(big_t, scheme="gl", e_rel_tol=tol)
        b = zeta.error_term(big_t, scheme="simpson", e_rel_tol=tol)
        rel = abs(a.e_value - b.e_value) / max(abs(a.e_value), 1e-12)
        worst = max(worst, rel)
        rows.append((big_t, a.e_value, b.e_value, rel))
    scan_lo, scan_hi = 10.0, 2000.0
    scan_grid, scan_e = zeta.error_term_scan(scan_lo, scan_hi, n_grid=200)
    changes = zeta.sign_changes(scan_e)
    scalars = {"worst_scheme_gap": worst, "sign_changes": float(changes)}
    for big_t, e_gl, _, _ in rows:
        scalars[f"E_at_{int(big_t)}"] = e_gl
    report = ExperimentReport(
        name="error-term",
        config=_echo(cfg, t_values=t_values, tol=tol,
                     scan=[scan_lo, scan_hi]),
        scalars=scalars,
        series={
            "T": [r[0] for r in rows],
            "E_gl": [r[1] for r in rows],
            "E_simpson": [r[2] for r in rows],
            "scheme_rel_gap": [r[3] for r in rows],
        },
    )
    report.series["scan_T"] = scan_grid.tolist()
    report.series["scan_E"] = scan_e.tolist()
    report.add_check("scheme_agreement", value=worst, budget=tol)
    report.add_check("sign_change_present", value=float(changes >= 1),
                     budget=2.0, passed=changes >= 1,
                     note=f"{changes} sign changes on [{scan_lo:g}, {scan_hi:g}]")
    return report


# ----------------------------------------------------------------------
# intervals
# ----------------------------------------------------------------------

def run_majorization(cfg: ExperimentConfig) -> ExperimentReport:
    """Smoothed window sums majorize sharp-cutoff sums on seeded point
    sets, with the disjoint-support spacing verified exactly."""
    big_t = cfg.big_t or 1e4
    g = cfg.g or 20.0
    n_sets = cfg.k or 100
    rng = np.random.default_rng(cfg.seed)
    seeds = rng.integers(0, 2**31 - 1, size=n_sets)
    margins = []
    n_points = []
    for s in seeds:
        pts = intervals.build_point_set(big_t, g, r_max=12, seed=int(s))
        smoothed = intervals.smoothed_sum(pts)
        classical = intervals.classical_sum(pts)
        margins.append(smoothed - classical)
        n_points.append(pts.r_count)
    margins_arr = np.array(margins)
    report = ExperimentReport(
        name="majorization",
        config=_echo(cfg, big_t=big_t, g=g, n_sets=n_sets),
        scalars={
            "min_margin": float(margins_arr.min()),
            "median_margin": float(np.median(margins_arr)),
            "n_sets": float(n_sets),
        },
        series={"seed": [int(s) for s in seeds],
                "margin": margins_arr.tolist(),
                "n_points": [float(x) for x in n_points]},
        notes=["margin = smoothed - classical; the smooth window dominates "
               "the sharp indicator pointwise, so every margin must be >= 0",
               "support disjointness under the 5G spacing is enforced "
               "exactly inside build_point_set"],
    )
    report.add_check("majorization", value=float(-margins_arr.min()), budget=0.0,
                     passed=bool(margins_arr.min() >= 0.0),
                     note="no point set may have classical > smoothed")
    return report


def run_large_values(cfg: ExperimentConfig) -> ExperimentReport:
    """Greedy selection of unit-spaced large values of |zeta| on [T, 2T]."""
    big_t = cfg.big_t or 2e4
    threshold = cfg.v or 4.0
    sel = intervals.select_large_values(big_t, threshold)
    vals = np.asarray(sel.values)
    min_gap = (float(np.diff(np.asarray(sel.points)).min())
               if sel.r_count > 1 else float("inf"))
    report = ExperimentReport(
        name="large-values",
        config=_echo(cfg, big_t=big_t, threshold=threshold),
        scalars={
            "count": float(sel.r_count),
            "min_value": float(vals.min()) if len(vals) else float("nan"),
            "min_gap": min_gap,
            "g_window": intervals.g_from_threshold(threshold, big_t,
                                                   eps=cfg.eps or 0.05),
        },
        series={"t": list(map(float, sel.points)), "value": vals.tolist()},
    )
    report.add_check("threshold_respected", value=0.0, budget=1.0,
                     passed=bool(len(vals) == 0 or vals.min() >= threshold),
                     note=f"{sel.r_count} points at |zeta| >= {threshold:g}")
    report.add_check("spacing_respected", value=0.0, budget=1.0,
                     passed=bool(min_gap >= 1.0 - 1e-12),
                     note=f"min gap {min_gap:.3f} vs unit spacing")
    return report


# ----------------------------------------------------------------------
# phase
# ----------------------------------------------------------------------

def run_phase_taylor(cfg: ExperimentConfig) -> ExperimentReport:
    """Refit the odd-power tail of the phase expansion and compare with
    the frozen coefficients; the leading coefficient is exact."""
    fit = phase.fit_tail_coefficients()
    a3_exact = math.sqrt(2.0 * math.pi**3) / 6.0
    report = ExperimentReport(
        name="phase-taylor",
        config=_echo(cfg),
        scalars={
            "a3_exact": a3_exact,
            "a5_fit": fit.a5,
            "a7_fit": fit.a7,
            "a5_frozen": phase.TAYLOR_A5,
            "a7_frozen": phase.TAYLOR_A7,
            "a5_spread": fit.a5_spread,
            "a7_spread": fit.a7_spread,
        },
    )
    report.add_check("a5_refit_stable",
                     value=abs(fit.a5 - phase.TAYLOR_A5) / abs(phase.TAYLOR_A5),
                     budget=1e-6)
    report.add_check("a7_refit_stable",
                     value=abs(fit.a7 - phase.TAYLOR_A7) / abs(phase.TAYLOR_A7),
                     budget=1e-4)
    return report


# ----------------------------------------------------------------------
# poisson
# ----------------------------------------------------------------------

BUILTIN_TEST_FUNCTIONS = (
    ("bump_wide", poisson.TestFunction("bump", center=6.0, width=1.5), 24),
    ("bump_mid", poisson.TestFunction("bump", center=5.0, width=1.0), 48),
    ("gaussian_wide", poisson.TestFunction("gaussian", center=7.0, width=1.2), 24),
    ("gaussian_mid", poisson.TestFunction("gaussian", center=6.3, width=0.8), 48),
)


def run_poisson_check(cfg: ExperimentConfig) -> ExperimentReport:
    """Lattice sum vs cosine-moment expansion on the built-in windows."""
    tol = cfg.tol or 1e-8
    names, diffs, estimates = [], [], []
    for name, f, n_max in BUILTIN_TEST_FUNCTIONS:
        chk = poisson.poisson_check(f, n_max=n_max, oversample=8)
        names.append(name)
        diffs.append(abs(chk.lhs - chk.rhs))
        estimates.append(chk.estimate)
    report = ExperimentReport(
        name="poisson-check",
        config=_echo(cfg, tol=tol),
        scalars={"worst_diff": max(diffs)},
        series={"function": names, "abs_diff": diffs, "estimate": estimates},
    )
    report.add_check("poisson_identity", value=max(diffs), budget=tol)
    return report


def run_sp_separated(cfg: ExperimentConfig) -> ExperimentReport:
    """Stationary phase vs direct quadrature on well-separated saddles."""
    tol = cfg.tol or 0.05
    instances = [
        (20000.0, 1, 3), (20000.0, 2, 5), (50000.0, 1, 7),
        (50000.0, 3, 4), (100000.0, 2, 9), (100000.0, 1, 12),
    ]
    rows = []
    worst_residual = 0.0
    for big_t, ell, m in instances:
        x0 = poisson._saddle_x0(big_t, ell, m)
        big_n = 0.62 * x0
        spec = poisson.OscIntegralSpec(t=big_t, ell=ell, m=m, big_n=big_n,
                                       n1=2.0 * big_n, g=big_n / 8.0)
        sad = poisson.saddle_point(spec)
        scale = max(abs(spec.f_prime(spec.big_n)), abs(spec.f_prime(spec.n1)))
        worst_residual = max(worst_residual,
                             abs(float(spec.f_prime(sad.x0))) / scale)
        res = poisson.stationary_phase_eval(spec)
        rows.append((big_t, ell, m, float(x0), res.rel_gap))
    worst = max(r[4] for r in rows)
    report = ExperimentReport(
        name="sp-separated",
        config=_echo(cfg, tol=tol, n_instances=len(instances)),
        scalars={"worst_rel_gap": worst, "worst_saddle_residual": worst_residual},
        series={
            "T": [r[0] for r in rows], "ell": [float(r[1]) for r in rows],
            "m": [float(r[2]) for r in rows], "x0": [r[3] for r in rows],
            "rel_gap": [r[4] for r in rows],
        },
    )
    report.add_check("sp_vs_direct", value=worst, budget=tol,
                     note="saddle well inside the plateau in every instance")
    report.add_check("saddle_residual", value=worst_residual, budget=1e-9,
                     note="|F'(x0)| relative to the edge derivative scale")
    return report


def run_pipeline(cfg: ExperimentConfig) -> ExperimentReport:
    big_t = cfg.big_t or 1e5
    g = cfg.g or big_t ** (1.0 / 3.0)
    return poisson.pipeline_compare(big_t, g, eps=cfg.eps or 0.05,
                                    k_max=cfg.k)


def run_smoothing_gap(cfg: ExperimentConfig) -> ExperimentReport:
    """Sharp-cut vs smoothed divisor-window sums across window sizes."""
    big_t = cfg.big_t or 1e4
    rows = []
    for big_n, g in [(100.0, 10.0), (300.0, 20.0), (1000.0, 50.0)]:
        sg = poisson.smoothing_gap(big_t, 1, big_n, 2.0 * big_n, g)
        rows.append((big_n, g, sg.exact, sg.smoothed, sg.gap, sg.scale))
    report = ExperimentReport(
        name="smoothing-gap",
        config=_echo(cfg, big_t=big_t),
        scalars={"worst_gap_over_scale": max(r[4] / r[5] for r in rows)},
        series={
            "N": [r[0] for r in rows], "G": [r[1] for r in rows],
            "exact": [r[2] for r in rows], "smoothed": [r[3] for r in rows],
            "gap": [r[4] for r in rows], "scale": [r[5] for r in rows],
        },
    )
    report.add_check("gap_within_scale",
                     value=max(r[4] / r[5] for r in rows), budget=10.0,
                     note="smoothing moves the sum by O(G/N), not more")
    return report


def run_dirichlet_meansq(cfg: ExperimentConfig) -> ExperimentReport:
    """Windowed mean square of a Dirichlet polynomial vs its diagonal."""
    big_t = cfg.big_t or 1e4
    g = cfg.g or 15.0
    n_lo = 20.0
    n_hi = float(cfg.k or 40)
    val = poisson.dirichlet_poly_meansq(big_t, g, n_lo, n_hi)
    terms = poisson._poly_terms(n_lo, n_hi)
    diag = float(np.sum(1.0 / terms)) * 3.0 * g
    report = ExperimentReport(
        name="dirichlet-meansq",
        config=_echo(cfg, big_t=big_t, g=g, n_lo=n_lo, n_hi=n_hi),
        scalars={"windowed_meansq": val, "diagonal": diag,
                 "ratio": val / diag},
    )
    report.add_check("diagonal_dominance", value=abs(val / diag - 1.0),
                     budget=0.5,
                     note="off-diagonal is oscillatory and partially cancels")
    return report


# ----------------------------------------------------------------------
# expsum
# ----------------------------------------------------------------------

def _exp_sum_reference(inst: expsum.ExpSumInstance) -> complex:
    """Independent route: scalar cmath loop with Kahan compensation."""
    s_re = s_im = c_re = c_im = 0.0
    for k in inst.k_values():
        p = phase.f_phase(inst.tau_r, int(k)) - phase.f_phase(inst.tau_s, int(k))
        z = cmath.exp(1j * p)
        y = z.real - c_re
        t = s_re + y
        c_re = (t - s_re) - y
        s_re = t
        y = z.imag - c_im
        t = s_im + y
        c_im = (t - s_im) - y
        s_im = t
    return complex(s_re, s_im)


def _random_instances(big_t: float, n: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        k_lo = float(rng.integers(8, 2000))
        k_hi = k_lo + float(rng.integers(4, int(k_lo))) if k_lo > 5 else 2 * k_lo
        k_hi = min(k_hi, 2 * k_lo)
        tau_r = rng.uniform(big_t / 3 + 1, 8 * big_t / 3 - 1)
        tau_s = rng.uniform(big_t / 3 + 1, 8 * big_t / 3 - 1)
        if abs(tau_r - tau_s) < 1e-6:
            continue
        out.append(expsum.ExpSumInstance(tau_r=float(tau_r), tau_s=float(tau_s),
                                         big_t=big_t, k_lo=k_lo, k_hi=k_hi))
    return out


def run_exp_sum_dual(cfg: ExperimentConfig) -> ExperimentReport:
    """Matrix-free sum vs compensated scalar loop on random instances,
    plus the stability of the empirical exponent-pair constant across two
    disjoint grids."""
    big_t = cfg.big_t or 1e5
    n = cfg.k or 500
    tol = cfg.tol or 1e-10
    worst_rel = 0.0
    worst_triangle = 0.0
    ratio_grids = []
    for grid_idx in range(2):
        instances = _random_instances(big_t, n, cfg.seed + 7 * grid_idx)
        ratios = []
        for inst in instances:
            s = expsum.exp_sum_S(inst)
            ref = _exp_sum_reference(inst)
            denom = max(abs(ref), 1.0)
            worst_rel = max(worst_rel, abs(s - ref) / denom)
            worst_triangle = max(worst_triangle, abs(s) / inst.term_count)
            b = expsum.exponent_pair_bound(inst)
            ratios.append(abs(s) / b.value)
        ratio_grids.append(max(ratios))
    stability = abs(ratio_grids[0] - ratio_grids[1]) / max(ratio_grids)
    report = ExperimentReport(
        name="exp-sum-dual",
        config=_echo(cfg, big_t=big_t, n=n, tol=tol),
        scalars={
            "worst_dual_rel_gap": worst_rel,
            "worst_triangle_ratio": worst_triangle,
            "max_ratio_grid_a": ratio_grids[0],
            "max_ratio_grid_b": ratio_grids[1],
            "ratio_stability": stability,
        },
    )
    report.add_check("dual_route", value=worst_rel, budget=tol)
    report.add_check("triangle", value=worst_triangle, budget=1.0,
                     note="|S| never exceeds the term count")
    report.add_check("ratio_stability", value=stability, budget=0.2,
                     note="empirical exponent-pair constant across grids")
    return report


def run_derivative_tests(cfg: ExperimentConfig) -> ExperimentReport:
    """Random admissible instances of both derivative tests; the ops
    raise on any direct > bound, so a completed run means zero
    violations."""
    n = cfg.k or 1000
    rng = np.random.default_rng(cfg.seed)
    margins1, margins2 = [], []
    for _ in range(n):
        a = float(rng.uniform(0.5, 4.0))
        b = a + float(rng.uniform(0.5, 3.0))
        c1 = float(rng.uniform(0.3, 6.0))
        c2 = float(rng.uniform(0.05, 2.0))
        s = 1.0 if rng.random() < 0.5 else -1.0
        w_amp = float(rng.uniform(0.5, 2.0))
        g = lambda x, c1=c1, c2=c2, s=s: s * (c1 * x + 0.5 * c2 * x * x)
        gp = lambda x, c1=c1, c2=c2, s=s: s * (c1 + c2 * np.asarray(x, dtype=float))
        w = lambda x, w_amp=w_amp: w_amp / (1.0 + np.asarray(x, dtype=float) ** 2)
        r1 = expsum.first_derivative_test(g, gp, w, a, b)
        margins1.append(abs(r1.direct) / r1.bound)
        c3 = float(rng.uniform(0.05, 1.5))
        g2 = lambda x, c1=c1, c2=c2, c3=c3, s=s: s * (
            c1 * np.asarray(x, dtype=float)
            + 0.5 * c2 * np.asarray(x, dtype=float) ** 2
            + c3 * np.asarray(x, dtype=float) ** 3 / 6.0)
        g2p = lambda x, c1=c1, c2=c2, c3=c3, s=s: s * (
            c1 + c2 * np.asarray(x, dtype=float)
            + 0.5 * c3 * np.asarray(x, dtype=float) ** 2)
        g2pp = lambda x, c2=c2, c3=c3, s=s: s * (
            c2 + c3 * np.asarray(x, dtype=float))
        r2 = expsum.second_derivative_test(g2, g2p, g2pp, w, a, b)
        margins2.append(abs(r2.direct) / r2.bound)
    report = ExperimentReport(
        name="derivative-tests",
        config=_echo(cfg, n=n),
        scalars={
            "n_instances": float(n),
            "max_first_ratio": max(margins1),
            "max_second_ratio": max(margins2),
        },
        notes=["ratio = |direct| / bound; the ops raise if it exceeds 1"],
    )
    report.add_check("first_derivative", value=max(margins1), budget=1.0)
    report.add_check("second_derivative", value=max(margins2), budget=1.0)
    return report


def run_walkthrough(cfg: ExperimentConfig) -> ExperimentReport:
    big_t = cfg.big_t or 1e4
    g = cfg.g or 20.0
    return expsum.twelfth_moment_walkthrough(big_t, g, eps=cfg.eps or 0.05,
                                             seed=cfg.seed)


# ----------------------------------------------------------------------
# quadruple
# ----------------------------------------------------------------------

def run_diagonal_brute(cfg: ExperimentConfig) -> ExperimentReport:
    """Brute-force diagonal enumeration vs the key-bucket oracle count on
    a K grid, with the growth exponent."""
    k_grid = [25, 50, 100, 200] if cfg.k is None else [cfg.k]
    counts = []
    mismatches = 0
    for k_lo in k_grid:
        found = quadruple.brute_force_diagonal(k_lo, 2 * k_lo)
        # independent count: bucket pairs by the exact combined core form
        buckets: dict = {}
        for m in range(k_lo + 1, 2 * k_lo + 1):
            am, hm = quadruple.squarefree_core(m)
            for n in range(k_lo + 1, 2 * k_lo + 1):
                an, hn = quadruple.squarefree_core(n)
                if hm == hn:
                    key = ((hm, am + an),)
                else:
                    key = tuple(sorted(((hm, am), (hn, an))))
                buckets[key] = buckets.get(key, 0) + 1
        oracle = sum(v * v for v in buckets.values())
        if oracle != len(found):
            mismatches += 1
        counts.append((k_lo, len(found), oracle))
    slope = float("nan")
    if len(k_grid) >= 3:
        slope = float(np.polyfit(np.log([r[0] for r in counts]),
                                 np.log([r[1] for r in counts]), 1)[0])
    report = ExperimentReport(
        name="diagonal-brute",
        config=_echo(cfg, k_grid=k_grid),
        scalars={"mismatches": float(mismatches), "growth_exponent": slope},
        series={
            "K": [float(r[0]) for r in counts],
            "count": [float(r[1]) for r in counts],
            "oracle_count": [float(r[2]) for r in counts],
        },
    )
    report.add_check("oracle_match", value=float(mismatches), budget=0.0,
                     passed=mismatches == 0,
                     note="exact enumeration vs key-bucket pair counting")
    if not math.isnan(slope):
        report.add_check("growth_exponent", value=abs(slope - 2.05),
                         budget=0.25,
                         note="diagonal count grows like K^2 polylog")
    return report


def run_ell_uniqueness(cfg: ExperimentConfig) -> ExperimentReport:
    """Random triples never admit two l; the fast path matches a full
    scan wherever the scan is affordable."""
    eta = cfg.eta or 0.1
    n = cfg.k or 10000
    k_grid = [100, 1000, 10000]
    rng = np.random.default_rng(cfg.seed)
    rows = []
    scan_checked = 0
    for k_lo in k_grid:
        hits = 0
        scan_budget = 400 if k_lo <= 100 else 120
        for i in range(n):
            m = int(rng.integers(k_lo + 1, 2 * k_lo + 1))
            nn = int(rng.integers(k_lo + 1, 2 * k_lo + 1))
            k = int(rng.integers(k_lo + 1, 2 * k_lo + 1))
            got = quadruple.ell_uniqueness(m, nn, k, k_lo, 2 * k_lo, eta=eta)
            if got is not None:
                hits += 1
            if i < scan_budget:
                scan = quadruple._scan_ell(m, nn, k, k_lo, 2 * k_lo, eta)
                scan_checked += 1
                if not ((got is None and not scan) or scan == [got]):
                    raise PrecisionError(
                        f"fast path {got} disagrees with scan {scan} "
                        f"at {(m, nn, k)}, K={k_lo}")
        rows.append((k_lo, hits))
    report = ExperimentReport(
        name="ell-uniqueness",
        config=_echo(cfg, eta=eta, n=n, k_grid=k_grid),
        scalars={"scan_cross_checked": float(scan_checked),
                 **{f"hits_at_K_{r[0]}": float(r[1]) for r in rows}},
        notes=["a uniqueness violation raises PrecisionError inside the op, "
               "so a completed run certifies at most one l per triple"],
    )
    report.add_check("uniqueness", value=0.0, budget=1.0, passed=True,
                     note=f"{3 * n} triples, no double-l; "
                          f"{scan_checked} full-scan cross-checks")
    return report


def run_near_integer(cfg: ExperimentConfig) -> ExperimentReport:
    """Near-integer counts against K delta + K^(2/3) across the K grid."""
    sample_mn = cfg.k or 10
    k_grid = [1000, 10000, 100000]
    ratios = []
    rows = []
    for k_lo in k_grid:
        delta = float(k_lo) ** (-1.0 / 3.0)
        nic = quadruple.near_integer_count(k_lo, delta, sample_mn,
                                           seed=cfg.seed)
        ratios.append(nic.bound_ratio)
        rows.append((k_lo, delta, nic.max_count, nic.mean_count, nic.bound,
                     nic.bound_ratio))
    stability = max(ratios) / min(ratios)
    report = ExperimentReport(
        name="near-integer",
        config=_echo(cfg, sample_mn=sample_mn, k_grid=k_grid),
        scalars={"ratio_stability": stability,
                 "fitted_constant": max(ratios)},
        series={
            "K": [float(r[0]) for r in rows],
            "delta": [r[1] for r in rows],
            "max_count": [float(r[2]) for r in rows],
            "mean_count": [r[3] for r in rows],
            "bound": [r[4] for r in rows],
            "ratio": [r[5] for r in rows],
        },
    )
    report.add_check("ratio_stability", value=stability - 1.0, budget=0.5,
            note="fitted constant stable within +-50 percent across K")
    return report


def run_quad44(cfg: ExperimentConfig) -> ExperimentReport:
    big_t = cfg.big_t or 1e4
    k_lo = cfg.k or 8
    report = quadruple.quadruple_sum_44(big_t, k_lo)

    # companion decomposition of the M = 1 route: diagonal plus explicit
    # off-diagonal pair integrals
    m1 = quadruple.theorem1_rhs(big_t, k_lo, m_power=1)
    phi_mass = report.scalars["phi_mass"]
    values = list(range(k_lo + 1, 2 * k_lo + 1))
    d_table = divisor_sieve(2 * k_lo)
    diag = sum(d_table.d(v) ** 2 * v ** -0.5 for v in values) * phi_mass
    off_parts = []
    for i, ka in enumerate(values):
        for kb in values[i + 1:]:
            de = quadruple.compute_DE(ka, 1, kb, 1)  # D,E for theta_ka - theta_kb
            wa = (-1.0) ** ka * d_table.d(ka) * ka ** -0.25
            wb = (-1.0) ** kb * d_table.d(kb) * kb ** -0.25
            i_ab = expsum.osc_integral_IT(de.d_value, de.e_value, big_t).direct
            off_parts.append(2.0 * wa * wb * i_ab.real)
    decomposition = diag + math.fsum(off_parts)
    m1_gap = abs(m1 - decomposition) / m1
    report.scalars["m1_direct"] = m1
    report.scalars["m1_diagonal"] = diag
    report.scalars["m1_decomposition"] = decomposition
    report.scalars["m1_gap"] = m1_gap
    report.add_check("m1_decomposition", value=m1_gap, budget=0.05,
                     note="diagonal plus pair integrals vs |sum|^2 quadrature")
    return report


def run_restricted418(cfg: ExperimentConfig) -> ExperimentReport:
    big_t = cfg.big_t or 1e5
    k_lo = cfg.k or 200
    eta = cfg.eta or quadruple.DEFAULT_ETA
    r = quadruple.restricted_sum_418(big_t, k_lo, eta=eta)
    report = ExperimentReport(
        name="restricted418",
        config=_echo(cfg, big_t=big_t, k_lo=k_lo, eta=eta,
                     C1=expsum.REGIME_C1, C2=expsum.REGIME_C2),
        scalars={
            "value_re": r.value.real, "value_im": r.value.imag,
            "count": float(r.count),
            "triangle_bound": r.triangle_bound,
            "sp_re": r.sp_sum.real, "sp_im": r.sp_sum.imag,
            "direct_re": r.direct_sum.real, "direct_im": r.direct_sum.imag,
            "sp_vs_direct_gap": r.rel_gap,
        },
        notes=["the saddle asymptotics carry only a few radians of phase at "
               "desk scale in the admissible window, so sp_vs_direct_gap is "
               "reported as a measured regression value, not a pass target"],
    )
    report.add_check("triangle", value=abs(r.value), budget=r.triangle_bound,
                     note="starred sum within its term-wise bound")
    return report


# ----------------------------------------------------------------------
# registry and suites
# ----------------------------------------------------------------------

REGISTRY: dict[str, Callable[[ExperimentConfig], ExperimentReport]] = {}


def _register(name: str, fn: Callable[[ExperimentConfig], ExperimentReport]):
    REGISTRY[name] = fn


_register("zeta-routes", run_zeta_routes)
_register("error-term", run_error_term)
_register("majorization", run_majorization)
_register("large-values", run_large_values)
_register("phase-taylor", run_phase_taylor)
_register("poisson-check", run_poisson_check)
_register("sp-separated", run_sp_separated)
_register("pipeline", run_pipeline)
_register("smoothing-gap", run_smoothing_gap)
_register("dirichlet-meansq", run_dirichlet_meansq)
_register("exp-sum-dual", run_exp_sum_dual)
_register("derivative-tests", run_derivative_tests)
_register("walkthrough", run_walkthrough)
_register("diagonal-brute", run_diagonal_brute)
_register("ell-uniqueness", run_ell_uniqueness)
_register("near-integer", run_near_integer)
_register("quad44", run_quad44)
_register("restricted418", run_restricted418)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return REGISTRY[cfg.experiment](cfg)


# suite definitions: (experiment, overrides) pairs.  The smoke suite
# shrinks sizes for a fast gate; the desk suite is the acceptance list.
SMOKE_SUITE: list[tuple[str, dict]] = [
    ("zeta-routes", {"big_t": 2e4, "k": 120}),
    ("error-term", {}),
    ("majorization", {"k": 10}),
    ("phase-taylor", {}),
    ("poisson-check", {}),
    ("sp-separated", {}),
    ("pipeline", {"k": 12}),
    ("exp-sum-dual", {"big_t": 2e4, "k": 40}),
    ("derivative-tests", {"k": 60}),
    ("walkthrough", {"big_t": 5e3, "g": 12.0}),
    ("diagonal-brute", {"k": 25}),
    ("ell-uniqueness", {"k": 300}),
    ("near-integer", {"k": 3}),
    ("quad44", {"big_t": 2e3, "k": 4}),
]

DESK_SUITE: list[tuple[str, dict]] = [
    ("zeta-routes", {}),
    ("error-term", {}),
    ("majorization", {}),
    ("large-values", {}),
    ("phase-taylor", {}),
    ("poisson-check", {}),
    ("sp-separated", {}),
    ("pipeline", {}),
    ("smoothing-gap", {}),
    ("dirichlet-meansq", {}),
    ("exp-sum-dual", {}),
    ("derivative-tests", {}),
    ("walkthrough", {}),
    ("diagonal-brute", {}),
    ("ell-uniqueness", {}),
    ("near-integer", {}),
    ("quad44", {}),
    ("restricted418", {"k": 100, "big_t": 2e4}),
]


def suite_specs(level: str) -> list[tuple[str, dict]]:
    if level == "smoke":
        return list(SMOKE_SUITE)
    if level == "desk":
        return list(DESK_SUITE)
    raise ValidationError(f"unknown suite level {level!r}")
