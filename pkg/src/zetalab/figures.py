"""Figure rendering for experiment reports.

Each experiment gets one or two PNGs next to its JSON/CSV output: a
specialized plot of the interesting series where there is one, and a
generic check-values chart for every report.  Rendering is file-only
(Agg), deterministic, and never required for the numbers themselves.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .report import ExperimentReport


def _save(fig, out_dir: str, stem: str, tag: str) -> str:
    path = os.path.join(out_dir, f"{stem}_{tag}.png")
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return path


def _checks_figure(report: ExperimentReport, out_dir: str, stem: str) -> str:
    """Horizontal bars of check value vs budget, log scale when spread."""
    names = [c.name for c in report.checks]
    values = np.array([max(abs(c.value), 1e-18) for c in report.checks])
    budgets = np.array([max(abs(c.budget), 1e-18) for c in report.checks])
    colors = ["tab:green" if c.passed else "tab:red" for c in report.checks]
    fig, ax = plt.subplots(figsize=(7, 0.6 * max(len(names), 2) + 1.2))
    y = np.arange(len(names))
    ax.barh(y, values, color=colors, height=0.5, label="value")
    ax.scatter(budgets, y, marker="|", s=300, color="k", zorder=3,
               label="budget")
    ax.set_yticks(y)
    ax.set_yticklabels(names)
    if len(values) and (values.max() / values.min() > 50.0
                        or budgets.max() / budgets.min() > 50.0):
        ax.set_xscale("log")
    ax.invert_yaxis()
    ax.set_xlabel("check value (bar) vs budget (tick)")
    ax.set_title(f"{report.name}: checks")
    fig.tight_layout()
    return _save(fig, out_dir, stem, "checks")


def _fig_zeta_routes(report, out_dir, stem):
    t = np.array(report.series["t"])
    gap = np.maximum(np.array(report.series["route_gap"]), 1e-18)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.semilogy(t, gap, ".", ms=3, alpha=0.6)
    ax.axhline(report.config.get("tol", 1e-6), color="tab:red", lw=1,
               label="budget")
    ax.set_xlabel("t")
    ax.set_ylabel("|route A - route B|")
    ax.set_title("two-route gap of the squared modulus")
    ax.legend()
    return [_save(fig, out_dir, stem, "routes")]


def _fig_error_term(report, out_dir, stem):
    t = np.array(report.series["scan_T"])
    e = np.array(report.series["scan_E"])
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, e, lw=0.9)
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("T")
    ax.set_ylabel("E(T)")
    ax.set_title(f"mean-square error term, "
                 f"{int(report.scalars['sign_changes'])} sign changes")
    return [_save(fig, out_dir, stem, "scan")]


def _fig_majorization(report, out_dir, stem):
    margins = np.array(report.series["margin"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(margins, bins=24, color="tab:blue", alpha=0.8)
    ax.axvline(0.0, color="tab:red", lw=1)
    ax.set_xlabel("smoothed minus classical")
    ax.set_ylabel("point sets")
    ax.set_title("majorization margin across seeded point sets")
    return [_save(fig, out_dir, stem, "margins")]


def _fig_large_values(report, out_dir, stem):
    t = np.array(report.series["t"])
    v = np.array(report.series["value"])
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, v, ".", ms=2.5, alpha=0.5)
    ax.axhline(report.config.get("threshold", 0.0), color="tab:red", lw=1)
    ax.set_xlabel("t")
    ax.set_ylabel("|zeta(1/2+it)|")
    ax.set_title(f"{len(t)} unit-spaced large values")
    return [_save(fig, out_dir, stem, "points")]


def _fig_poisson(report, out_dir, stem):
    names = report.series["function"]
    diffs = np.maximum(np.array(report.series["abs_diff"]), 1e-18)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(names)), diffs, color="tab:blue")
    ax.set_yscale("log")
    ax.axhline(report.config.get("tol", 1e-8), color="tab:red", lw=1)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylabel("|lattice sum - moment expansion|")
    ax.set_title("summation identity on the built-in windows")
    return [_save(fig, out_dir, stem, "identity")]


def _fig_sp_separated(report, out_dir, stem):
    x0 = np.array(report.series["x0"])
    gap = np.array(report.series["rel_gap"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(x0, np.maximum(gap, 1e-18), "o")
    ax.axhline(report.config.get("tol", 0.05), color="tab:red", lw=1)
    ax.set_xlabel("saddle location x0")
    ax.set_ylabel("relative gap")
    ax.set_title("stationary phase vs direct quadrature")
    return [_save(fig, out_dir, stem, "gaps")]


def _fig_pipeline(report, out_dir, stem):
    k = np.array(report.series["k"])
    a = np.array(report.series["cells_integral"])
    b = np.array(report.series["series_adjusted"])
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].plot(k, a, "o-", ms=3, label="cell route")
    axes[0].plot(k, b, "x--", ms=4, label="series route")
    axes[0].set_xlabel("k")
    axes[0].set_ylabel("windowed contribution")
    axes[0].legend()
    axes[0].set_title("per-k comparison")
    cx = np.array(report.series["cell_x0"])
    cg = np.maximum(np.array(report.series["cell_rel_gap"]), 1e-18)
    axes[1].semilogy(cx, cg, ".", ms=4)
    axes[1].set_xlabel("cell saddle x0")
    axes[1].set_ylabel("cell sp vs direct gap")
    axes[1].set_title("cell diagnostics")
    fig.tight_layout()
    return [_save(fig, out_dir, stem, "series")]


def _fig_walkthrough(report, out_dir, stem):
    k_lo = np.array(report.series["block_k_lo"])
    ratio = np.array(report.series["block_max_ratio"])
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.semilogx(k_lo, ratio, "o-", ms=4)
    ax.axhline(1.0, color="tab:red", lw=1, label="prediction")
    ax.set_xlabel("dyadic block start")
    ax.set_ylabel("max |S| / predicted bound")
    ax.set_title("block sums against exponent-pair predictions")
    ax.legend()
    return [_save(fig, out_dir, stem, "blocks")]


def _fig_diagonal_brute(report, out_dir, stem):
    k = np.array(report.series["K"])
    c = np.array(report.series["count"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(k, c, "o-", label="diagonal count")
    ax.loglog(k, c[0] * (k / k[0]) ** 2, "--", lw=1,
              label="K^2 reference")
    ax.set_xlabel("K")
    ax.set_ylabel("solutions in (K, 2K]")
    slope = report.scalars.get("growth_exponent", float("nan"))
    ax.set_title(f"diagonal growth, fitted exponent {slope:.3f}")
    ax.legend()
    return [_save(fig, out_dir, stem, "growth")]


def _fig_near_integer(report, out_dir, stem):
    k = np.array(report.series["K"])
    mx = np.array(report.series["max_count"])
    bd = np.array(report.series["bound"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(k, mx, "o-", label="max count")
    ax.loglog(k, bd, "s--", label="K delta + K^(2/3)")
    ax.set_xlabel("K")
    ax.set_ylabel("near-integer hits per (m, n)")
    ax.set_title("near-integer counting vs its predicted scale")
    ax.legend()
    return [_save(fig, out_dir, stem, "counts")]


def _fig_quad44(report, out_dir, stem):
    s = report.scalars
    labels = ["diagonal", "off-diagonal", "total", "direct route"]
    vals = [s["diagonal_re"], s["offdiagonal_re"], s["total_re"],
            s["theorem1_route"]]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(labels, vals, color=["tab:blue", "tab:orange", "tab:green",
                                "tab:gray"])
    ax.set_ylabel("windowed fourth-power mass")
    ax.set_title(f"two routes, rel gap {s['two_route_rel_gap']:.2e}")
    return [_save(fig, out_dir, stem, "routes")]


def _fig_restricted418(report, out_dir, stem):
    s = report.scalars
    labels = ["|value|", "triangle bound", "|sp route|", "|direct route|"]
    vals = [abs(complex(s["value_re"], s["value_im"])), s["triangle_bound"],
            abs(complex(s["sp_re"], s["sp_im"])),
            abs(complex(s["direct_re"], s["direct_im"]))]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(labels, vals, color="tab:blue")
    ax.set_yscale("log")
    ax.set_ylabel("magnitude")
    ax.set_title(f"restricted off-diagonal sum, {int(s['count'])} terms")
    return [_save(fig, out_dir, stem, "magnitudes")]


_SPECIAL = {
    "zeta-routes": _fig_zeta_routes,
    "error-term": _fig_error_term,
    "majorization": _fig_majorization,
    "large-values": _fig_large_values,
    "poisson-check": _fig_poisson,
    "sp-separated": _fig_sp_separated,
    "pipeline_compare": _fig_pipeline,
    "twelfth_moment_walkthrough": _fig_walkthrough,
    "diagonal-brute": _fig_diagonal_brute,
    "near-integer": _fig_near_integer,
    "quadruple_sum_44": _fig_quad44,
    "restricted418": _fig_restricted418,
}


def render_figures(report: ExperimentReport, out_dir: str,
                   stem: str) -> list[str]:
    """All figures for one report; returns the written paths."""
    paths: list[str] = []
    special = _SPECIAL.get(report.name)
    if special is not None:
        paths.extend(special(report, out_dir, stem))
    if report.checks:
        paths.append(_checks_figure(report, out_dir, stem))
    return paths
