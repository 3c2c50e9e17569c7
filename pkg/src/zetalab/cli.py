"""Command line front end.

One experiment per invocation (--experiment NAME plus knobs), or a whole
gate (--suite smoke|desk).  Every run writes a JSON report, CSV series
and PNG figures under --out, all through atomic replace, with stable
paths per experiment so a rerun with the same config and seed reproduces
the files byte for byte apart from the wall_time_s field.  Parallelism
comes only from the ZETALAB_WORKERS environment variable; it never
changes results, only speed.

Exit codes: 0 all checks passed, 1 invalid configuration, 2 a numerical
routine failed to converge, 3 a check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .errors import ConvergenceError, PrecisionError, ValidationError
from .experiments import (REGISTRY, ExperimentConfig, run_experiment,
                          suite_specs)
from .figures import render_figures
from .report import ExperimentReport, _atomic_write_text, write_csv

EXIT_PASS = 0
EXIT_VALIDATION = 1
EXIT_CONVERGENCE = 2
EXIT_CHECK_FAILED = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad flags through ValidationError, keeping
    the exit-code contract (argparse itself would exit 2)."""

    def error(self, message):
        raise ValidationError(message)


def build_parser() -> _Parser:
    p = _Parser(prog="zetalab", description=__doc__.strip().splitlines()[0],
                formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--experiment", choices=sorted(REGISTRY),
                   help="experiment to run")
    p.add_argument("--suite", choices=["smoke", "desk"],
                   help="run a whole gate instead of one experiment")
    p.add_argument("--list", action="store_true", help="list experiments")
    p.add_argument("--T", dest="big_t", type=float, default=None,
                   help="window center / integration scale")
    p.add_argument("--G", dest="g", type=float, default=None,
                   help="window radius")
    p.add_argument("--K", dest="k", type=int, default=None,
                   help="frequency range start, count, or grid override")
    p.add_argument("--V", dest="v", type=float, default=None,
                   help="large-value threshold")
    p.add_argument("--M", dest="m", type=int, default=None,
                   help="moment power (1 or 2)")
    p.add_argument("--eta", type=float, default=None,
                   help="admissibility parameter")
    p.add_argument("--eps", type=float, default=None,
                   help="epsilon exponent, in (0, 0.2]")
    p.add_argument("--seed", type=int, default=1, help="master RNG seed")
    p.add_argument("--tol", type=float, default=None,
                   help="primary tolerance override")
    p.add_argument("--out", type=str, default="out",
                   help="output directory")
    p.add_argument("--no-figures", action="store_true",
                   help="skip PNG rendering")
    p.add_argument("--version", action="version", version=__version__)
    return p


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        experiment=args.experiment,
        big_t=args.big_t, g=args.g, k=args.k, v=args.v, m=args.m,
        eta=args.eta, eps=args.eps, seed=args.seed, tol=args.tol,
        out=args.out,
    )


def emit_argv(cfg: ExperimentConfig) -> list[str]:
    """Flag list that parses back to an equal config (round-trip
    invariant; exercised by the test suite)."""
    argv = ["--experiment", cfg.experiment, "--seed", str(cfg.seed)]
    for flag, value in [("--T", cfg.big_t), ("--G", cfg.g), ("--K", cfg.k),
                        ("--V", cfg.v), ("--M", cfg.m), ("--eta", cfg.eta),
                        ("--eps", cfg.eps), ("--tol", cfg.tol)]:
        if value is not None:
            argv.extend([flag, repr(value)])
    argv.extend(["--out", cfg.out])
    return argv


def parse_config(argv: list[str]) -> ExperimentConfig:
    return config_from_args(build_parser().parse_args(argv))


# ----------------------------------------------------------------------
# output
# ----------------------------------------------------------------------

def _series_groups(series: dict) -> list[dict]:
    """Split a series dict into equal-length column groups (one CSV each)."""
    by_len: dict[int, dict] = {}
    for key in series:
        by_len.setdefault(len(series[key]), {})[key] = series[key]
    return [by_len[n] for n in sorted(by_len, reverse=True)]


def write_outputs(report: ExperimentReport, out_dir: str, stem: str,
                  wall_time_s: float, figures: bool = True) -> list[str]:
    """JSON + CSVs + figures for one report; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    payload = json.loads(report.to_json())
    payload["wall_time_s"] = wall_time_s
    json_path = str(out / f"{stem}.json")
    _atomic_write_text(json_path,
                       json.dumps(payload, indent=2, sort_keys=True,
                                  allow_nan=True) + "\n")
    paths.append(json_path)
    for i, group in enumerate(_series_groups(report.series)):
        suffix = "series" if i == 0 else f"series{i + 1}"
        csv_path = str(out / f"{stem}_{suffix}.csv")
        write_csv(csv_path, {k: group[k] for k in sorted(group)})
        paths.append(csv_path)
    if figures:
        paths.extend(render_figures(report, str(out), stem))
    return paths


def run(cfg: ExperimentConfig, figures: bool = True) -> tuple[ExperimentReport, list[str]]:
    """Dispatch one experiment and persist its outputs."""
    t0 = time.perf_counter()
    report = run_experiment(cfg)
    wall = time.perf_counter() - t0
    paths = write_outputs(report, cfg.out or "out", cfg.experiment,
                          wall_time_s=wall, figures=figures)
    return report, paths


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------

def run_suite(level: str, out_dir: str, seed: int = 1,
              figures: bool = True) -> int:
    """Run a gate; one line per experiment, summary JSON at the end."""
    specs = suite_specs(level)
    lines = []
    any_failed = False
    worst_code = EXIT_PASS
    for name, overrides in specs:
        cfg = ExperimentConfig(experiment=name, seed=seed, out=out_dir,
                               **overrides)
        t0 = time.perf_counter()
        try:
            report, _ = run(cfg, figures=figures)
        except ConvergenceError as exc:
            any_failed = True
            worst_code = max(worst_code, EXIT_CONVERGENCE)
            lines.append((name, "ERROR", time.perf_counter() - t0, str(exc)))
            print(f"ERROR {name}: {exc}")
            continue
        except PrecisionError as exc:
            any_failed = True
            worst_code = max(worst_code, EXIT_CHECK_FAILED)
            lines.append((name, "ERROR", time.perf_counter() - t0, str(exc)))
            print(f"ERROR {name}: {exc}")
            continue
        dt = time.perf_counter() - t0
        if report.all_passed:
            lines.append((name, "PASS", dt, ""))
            print(f"PASS  {name}  ({dt:.1f}s)")
        else:
            any_failed = True
            worst_code = max(worst_code, EXIT_CHECK_FAILED)
            failed = [c for c in report.checks if not c.passed]
            detail = "; ".join(f"{c.name} value={c.value:.4g} "
                               f"budget={c.budget:.4g}" for c in failed)
            lines.append((name, "FAIL", dt, detail))
            print(f"FAIL  {name}  ({dt:.1f}s)  {detail}")
    summary = {
        "suite": level,
        "version": __version__,
        "results": [{"experiment": n, "status": s, "wall_time_s": dt,
                     "detail": d} for n, s, dt, d in lines],
        "all_passed": not any_failed,
    }
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _atomic_write_text(str(out / f"suite_{level}.json"),
                       json.dumps(summary, indent=2, sort_keys=True) + "\n")
    n_pass = sum(1 for _, s, _, _ in lines if s == "PASS")
    print(f"{n_pass}/{len(lines)} passed")
    return worst_code


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.list:
            for name in sorted(REGISTRY):
                print(name)
            return EXIT_PASS
        if args.suite:
            return run_suite(args.suite, args.out, seed=args.seed,
                             figures=not args.no_figures)
        if not args.experiment:
            raise ValidationError("one of --experiment, --suite, --list "
                                  "is required")
        cfg = config_from_args(args)
        report, paths = run(cfg, figures=not args.no_figures)
        for c in report.checks:
            mark = "PASS" if c.passed else "FAIL"
            print(f"{mark}  {c.name}  value={c.value:.6g} "
                  f"budget={c.budget:.6g}")
        for p in paths:
            print(f"wrote {p}")
        return EXIT_PASS if report.all_passed else EXIT_CHECK_FAILED
    except ValidationError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
