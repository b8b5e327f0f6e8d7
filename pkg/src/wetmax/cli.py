"""Command line interface.

Subcommands cover the whole workflow: ``segment`` a daily series into wet
periods, ``fit`` the maximum law to per-period maxima, sweep the censoring
threshold with ``gof-sweep``, draw synthetic samples with ``simulate``, and
evaluate ``quantile`` / ``moment`` values of a given parameter triple.

Exit codes: 0 on success, 2 for input or configuration errors, 3 when an
estimator fails on the given data.  All randomness sits behind ``--seed``,
so every output is reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .distributions import ModelParams, limit_moment, limit_quantile
from .estimation import (
    EstimationError,
    FitReport,
    MaximaSample,
    QuantileTriple,
    fit_least_squares,
    fit_mle,
    fit_negbin,
    fit_quantile,
    fit_quantile_tau_scan,
)
from .gof import emit_plot_data, ks_model
from .pipeline import (
    CensoringSpec,
    CsvFormatError,
    EmptySampleError,
    build_maxima,
    durations,
    ingest_csv,
    segment,
)
from .samplers import Representation, make_rng, sample_limit, simulate_prelimit_max

METHODS = ("quantile", "ls", "mle")


def _write_text(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _model_params_from(args) -> ModelParams:
    return ModelParams(args.r, args.lam, args.gamma)


def _add_input_options(sub, with_kind=False):
    sub.add_argument("--input", required=True, help="CSV path, or '-' for stdin")
    sub.add_argument("--wet-threshold", type=float, default=0.0,
                     help="day is wet when value > threshold (default 0)")
    sub.add_argument("--missing-policy", choices=("split", "dry"), default="split")
    sub.add_argument("--missing-marker", default="NA")
    if with_kind:
        sub.add_argument("--input-kind", choices=("daily", "maxima"), default="daily",
                         help="'daily' segments the series first; 'maxima' takes "
                              "the input column as the maxima sample itself")


def _add_fit_options(sub):
    sub.add_argument("--min-wet-days", type=int, default=1,
                     help="censoring threshold h: keep periods of at least h days")
    sub.add_argument("--method", choices=METHODS + ("all",), default="quantile")
    sub.add_argument("--r", default=None,
                     help="known shape r (float) or 'from-durations' to fit it "
                          "from the wet-period lengths")
    sub.add_argument("--p1", type=float, default=0.25)
    sub.add_argument("--p2", type=float, default=0.50)
    sub.add_argument("--p3", type=float, default=0.75)
    sub.add_argument("--tau-grid", default=None,
                     help="comma separated taus in (0, 0.25); scans triples "
                          "(tau, 1/2, 1-tau) and keeps the best fit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wetmax",
        description="Wet-spell maximum precipitation model: segment, fit, check, simulate.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    seg = commands.add_parser("segment", help="segment a daily series into wet periods")
    _add_input_options(seg)
    seg.add_argument("--out", default=None)
    seg.set_defaults(func=_cmd_segment)

    fit = commands.add_parser("fit", help="estimate (r, lambda, gamma) from maxima")
    _add_input_options(fit, with_kind=True)
    _add_fit_options(fit)
    fit.add_argument("--out", default=None)
    fit.set_defaults(func=_cmd_fit)

    sweep = commands.add_parser("gof-sweep",
                                help="fit and measure uniform distance per censoring threshold")
    _add_input_options(sweep, with_kind=True)
    _add_fit_options(sweep)
    sweep.add_argument("--h-range", default="1:15", help="inclusive range 'min:max'")
    sweep.add_argument("--plot-dir", default=None,
                       help="directory for per-threshold empirical/model d.f. tables")
    sweep.add_argument("--out", default=None)
    sweep.set_defaults(func=_cmd_gof_sweep)

    sim = commands.add_parser("simulate", help="draw variates from the limit law")
    sim.add_argument("--r", type=float, required=True)
    sim.add_argument("--lambda", dest="lam", type=float, required=True)
    sim.add_argument("--gamma", type=float, required=True)
    sim.add_argument("--tag", default=Representation.DIRECT.value,
                     choices=[t.value for t in Representation])
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--prelimit-n", type=int, default=None,
                     help="draw pre-limit scaled maxima of Pareto samples of "
                          "effective size N~NegBin(r, min(q, lambda/n)) instead")
    sim.add_argument("--q", type=float, default=0.5)
    sim.add_argument("--pareto-gamma", type=float, default=None)
    sim.add_argument("--out", default=None)
    sim.set_defaults(func=_cmd_simulate)

    quant = commands.add_parser("quantile", help="print a quantile of the limit law")
    quant.add_argument("--eps", type=float, required=True)
    quant.add_argument("--r", type=float, required=True)
    quant.add_argument("--lambda", dest="lam", type=float, required=True)
    quant.add_argument("--gamma", type=float, required=True)
    quant.set_defaults(func=_cmd_quantile)

    mom = commands.add_parser("moment", help="print a fractional moment of the limit law")
    mom.add_argument("--delta", type=float, required=True)
    mom.add_argument("--r", type=float, required=True)
    mom.add_argument("--lambda", dest="lam", type=float, required=True)
    mom.add_argument("--gamma", type=float, required=True)
    mom.set_defaults(func=_cmd_moment)

    return parser


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_segment(args) -> int:
    series = ingest_csv(args.input, missing_marker=args.missing_marker)
    wp = segment(series, wet_threshold=args.wet_threshold, missing_policy=args.missing_policy)
    doc = wp.to_json_dict()
    doc["warnings"] = wp.warnings
    _write_text(json.dumps(doc, sort_keys=True) + "\n", args.out)
    return 0


def _load_sample(args):
    """Returns (maxima sample, durations list or None) per the input kind."""
    series = ingest_csv(args.input, missing_marker=args.missing_marker)
    if getattr(args, "input_kind", "daily") == "maxima":
        return MaximaSample(series.values), None
    wp = segment(series, wet_threshold=args.wet_threshold, missing_policy=args.missing_policy)
    sample = build_maxima(wp, CensoringSpec(args.min_wet_days))
    return sample, durations(wp)


def _resolve_r(args, duration_list):
    """Returns (r value or None, source tag)."""
    if args.r is None:
        return None, None
    if args.r == "from-durations":
        if duration_list is None:
            raise ValueError("--r from-durations requires --input-kind daily")
        return fit_negbin(duration_list).r, "durations"
    try:
        value = float(args.r)
    except ValueError:
        raise ValueError(f"--r must be a number or 'from-durations', got {args.r!r}") from None
    if value <= 0.0:
        raise ValueError(f"--r must be > 0, got {value}")
    return value, "flag"


def _parse_tau_grid(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"cannot parse --tau-grid {text!r}") from None


def _run_methods(sample, methods, r_value, triple, tau_grid):
    """Fit the requested methods; returns {method: FitReport}."""
    reports: dict[str, FitReport] = {}
    if "quantile" in methods:
        if tau_grid is not None:
            params, _tau = fit_quantile_tau_scan(sample, tau_grid, r=r_value)
        else:
            params = fit_quantile(sample, triple, r=r_value)
        reports["quantile"] = FitReport(
            params, "quantile", ks_model(sample, params).ks_distance, sample.m
        )
    if "ls" in methods:
        lam, gamma = fit_least_squares(sample, r_value)
        params = ModelParams(r_value, lam, gamma)
        reports["ls"] = FitReport(params, "ls", ks_model(sample, params).ks_distance, sample.m)
    if "mle" in methods:
        if r_value is not None:
            lam, gamma = fit_least_squares(sample, r_value)
            init = ModelParams(r_value, lam, gamma)
        elif "quantile" in reports:
            init = reports["quantile"].params
        else:
            init = fit_quantile(sample, triple)
        reports["mle"] = fit_mle(sample, init, fix_r=r_value is not None)
    return reports


def _select_methods(args, r_value):
    if args.method == "all":
        methods = ["quantile", "mle"] + (["ls"] if r_value is not None else [])
    else:
        methods = [args.method]
    if "ls" in methods and r_value is None:
        raise ValueError("method 'ls' needs a known shape: pass --r VALUE or --r from-durations")
    return [m for m in METHODS if m in methods]


def _cmd_fit(args) -> int:
    sample, duration_list = _load_sample(args)
    r_value, r_source = _resolve_r(args, duration_list)
    methods = _select_methods(args, r_value)
    triple = QuantileTriple(args.p1, args.p2, args.p3)
    tau_grid = _parse_tau_grid(args.tau_grid) if args.tau_grid else None
    reports = _run_methods(sample, methods, r_value, triple, tau_grid)
    doc = {
        "input": args.input,
        "m": sample.m,
        "min_wet_days": getattr(args, "min_wet_days", 1) if args.input_kind == "daily" else None,
        "r_given": r_value,
        "r_source": r_source,
        "reports": {name: report.to_dict() for name, report in reports.items()},
    }
    _write_text(json.dumps(doc, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_gof_sweep(args) -> int:
    if args.input_kind != "daily":
        raise ValueError("gof-sweep needs --input-kind daily (it sweeps the censoring threshold)")
    series = ingest_csv(args.input, missing_marker=args.missing_marker)
    wp = segment(series, wet_threshold=args.wet_threshold, missing_policy=args.missing_policy)
    duration_list = durations(wp)
    r_value, _source = _resolve_r(args, duration_list)
    methods = _select_methods(args, r_value)
    triple = QuantileTriple(args.p1, args.p2, args.p3)
    tau_grid = _parse_tau_grid(args.tau_grid) if args.tau_grid else None

    try:
        h_lo, h_hi = (int(tok) for tok in args.h_range.split(":"))
    except ValueError:
        raise ValueError(f"cannot parse --h-range {args.h_range!r}, expected 'min:max'") from None
    if not (1 <= h_lo <= h_hi):
        raise ValueError(f"need 1 <= min <= max in --h-range, got {args.h_range!r}")

    plot_dir = Path(args.plot_dir) if args.plot_dir else None
    if plot_dir is not None:
        plot_dir.mkdir(parents=True, exist_ok=True)

    lines = ["h\tm\t" + "\t".join(f"ks_{m}" for m in methods)]
    for h in range(h_lo, h_hi + 1):
        try:
            sample = build_maxima(wp, CensoringSpec(h))
        except EmptySampleError:
            lines.append(f"{h}\t0\t" + "\t".join("" for _ in methods))
            continue
        cells = [str(h), str(sample.m)]
        for method in methods:
            try:
                report = _run_methods(sample, [method], r_value, triple, tau_grid)[method]
            except EstimationError:
                cells.append("")
                continue
            cells.append(f"{report.ks_distance:.12g}")
            if plot_dir is not None:
                grid = np.linspace(0.0, 1.05 * float(np.max(sample.values)), 201)
                path = plot_dir / f"gof_h{h}_{method}.tsv"
                path.write_text(emit_plot_data(sample, report.params, grid))
        lines.append("\t".join(cells))
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_simulate(args) -> int:
    params = _model_params_from(args)
    rng = make_rng(args.seed)
    if args.prelimit_n is not None:
        pareto_gamma = args.pareto_gamma if args.pareto_gamma is not None else params.gamma
        values = simulate_prelimit_max(
            args.prelimit_n, params, args.q, pareto_gamma, rng, size=args.n
        )
    else:
        values = sample_limit(params, Representation(args.tag), rng, size=args.n)
    text = "".join(f"{v:.17g}\n" for v in np.atleast_1d(values))
    _write_text(text, args.out)
    return 0


def _cmd_quantile(args) -> int:
    print(f"{limit_quantile(args.eps, _model_params_from(args)):.12g}")
    return 0


def _cmd_moment(args) -> int:
    print(f"{limit_moment(args.delta, _model_params_from(args)):.12g}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EstimationError, EmptySampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (CsvFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
