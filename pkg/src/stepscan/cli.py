"""Command-line front end.

Subcommands: test (fluctuation tests), segment (dating), compare
(several dating methods side by side), synth (benchmark signals).
Reports are JSON documents on stdout or --out; --plot writes plot-ready
CSV. Exit codes: 0 success, 1 data error, 2 usage error. Formats are
documented in docs/formats.md.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from . import __version__
from .dating import build_rss_triangle, fitted_step, select_breaks_bic
from .edivisive import EdivConfig, e_divisive
from .fluctuation import (
    REC_CUSUM_LAMBDA,
    FluctuationProcess,
    build_process,
    brownian_bridge_sup_quantile,
    long_run_variance,
    mosum_process,
    plain_variance,
    sup_abs_test,
)
from .series import DataError, Segmentation, TimeSeries, UnsupportedError, deflate, log_transform, returns
from .seriesio import CsvSpec, monthly_to_quarterly, read_csv
from .synth import make_step_signal
from .wbs import WbsConfig, wbs_segment

SCHEMA_VERSION = 1


class _TransformAction(argparse.Action):
    """Collects --log/--deflate/--returns/--quarterly in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        chain = getattr(namespace, "transforms", None)
        if chain is None:
            chain = []
            namespace.transforms = chain
        tag = option_string.lstrip("-")
        chain.append((tag,) if values in (None, []) else (tag, values))


def _min_seg_arg(text: str) -> str:
    """Validate --min-seg format early; resolution needs the series length."""
    body = text.strip().removesuffix("%")
    try:
        float(body) if text.strip().endswith("%") else int(body)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a count or a percentage like '10%', got {text!r}") from None
    return text


def _lrv_bandwidth_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected an integer lag or 'auto', got {text!r}") from None


def _add_common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        p.add_argument("input", help="series CSV (DATE column plus a value column)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--plot", help="write plot-ready CSV here")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    p.add_argument("--log", nargs=0, action=_TransformAction,
                   help="transform: natural log")
    p.add_argument("--deflate", metavar="CSV", action=_TransformAction,
                   help="transform: divide by this deflator series")
    p.add_argument("--returns", choices=["abs", "log"], action=_TransformAction,
                   help="transform: log returns or absolute log returns")
    p.add_argument("--quarterly", choices=["mean", "last"], action=_TransformAction,
                   help="transform: aggregate a monthly series to quarters")
    p.add_argument("--deflate-base", type=int, default=None, metavar="YEAR",
                   help="base year for --deflate (default: first aligned period)")
    p.set_defaults(transforms=None)


def _parse_min_seg(text: str | None, n: int, default: int) -> int:
    if text is None:
        return default
    text = text.strip()
    if text.endswith("%"):
        return int(float(text[:-1]) / 100.0 * n)
    return int(text)


def _apply_transforms(series: TimeSeries, args) -> tuple[TimeSeries, list[list]]:
    chain = args.transforms or []
    applied: list[list] = []
    for step in chain:
        if step[0] == "log":
            series = log_transform(series)
            applied.append(["log"])
        elif step[0] == "deflate":
            deflator = read_csv(step[1], CsvSpec())
            base = args.deflate_base
            series = deflate(series, deflator, base=base)
            applied.append(["deflate", step[1], base])
        elif step[0] == "returns":
            kind = "abs_log_return" if step[1] == "abs" else "log_return"
            series = returns(series, kind)
            applied.append(["returns", step[1]])
        elif step[0] == "quarterly":
            series = monthly_to_quarterly(series, how=step[1])
            applied.append(["quarterly", step[1]])
    return series, applied


def _input_block(path: str, series: TimeSeries, applied: list[list]) -> dict:
    return {
        "path": path,
        "transforms": applied,
        "n": series.n,
        "start": series.period_label(1),
        "end": series.period_label(series.n),
        "label": series.label,
    }


def _report(input_block: dict | None, method: str, config: dict, results: dict) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "tool": {"name": "stepscan", "version": __version__},
        "method": method,
        "config": config,
        "results": results,
    }
    if input_block is not None:
        doc["input"] = input_block
    return doc


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finite(x: float | None) -> float | str | None:
    if x is None:
        return None
    if x == float("-inf"):
        return "-inf"
    if x == float("inf"):
        return "inf"
    return x


def _segmentation_results(series: TimeSeries, seg: Segmentation) -> dict:
    return {
        "num_breaks": seg.num_breaks,
        "breaks": [{"index": b, "label": series.period_label(b)} for b in seg.breaks],
        "segment_means": list(seg.segment_means),
        "rss": seg.rss_total,
        "min_len": seg.min_len,
        "criterion_trace": [[k, _finite(v)] for k, v in (seg.criterion_trace or ())],
    }


def _variance_block(v) -> dict:
    return {"value": v.value, "kind": v.kind, "kernel": v.kernel,
            "bandwidth": v.bandwidth, "clamped": v.clamped}


def _write_plot(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def cmd_test(args) -> int:
    series = read_csv(args.input, CsvSpec())
    series, applied = _apply_transforms(series, args)
    if args.variance == "long-run":
        scale = long_run_variance(series, args.lrv_bandwidth)
    else:
        scale = plain_variance(series)

    kind = args.method.replace("-", "_")
    process: FluctuationProcess
    if kind == "mosum":
        process = mosum_process(series, args.mosum_bandwidth, scale)
    else:
        process = build_process(series, kind, scale)
    result = sup_abs_test(process, level=args.level, critical=args.critical)

    config = {
        "method": args.method,
        "level": args.level,
        "variance": args.variance,
        "lrv_bandwidth": args.lrv_bandwidth if args.variance == "long-run" else None,
        "mosum_bandwidth": args.mosum_bandwidth if kind == "mosum" else None,
        "critical": args.critical,
        "seed": args.seed,
    }
    results = {
        "kind": process.kind,
        "statistic": result.statistic,
        "p_value": result.p_value,
        "crossed": result.crossed,
        "boundary": result.boundary,
        "level": result.level,
        "variance": _variance_block(scale),
    }
    _emit(_report(_input_block(args.input, series, applied), args.method, config, results),
          args.out)

    if args.plot:
        t = process.times
        if process.kind == "ols_cusum":
            c = brownian_bridge_sup_quantile(args.level)
            upper = np.full_like(t, c)
        elif process.kind == "rec_cusum":
            lam = REC_CUSUM_LAMBDA[args.level]
            upper = lam * (1.0 + 2.0 * t)
        else:
            upper = np.full_like(t, float(args.critical))
        rows = zip(t.tolist(), process.path.tolist(), upper.tolist(), (-upper).tolist())
        _write_plot(args.plot, ["t", "process", "boundary_upper", "boundary_lower"], rows)
    return 0


def _run_one_method(series: TimeSeries, method: str, args) -> tuple[Segmentation, dict]:
    n = series.n
    if method == "dp":
        min_len = _parse_min_seg(args.min_seg, n, default=max(1, int(0.15 * n)))
        feasible = n // min_len - 1
        max_m = args.max_breaks if args.max_breaks is not None else min(5, feasible)
        tri = build_rss_triangle(series, min_len)
        seg = select_breaks_bic(tri, max_m)
        config = {"method": "dp", "min_len": min_len, "max_breaks": max_m,
                  "seed": args.seed}
    elif method == "wbs":
        min_len = _parse_min_seg(args.min_seg, n, default=2)
        cfg = WbsConfig(num_intervals=args.intervals,
                        threshold_constant=args.threshold_c,
                        max_breaks=args.max_breaks, seed=args.seed,
                        min_len=max(2, min_len))
        seg = wbs_segment(series, cfg)
        config = {"method": "wbs", "num_intervals": cfg.num_intervals,
                  "threshold_constant": cfg.threshold_constant,
                  "max_breaks": cfg.max_breaks, "min_len": cfg.min_len,
                  "seed": cfg.seed}
    elif method == "edivisive":
        min_size = _parse_min_seg(args.min_seg, n, default=30)
        cfg = EdivConfig(min_size=min_size, alpha=args.alpha,
                         sig_level=args.level,
                         num_permutations=args.permutations,
                         seed=args.seed, max_breaks=args.max_breaks)
        seg = e_divisive(series, cfg)
        config = {"method": "edivisive", "min_size": cfg.min_size,
                  "alpha": cfg.alpha, "sig_level": cfg.sig_level,
                  "num_permutations": cfg.num_permutations,
                  "max_breaks": cfg.max_breaks, "seed": cfg.seed}
    else:
        raise UnsupportedError(f"unknown segmentation method {method!r}")
    return seg, config


def cmd_segment(args) -> int:
    series = read_csv(args.input, CsvSpec())
    series, applied = _apply_transforms(series, args)
    seg, config = _run_one_method(series, args.method, args)
    results = _segmentation_results(series, seg)
    _emit(_report(_input_block(args.input, series, applied), args.method, config, results),
          args.out)
    if args.plot:
        fit = fitted_step(series, seg)
        rows = ((series.period_date(i).isoformat(), repr(float(series.values[i - 1])),
                 repr(float(fit.values[i - 1]))) for i in range(1, series.n + 1))
        _write_plot(args.plot, ["date", "value", "fitted"], rows)
    return 0


def _nearest_distances(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    if not a or not b:
        return []
    return [min(abs(x - y) for y in b) for x in a]


def cmd_compare(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if len(methods) < 2:
        raise UnsupportedError("compare needs at least two methods, e.g. --methods dp,edivisive")
    series = read_csv(args.input, CsvSpec())
    series, applied = _apply_transforms(series, args)

    runs: dict[str, tuple[Segmentation, dict]] = {}
    for m in methods:
        if m in runs:
            raise UnsupportedError(f"method {m!r} listed twice")
        runs[m] = _run_one_method(series, m, args)

    pairwise = []
    for i, ma in enumerate(methods):
        for mb in methods[i + 1 :]:
            ba = runs[ma][0].breaks
            bb = runs[mb][0].breaks
            d_ab = _nearest_distances(ba, bb)
            d_ba = _nearest_distances(bb, ba)
            matches = [
                {"a_label": series.period_label(x), "a_index": x,
                 "b_label": series.period_label(min(bb, key=lambda y: abs(x - y))),
                 "b_index": min(bb, key=lambda y: abs(x - y)),
                 "distance": d}
                for x, d in zip(ba, d_ab)
            ] if bb else []
            pairwise.append({
                "a": ma, "b": mb,
                "max_nearest_distance": max(d_ab + d_ba) if d_ab + d_ba else None,
                "matches": matches,
            })

    config = {m: runs[m][1] for m in methods}
    results = {
        "methods": {m: _segmentation_results(series, runs[m][0]) for m in methods},
        "pairwise": pairwise,
    }
    _emit(_report(_input_block(args.input, series, applied), "compare", config, results),
          args.out)
    if args.plot:
        fits = {m: fitted_step(series, runs[m][0]) for m in methods}
        header = ["date", "value"] + [f"fitted_{m}" for m in methods]
        rows = (
            [series.period_date(i).isoformat(), repr(float(series.values[i - 1]))]
            + [repr(float(fits[m].values[i - 1])) for m in methods]
            for i in range(1, series.n + 1)
        )
        _write_plot(args.plot, header, rows)
    return 0


def cmd_synth(args) -> int:
    try:
        means = [float(x) for x in args.means.split(",")]
        lengths = [int(x) for x in args.lengths.split(",")]
        series, true_breaks = make_step_signal(
            means, lengths, noise=args.noise, sigma=args.sigma, rho=args.rho,
            seed=args.seed)
    except ValueError as exc:
        raise UnsupportedError(f"invalid signal spec: {exc}") from None

    lines = ["DATE,value"]
    lines += [f"{series.period_date(i).isoformat()},{float(series.values[i - 1])!r}"
              for i in range(1, series.n + 1)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.truth:
        rows = [(b, series.period_date(b).isoformat()) for b in true_breaks]
        _write_plot(args.truth, ["break_index", "break_date"], rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stepscan",
        description="Level-shift tests and dating for univariate time series.")
    parser.add_argument("--version", action="version", version=f"stepscan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="fluctuation test for a constant level")
    _add_common(p_test)
    p_test.add_argument("--method", choices=["rec-cusum", "ols-cusum", "mosum"],
                        default="ols-cusum")
    p_test.add_argument("--level", type=float, default=0.05)
    p_test.add_argument("--variance", choices=["plain", "long-run"], default="plain")
    p_test.add_argument("--lrv-bandwidth", type=_lrv_bandwidth_arg, default="auto",
                        help="Bartlett lag for --variance long-run (int or 'auto')")
    p_test.add_argument("--mosum-bandwidth", type=float, default=0.15,
                        help="MOSUM window as a fraction of the sample")
    p_test.add_argument("--critical", type=float, default=None,
                        help="critical value for the MOSUM crossing check")
    p_test.set_defaults(func=cmd_test)

    p_seg = sub.add_parser("segment", help="date level shifts")
    _add_common(p_seg)
    p_seg.add_argument("--method", choices=["dp", "wbs", "edivisive"], required=True)
    p_seg.add_argument("--min-seg", type=_min_seg_arg, default=None,
                       help="minimal segment length, a count or a percentage like '10%%'")
    p_seg.add_argument("--max-breaks", type=int, default=None)
    p_seg.add_argument("--level", type=float, default=0.05,
                       help="significance level for edivisive stopping")
    p_seg.add_argument("--alpha", type=float, default=1.0,
                       help="edivisive distance exponent (2 = mean changes only)")
    p_seg.add_argument("--permutations", type=int, default=199)
    p_seg.add_argument("--intervals", type=int, default=5000)
    p_seg.add_argument("--threshold-c", type=float, default=1.3)
    p_seg.set_defaults(func=cmd_segment)

    p_cmp = sub.add_parser("compare", help="run several dating methods side by side")
    _add_common(p_cmp)
    p_cmp.add_argument("--methods", required=True,
                       help="comma-separated list, e.g. dp,edivisive,wbs")
    p_cmp.add_argument("--min-seg", type=_min_seg_arg, default=None)
    p_cmp.add_argument("--max-breaks", type=int, default=None)
    p_cmp.add_argument("--level", type=float, default=0.05)
    p_cmp.add_argument("--alpha", type=float, default=1.0)
    p_cmp.add_argument("--permutations", type=int, default=199)
    p_cmp.add_argument("--intervals", type=int, default=5000)
    p_cmp.add_argument("--threshold-c", type=float, default=1.3)
    p_cmp.set_defaults(func=cmd_compare)

    p_syn = sub.add_parser("synth", help="generate a benchmark step signal")
    _add_common(p_syn, with_input=False)
    p_syn.add_argument("--means", required=True, help="comma-separated segment means")
    p_syn.add_argument("--lengths", required=True, help="comma-separated segment lengths")
    p_syn.add_argument("--noise", choices=["gaussian", "ar1"], default="gaussian")
    p_syn.add_argument("--sigma", type=float, default=1.0)
    p_syn.add_argument("--rho", type=float, default=0.5)
    p_syn.add_argument("--truth", help="write true break indices to this CSV")
    p_syn.set_defaults(func=cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except UnsupportedError as exc:
        print(f"stepscan: {exc}", file=sys.stderr)
        return 2
    except (DataError, ValueError, OSError) as exc:
        print(f"stepscan: {exc}", file=sys.stderr)
        return 1
    print(f"stepscan: completed in {(time.perf_counter() - started) * 1e3:.1f} ms",
          file=sys.stderr)
    return code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
