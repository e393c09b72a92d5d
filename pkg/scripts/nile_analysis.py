#!/usr/bin/env python3
"""Level-stability analysis of the Nile flow series.

Runs the OLS-CUSUM significance test, dates the level shift by
dynamic programming with BIC model selection, and contrasts the
two-regime step fit with a constant-level AR(1) fit whose
autocorrelation turns out to be an artifact of the ignored shift.

Usage: python3 scripts/nile_analysis.py [--plot-dir DIR]
"""

from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import stepscan as ss


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--plot-dir", default=None,
                        help="write plot-ready CSVs into this directory")
    args = parser.parse_args()

    root = pathlib.Path(__file__).resolve().parent.parent
    nile = ss.read_csv(str(root / "fixtures" / "nile.csv"))
    print(f"series: {nile.label or 'nile'}, T={nile.n}, "
          f"{nile.period_label(1)}..{nile.period_label(nile.n)}")

    process = ss.build_process(nile, "ols_cusum")
    result = ss.sup_abs_test(process, level=0.05)
    print(f"\nOLS-CUSUM: statistic={result.statistic:.4f} "
          f"p={result.p_value:.2e} crossed={result.crossed}")
    print(f"  boundary: {result.boundary}")

    rec = ss.sup_abs_test(ss.build_process(nile, "rec_cusum"), level=0.05)
    print(f"Rec-CUSUM: statistic={rec.statistic:.4f} "
          f"p={rec.p_value:.2e} crossed={rec.crossed}")

    tri = ss.build_rss_triangle(nile, 15)
    seg = ss.select_breaks_bic(tri, 5)
    print(f"\ndating (min_len=15, BIC over m=0..5): m={seg.num_breaks}")
    for b in seg.breaks:
        print(f"  break at {nile.period_label(b)} (observation {b})")
    print(f"  segment means: {[round(m, 1) for m in seg.segment_means]}")
    print("  BIC trace:", [(int(m), round(v, 1)) for m, v in seg.criterion_trace])

    intercept, rho = ss.fit_ar1(nile)
    print(f"\nconstant-level AR(1) fit: rho={rho:.3f} (intercept {intercept:.1f})")
    print("  after modelling the break, this persistence is spurious:")
    fit = ss.fitted_step(nile, seg)
    resid = nile.values - fit.values
    _, rho_resid = ss.fit_ar1(nile.with_values(resid))
    print(f"  AR(1) of the step-fit residuals: rho={rho_resid:.3f}")

    if args.plot_dir:
        out = pathlib.Path(args.plot_dir)
        out.mkdir(parents=True, exist_ok=True)
        ss.write_csv(fit, str(out / "nile_step_fit.csv"))
        ss.write_csv(nile, str(out / "nile_raw.csv"))
        print(f"\nwrote plot data to {out}")


if __name__ == "__main__":
    main()
