#!/usr/bin/env python3
"""Mean and variance scaling study for the MST weight.

Samples reps instances at each size, solves each instance once, scores
it at every exponent, and fits log-log slopes.  Writes the per-replicate
records (CSV), the fits (JSON), and a chart (SVG) into --out-dir.

The full defaults (reps=200, n up to 8192) take a few minutes on one
core; shrink --reps or --n-list for a quick look.
"""

import argparse
import os
from pathlib import Path

from locmst.experiments import (
    run_weight_study,
    scaling_experiment,
    variance_experiment,
)
from locmst.io import RunConfig, records_to_csv, scaling_fits_to_json, write_text
from locmst.svg import line_chart


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kind", default="euclidean",
                    choices=["euclidean", "hotspot", "shifted"])
    ap.add_argument("--alphas", default="1,2")
    ap.add_argument("--n-list", default="256,512,1024,2048,4096,8192")
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int,
                    default=int(os.environ.get("LOCMST_THREADS", "0")) or None)
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()

    alphas = tuple(float(a) for a in args.alphas.split(","))
    n_list = tuple(int(n) for n in args.n_list.split(","))
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    study = run_weight_study(
        args.kind, n_list, args.reps, alphas, args.seed, args.threads
    )
    fits = []
    for a in alphas:
        m = scaling_experiment(a, args.kind, n_list, args.reps, args.seed,
                               study=study)
        v = variance_experiment(a, args.kind, n_list, args.reps, args.seed,
                                study=study)
        fits.extend([m, v])
        print(
            f"alpha={a:g}  mean slope {m.slope:+.4f} (expect "
            f"{m.expected_slope:+.2f}, se {m.stderr:.4f}, corridor "
            f"{'ok' if m.in_corridor else 'VIOLATED'})  variance slope "
            f"{v.slope:+.4f} (expect {v.expected_slope:+.2f}, se {v.stderr:.4f})"
        )

    config = RunConfig("run_scaling_study", {
        "kind": args.kind, "alphas": list(alphas), "n_list": list(n_list),
        "reps": args.reps, "seed": args.seed,
    })
    write_text(out / "records.csv", records_to_csv(study.records, config))
    write_text(out / "fits.json", scaling_fits_to_json(fits, config))
    chart = line_chart(
        [
            (f"{f.quantity} alpha={f.alpha:g}", list(f.n_list), list(f.values))
            for f in fits
        ],
        title=f"MST weight scaling ({args.kind})",
        xlabel="n",
        ylabel="weight statistic",
        log_x=True,
        log_y=True,
    )
    write_text(out / "scaling.svg", chart)
    print(f"wrote {out}/records.csv, {out}/fits.json, {out}/scaling.svg")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
