#!/usr/bin/env python3
"""Recompute the envelope constants for the standard parameter sets.

Prints beta_low / beta_up with their optimizing tile sides and, with
--plot, writes an SVG sweep of both constants over a grid of exponents.
"""

import argparse

from locmst.bounds import compute_bounds
from locmst.io import RunConfig, bounds_to_json, write_text
from locmst.svg import line_chart

CASES = [
    (1.0, 1.0, 1.0),
    (2.0, 1.0, 1.0),
    (1.0, 0.5, 7.0 / 6.0),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", help="write the standard cases as JSON")
    ap.add_argument("--plot", help="write an SVG sweep over alpha")
    ap.add_argument("--grid", default="0.25:3.0:0.25",
                    help="alpha sweep for --plot as lo:hi:step")
    args = ap.parse_args()

    results = []
    for alpha, eps1, eps2 in CASES:
        r = compute_bounds(alpha, eps1, eps2)
        results.append(r)
        print(
            f"alpha={alpha:g} eps1={eps1:g} eps2={eps2:.6g}  "
            f"beta_low={r.beta_low:.8g} at A={r.A_low:.6g}  "
            f"beta_up={r.beta_up:.8g} at A={r.A_up:.6g}"
        )
    config = RunConfig("reproduce_bounds", {"cases": [list(c) for c in CASES]})
    if args.out:
        write_text(args.out, bounds_to_json(results, config))
        print(f"wrote {args.out}")
    if args.plot:
        lo, hi, step = (float(x) for x in args.grid.split(":"))
        alphas = []
        a = lo
        while a <= hi + 1e-9:
            alphas.append(round(a, 10))
            a += step
        sweep = [compute_bounds(al, 1.0, 1.0) for al in alphas]
        chart = line_chart(
            [
                ("beta_low", alphas, [r.beta_low for r in sweep]),
                ("beta_up", alphas, [r.beta_up for r in sweep]),
            ],
            title="Envelope constants, uniform density",
            xlabel="alpha",
            ylabel="beta",
            log_y=True,
        )
        write_text(args.plot, chart)
        print(f"wrote {args.plot}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
