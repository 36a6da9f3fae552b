#!/usr/bin/env python3
"""Histogram of the zero-envy pair fraction across trials, per algorithm.

Usage: python3 figures/envy_hist.py --in epsilon.csv --out fig.png
"""

import argparse
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import fnum, load_rows, print_aggregate

PRICING_MODE = "min-eps-tenant"


def collect_fracs(rows):
    out = defaultdict(list)
    for r in rows:
        if r["pricing_mode"] == PRICING_MODE and r["status"] == "ok" and r["zero_envy_frac"]:
            out[r["algorithm"]].append(fnum(r, "zero_envy_frac"))
    return dict(sorted(out.items()))


def render(in_path: str, out_path: str, title: str) -> dict:
    rows = load_rows(in_path, ["experiment", "algorithm", "pricing_mode", "zero_envy_frac", "status"])
    fracs = collect_fracs(rows)
    if not fracs:
        from common import EmptyDataError

        raise EmptyDataError(f"{in_path}: no rows with a zero-envy fraction")
    fig, ax = plt.subplots(figsize=(7, 4))
    bins = np.linspace(0.0, 1.0, 21)
    for alg, vals in fracs.items():
        ax.hist(vals, bins=bins, alpha=0.6, label=alg)
    ax.set_xlabel("fraction of envy-free ordered tenant pairs")
    ax.set_ylabel("trials")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    means = {alg: float(np.mean(v)) for alg, v in fracs.items()}
    for alg, v in means.items():
        print_aggregate("mean_zero_envy_frac", v, algorithm=alg)
    return means


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="infile", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default="Zero-envy pair fraction")
    args = ap.parse_args(argv)
    render(args.infile, args.out, args.title)
    return 0


if __name__ == "__main__":
    sys.exit(main())
