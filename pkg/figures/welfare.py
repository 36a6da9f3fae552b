#!/usr/bin/env python3
"""Grouped bar chart: mean welfare ratio per algorithm per (m, n) cell.

Usage: python3 figures/welfare.py --in welfare.csv --out fig.png
"""

import argparse
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import fnum, load_rows, print_aggregate

ALGORITHMS = ["greedy", "greedy-matching", "mwis"]


def compute_means(rows):
    """Mean ratio_to_opt keyed by (algorithm, m, n), skipping rows with
    no ratio (skipped cells)."""
    buckets = defaultdict(list)
    for r in rows:
        if r["algorithm"] in ALGORITHMS and r["ratio_to_opt"]:
            buckets[(r["algorithm"], int(r["m"]), int(r["n"]))].append(
                fnum(r, "ratio_to_opt")
            )
    return {k: float(np.mean(v)) for k, v in sorted(buckets.items())}


def render(in_path: str, out_path: str, title: str) -> dict:
    rows = load_rows(in_path, ["experiment", "m", "n", "algorithm", "ratio_to_opt"])
    means = compute_means(rows)
    if not means:
        from common import EmptyDataError

        raise EmptyDataError(f"{in_path}: no welfare rows to plot")
    cells = sorted({(m, n) for _, m, n in means})
    x = np.arange(len(cells))
    width = 0.8 / len(ALGORITHMS)
    fig, ax = plt.subplots(figsize=(9, 4))
    for k, alg in enumerate(ALGORITHMS):
        vals = [means.get((alg, m, n), np.nan) for m, n in cells]
        ax.bar(x + (k - 1) * width, vals, width, label=alg)
    ax.set_xticks(x)
    ax.set_xticklabels([f"({m},{n})" for m, n in cells], rotation=45)
    ax.set_ylabel("mean fraction of optimal welfare")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    for (alg, m, n), v in means.items():
        print_aggregate("mean_ratio", v, algorithm=alg, m=m, n=n)
    return means


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="infile", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default="Welfare relative to exhaustive optimum")
    args = ap.parse_args(argv)
    render(args.infile, args.out, args.title)
    return 0


if __name__ == "__main__":
    sys.exit(main())
