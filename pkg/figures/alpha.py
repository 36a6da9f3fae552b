#!/usr/bin/env python3
"""Line chart: mean welfare ratio per algorithm as the live-alone bonus
alpha grows.

Usage: python3 figures/alpha.py --in alpha.csv --out fig.png
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
    buckets = defaultdict(list)
    for r in rows:
        if r["algorithm"] in ALGORITHMS and r["ratio_to_opt"]:
            buckets[(r["algorithm"], float(r["alpha"]))].append(fnum(r, "ratio_to_opt"))
    return {k: float(np.mean(v)) for k, v in sorted(buckets.items())}


def render(in_path: str, out_path: str, title: str) -> dict:
    rows = load_rows(in_path, ["experiment", "alpha", "algorithm", "ratio_to_opt"])
    means = compute_means(rows)
    if not means:
        from common import EmptyDataError

        raise EmptyDataError(f"{in_path}: no alpha-sweep rows to plot")
    fig, ax = plt.subplots(figsize=(7, 4))
    for alg in ALGORITHMS:
        pts = sorted((a, v) for (al, a), v in means.items() if al == alg)
        if pts:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=alg)
    ax.set_xlabel("live-alone bonus alpha")
    ax.set_ylabel("mean fraction of optimal welfare")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    for (alg, a), v in means.items():
        print_aggregate("mean_ratio", v, algorithm=alg, alpha=a)
    return means


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="infile", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default="Welfare ratio vs live-alone bonus")
    args = ap.parse_args(argv)
    render(args.infile, args.out, args.title)
    return 0


if __name__ == "__main__":
    sys.exit(main())
