#!/usr/bin/env python3
"""Runtime curve: mean exact-solver wall time against the number of rooms.

Usage: python3 figures/runtime.py --in runtime.csv --out fig.png
"""

import argparse
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import fnum, load_rows, print_aggregate


def compute_means(rows):
    buckets = defaultdict(list)
    for r in rows:
        if r["runtime_ms"]:
            buckets[int(r["n"])].append(fnum(r, "runtime_ms"))
    return {n: float(np.mean(v)) for n, v in sorted(buckets.items())}


def render(in_path: str, out_path: str, title: str) -> dict:
    rows = load_rows(in_path, ["experiment", "n", "runtime_ms"])
    means = compute_means(rows)
    if not means:
        from common import EmptyDataError

        raise EmptyDataError(f"{in_path}: no runtime rows to plot")
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = sorted(means)
    ax.plot(ns, [means[n] for n in ns], marker="o")
    ax.set_yscale("log")
    ax.set_xlabel("rooms n (tenants m = 2n)")
    ax.set_ylabel("mean solve time (ms)")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    for n, v in means.items():
        print_aggregate("mean_runtime_ms", v, n=n)
    return means


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="infile", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default="Exact solver runtime")
    args = ap.parse_args(argv)
    render(args.infile, args.out, args.title)
    return 0


if __name__ == "__main__":
    sys.exit(main())
