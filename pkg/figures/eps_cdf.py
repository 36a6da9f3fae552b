#!/usr/bin/env python3
"""Empirical CDF of the minimal envy factor per algorithm, with
reference lines at factors 4 and 10.

Usage: python3 figures/eps_cdf.py --in epsilon.csv --out fig.png
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
REFERENCE_FACTORS = (4.0, 10.0)


def collect_eps(rows):
    out = defaultdict(list)
    for r in rows:
        if r["pricing_mode"] == PRICING_MODE and r["status"] == "ok" and r["epsilon"]:
            out[r["algorithm"]].append(fnum(r, "epsilon"))
    return {alg: sorted(v) for alg, v in sorted(out.items())}


def render(in_path: str, out_path: str, title: str) -> dict:
    rows = load_rows(in_path, ["experiment", "algorithm", "pricing_mode", "epsilon", "status"])
    eps = collect_eps(rows)
    if not eps:
        from common import EmptyDataError

        raise EmptyDataError(f"{in_path}: no priced rows with mode {PRICING_MODE!r}")
    fig, ax = plt.subplots(figsize=(7, 4))
    fracs = {}
    for alg, vals in eps.items():
        x = np.array(vals)
        y = np.arange(1, len(x) + 1) / len(x)
        ax.step(x, y, where="post", label=alg)
        for t in REFERENCE_FACTORS:
            fracs[(alg, t)] = float(np.mean(x <= t))
    for t in REFERENCE_FACTORS:
        ax.axvline(t, color="grey", linestyle="--", linewidth=0.8)
    ax.set_xlim(1.0, max(12.0, min(50.0, max(max(v) for v in eps.values()))))
    ax.set_xlabel("envy factor")
    ax.set_ylabel("fraction of trials")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    for (alg, t), v in sorted(fracs.items()):
        print_aggregate("frac_at_most", v, algorithm=alg, factor=t)
    return fracs


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="infile", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default="Minimal envy factor CDF")
    args = ap.parse_args(argv)
    render(args.infile, args.out, args.title)
    return 0


if __name__ == "__main__":
    sys.exit(main())
