#!/usr/bin/env python3
"""Run the full simulation battery and write one CSV per experiment.

Example:
    python3 scripts/run_experiments.py --out results/ --trials 500 --seed 0

Trial counts are per cell (welfare/alpha/epsilon) or per size (runtime).
Use --experiments to run a subset, e.g. --experiments welfare runtime.
"""

import argparse
import sys
import time
from pathlib import Path

from rentdiv import bench


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", required=True, help="output directory for the CSVs")
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument(
        "--experiments",
        nargs="+",
        choices=sorted(bench.EXPERIMENTS),
        default=sorted(bench.EXPERIMENTS),
    )
    ap.add_argument("--dump-instances", action="store_true", help="also dump every generated instance as JSON")
    args = ap.parse_args(argv)

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in args.experiments:
        runner = bench.EXPERIMENTS[name]
        dump = str(outdir / f"instances_{name}") if args.dump_instances else None
        t0 = time.perf_counter()
        rows = runner(args.trials, args.seed, dump_dir=dump)
        path = outdir / f"{name}.csv"
        bench.write_csv(rows, str(path))
        print(f"{name}: {len(rows)} rows -> {path} ({time.perf_counter() - t0:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
