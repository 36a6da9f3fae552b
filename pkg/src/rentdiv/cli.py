"""Command-line interface: instance generation, solving, pricing, and the
simulation experiments.

Exit codes: 0 success, 2 validation error, 3 solver error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import bench
from .core import (
    Assignment,
    Instance,
    Solution,
    instance_from_dict,
    instance_to_dict,
    social_welfare,
    solution_from_dict,
    solution_to_dict,
    validate_instance,
)
from .enumeration import (
    EnumerationCapExceeded,
    EnumerationMode,
    brute_force_max_welfare,
    count_assignments,
)
from .greedy import greedy_assign, rematch_rooms
from .mwis import mwis_assign
from .pricing import RefInfeasibleError, UnboundedEnvyError, attach_prices

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SOLVER = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_instance(path: str) -> Instance:
    try:
        with open(path) as fh:
            inst = instance_from_dict(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read instance {path}: {exc}", EXIT_VALIDATION)
    err = validate_instance(inst)
    if err is not None:
        raise CliError(f"invalid instance: {err}", EXIT_VALIDATION)
    return inst


def _write_json(data: dict, out: Optional[str]) -> None:
    text = json.dumps(data, indent=2)
    if out is None:
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _cmd_gen(args: argparse.Namespace) -> None:
    try:
        cfg = bench.GeneratorConfig(args.m, args.n, args.alpha, args.rent, args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_VALIDATION)
    inst = bench.generate_instance(cfg)
    _write_json(instance_to_dict(inst), args.out)


def _cmd_solve(args: argparse.Namespace) -> None:
    inst = _load_instance(args.infile)
    try:
        if args.algorithm == "greedy":
            a = greedy_assign(inst)
        elif args.algorithm == "greedy-matching":
            a = rematch_rooms(inst, greedy_assign(inst))
        elif args.algorithm == "mwis":
            a = mwis_assign(inst)
        else:  # brute
            a, _ = brute_force_max_welfare(inst, EnumerationMode(allow_empty_rooms=True))
    except EnumerationCapExceeded as exc:
        raise CliError(str(exc), EXIT_SOLVER)
    sol = Solution(a, None, None, social_welfare(inst, a), None)
    _write_json(solution_to_dict(sol), args.out)


def _cmd_price(args: argparse.Namespace) -> None:
    inst = _load_instance(args.infile)
    try:
        with open(args.solution) as fh:
            sol = solution_from_dict(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read solution {args.solution}: {exc}", EXIT_VALIDATION)
    policy = {"ref": "ref-only", "min-eps-tenant": "min-eps-tenant", "min-eps-equal": "min-eps-equal"}[args.policy]
    try:
        priced = attach_prices(inst, sol.assignment, policy)
    except (RefInfeasibleError, UnboundedEnvyError) as exc:
        raise CliError(f"pricing failed: {exc}", EXIT_SOLVER)
    _write_json(solution_to_dict(priced), args.out)


def _cmd_bench(args: argparse.Namespace) -> None:
    runner = bench.EXPERIMENTS[args.experiment]
    rows = runner(args.trials, args.seed, dump_dir=args.dump_instances)
    bench.write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")


def _cmd_count(args: argparse.Namespace) -> None:
    try:
        print(count_assignments(args.m, args.n))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_VALIDATION)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rentdiv", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--alpha", type=float, default=0.0)
    g.add_argument("--rent", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=_cmd_gen)

    s = sub.add_parser("solve", help="compute an assignment")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument(
        "--algorithm",
        choices=["greedy", "greedy-matching", "mwis", "brute"],
        default="mwis",
    )
    s.add_argument("--out", default=None)
    s.set_defaults(func=_cmd_solve)

    pr = sub.add_parser("price", help="attach prices to a solution")
    pr.add_argument("--in", dest="infile", required=True)
    pr.add_argument("--solution", required=True)
    pr.add_argument(
        "--policy", choices=["ref", "min-eps-tenant", "min-eps-equal"], default="ref"
    )
    pr.add_argument("--out", default=None)
    pr.set_defaults(func=_cmd_price)

    b = sub.add_parser("bench", help="run a simulation experiment to CSV")
    b.add_argument("--experiment", choices=sorted(bench.EXPERIMENTS), required=True)
    b.add_argument("--trials", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    b.add_argument("--dump-instances", default=None)
    b.set_defaults(func=_cmd_bench)

    c = sub.add_parser("count", help="number of assignments with no empty rooms")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=_cmd_count)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
