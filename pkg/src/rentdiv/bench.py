"""Instance generation and the simulation experiments behind the CLI.

Reproducibility contract: each trial draws from its own RNG substream.
The substream seed is ``SeedSequence(seed, spawn_key=(m, n, key(alpha), trial))``
folded to a 64-bit integer, where ``key(alpha)`` is the integer
``round(alpha * 10**6)``.  Keying on the instance shape rather than the
experiment name makes trial t of the alpha sweep at alpha=0 identical to
trial t of the welfare experiment on the same (m, n).
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (
    Instance,
    TOLERANCE,
    envy_report,
    instance_to_dict,
    raw_valuation_sum,
    social_welfare,
)
from .enumeration import (
    DEFAULT_CAP,
    EnumerationCapExceeded,
    EnumerationMode,
    brute_force_max_welfare,
    count_assignments_mode,
)
from .greedy import greedy_assign, rematch_rooms
from .mwis import mwis_assign
from .pricing import (
    PricingMode,
    UnboundedEnvyError,
    RefInfeasibleError,
    min_epsilon_prices,
    pef_feasible,
)

CSV_COLUMNS = [
    "experiment",
    "m",
    "n",
    "alpha",
    "trial",
    "algorithm",
    "pricing_mode",
    "raw_welfare",
    "ratio_to_opt",
    "epsilon",
    "zero_envy_frac",
    "runtime_ms",
    "status",
]


@dataclass(frozen=True)
class GeneratorConfig:
    m: int
    n: int
    alpha: float = 0.0
    rent: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (1 <= self.n <= self.m <= 2 * self.n):
            raise ValueError(f"need n <= m <= 2n, got m={self.m}, n={self.n}")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.rent < 0:
            raise ValueError("rent must be >= 0")


@dataclass(frozen=True)
class ExperimentRow:
    experiment: str
    m: int
    n: int
    alpha: float
    trial: int
    algorithm: str
    pricing_mode: str = ""
    raw_welfare: Optional[float] = None
    ratio_to_opt: Optional[float] = None
    epsilon: Optional[float] = None
    zero_envy_frac: Optional[float] = None
    runtime_ms: Optional[float] = None
    status: str = "ok"


def zero_envy_fraction(report) -> float:
    """Fraction of ordered tenant pairs (i, j), i != j, where i does not
    envy j's placement at j's price.  Roommate pairs count as envy-free
    (their factor is fixed at 1)."""
    m = report.pairwise_eps.shape[0]
    if m < 2:
        return 1.0
    off_diag_ok = int(np.sum(report.pairwise_eps <= 1.0)) - m  # diagonal is 1
    return off_diag_ok / (m * (m - 1))


def trial_seed(seed: int, m: int, n: int, alpha: float, trial: int) -> int:
    """64-bit substream seed for one trial (see module docstring)."""
    ss = np.random.SeedSequence(
        entropy=seed, spawn_key=(m, n, int(round(alpha * 10**6)), trial)
    )
    return int(ss.generate_state(1, np.uint64)[0])


def generate_instance(cfg: GeneratorConfig) -> Instance:
    """Uniform(0,1) valuations with ``alpha`` added to every live-alone
    entry; deterministic in cfg.seed."""
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    v = rng.random((cfg.m, cfg.m, cfg.n))
    idx = np.arange(cfg.m)
    v[idx, idx, :] += cfg.alpha
    return Instance(cfg.m, cfg.n, cfg.rent, v)


def _trial_instance(seed: int, m: int, n: int, alpha: float, rent: float, trial: int) -> Instance:
    return generate_instance(
        GeneratorConfig(m, n, alpha, rent, trial_seed(seed, m, n, alpha, trial))
    )


def default_welfare_grid() -> list[tuple[int, int]]:
    return [(m, n) for n in range(2, 5) for m in range(n, 2 * n + 1)]


def _greedy_matching(inst: Instance):
    return rematch_rooms(inst, greedy_assign(inst))


WELFARE_ALGORITHMS = [
    ("greedy", greedy_assign),
    ("greedy-matching", _greedy_matching),
    ("mwis", mwis_assign),
]


def run_welfare_experiment(
    trials: int,
    seed: int,
    grid: Optional[Sequence[tuple[int, int]]] = None,
    rent: float = 0.0,
    cap: int = DEFAULT_CAP,
    dump_dir: Optional[str] = None,
) -> list[ExperimentRow]:
    """Welfare ratios of every algorithm against the brute-force optimum
    over the (m, n) grid."""
    grid = list(grid) if grid is not None else default_welfare_grid()
    rows: list[ExperimentRow] = []
    mode = EnumerationMode(allow_empty_rooms=True)
    for m, n in grid:
        if count_assignments_mode(m, n, mode) > cap:
            rows.append(
                ExperimentRow("welfare", m, n, 0.0, -1, "brute", status="skipped: enumeration cap")
            )
            continue
        for trial in range(trials):
            inst = _trial_instance(seed, m, n, 0.0, rent, trial)
            _dump(dump_dir, "welfare", m, n, 0.0, trial, inst)
            t0 = time.perf_counter()
            opt_a, _ = brute_force_max_welfare(inst, mode)
            brute_ms = (time.perf_counter() - t0) * 1000.0
            opt_raw = raw_valuation_sum(inst, opt_a)
            rows.append(
                ExperimentRow(
                    "welfare", m, n, 0.0, trial, "brute",
                    raw_welfare=opt_raw, ratio_to_opt=1.0, runtime_ms=brute_ms,
                )
            )
            for name, solver in WELFARE_ALGORITHMS:
                t0 = time.perf_counter()
                a = solver(inst)
                ms = (time.perf_counter() - t0) * 1000.0
                raw = raw_valuation_sum(inst, a)
                rows.append(
                    ExperimentRow(
                        "welfare", m, n, 0.0, trial, name,
                        raw_welfare=raw, ratio_to_opt=raw / opt_raw, runtime_ms=ms,
                    )
                )
    return rows


def run_alpha_sweep(
    trials: int,
    seed: int,
    alphas: Sequence[float] = (0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5),
    m: int = 4,
    n: int = 3,
    rent: float = 0.0,
    dump_dir: Optional[str] = None,
) -> list[ExperimentRow]:
    """Welfare ratios on one (m, n) cell as the live-alone bonus grows."""
    rows: list[ExperimentRow] = []
    mode = EnumerationMode(allow_empty_rooms=True)
    for alpha in alphas:
        for trial in range(trials):
            inst = _trial_instance(seed, m, n, alpha, rent, trial)
            _dump(dump_dir, "alpha", m, n, alpha, trial, inst)
            opt_a, _ = brute_force_max_welfare(inst, mode)
            opt_raw = raw_valuation_sum(inst, opt_a)
            for name, solver in WELFARE_ALGORITHMS:
                t0 = time.perf_counter()
                a = solver(inst)
                ms = (time.perf_counter() - t0) * 1000.0
                raw = raw_valuation_sum(inst, a)
                rows.append(
                    ExperimentRow(
                        "alpha", m, n, alpha, trial, name,
                        raw_welfare=raw, ratio_to_opt=raw / opt_raw, runtime_ms=ms,
                    )
                )
    return rows


EPSILON_ALGORITHMS = [
    ("mwis", mwis_assign),
    ("greedy-matching", _greedy_matching),
]

PRICING_MODES = [
    ("min-eps-tenant", PricingMode.TENANT_SHARES),
    ("min-eps-equal", PricingMode.EQUAL_ROOM_SPLIT),
]


def run_epsilon_experiment(
    trials: int,
    seed: int,
    m: int = 6,
    n: int = 3,
    rent: float = 1.0,
    dump_dir: Optional[str] = None,
) -> list[ExperimentRow]:
    """Minimal envy factors and zero-envy tenant fractions for both
    pricing modes on mwis and greedy-matching assignments."""
    rows: list[ExperimentRow] = []
    for trial in range(trials):
        inst = _trial_instance(seed, m, n, 0.0, rent, trial)
        _dump(dump_dir, "epsilon", m, n, 0.0, trial, inst)
        for alg_name, solver in EPSILON_ALGORITHMS:
            a = rematch_rooms(inst, solver(inst))
            raw = raw_valuation_sum(inst, a)
            rows.append(
                ExperimentRow(
                    "epsilon", m, n, 0.0, trial, alg_name, "pef",
                    raw_welfare=raw,
                    status="feasible" if pef_feasible(inst, a) else "infeasible",
                )
            )
            for mode_name, mode in PRICING_MODES:
                t0 = time.perf_counter()
                try:
                    sol = min_epsilon_prices(inst, a, mode)
                except (UnboundedEnvyError, RefInfeasibleError) as exc:
                    rows.append(
                        ExperimentRow(
                            "epsilon", m, n, 0.0, trial, alg_name, mode_name,
                            raw_welfare=raw, status=f"error: {exc}",
                        )
                    )
                    continue
                ms = (time.perf_counter() - t0) * 1000.0
                report = envy_report(inst, a, sol.tenant_prices)
                rows.append(
                    ExperimentRow(
                        "epsilon", m, n, 0.0, trial, alg_name, mode_name,
                        raw_welfare=raw,
                        epsilon=sol.epsilon,
                        zero_envy_frac=zero_envy_fraction(report),
                        runtime_ms=ms,
                    )
                )
    return rows


def run_runtime_experiment(
    trials: int,
    seed: int,
    ns: Sequence[int] = tuple(range(2, 9)),
    rent: float = 0.0,
    timeout_s: float = 300.0,
    dump_dir: Optional[str] = None,
) -> list[ExperimentRow]:
    """Wall time of one mwis solve per trial at m = 2n."""
    rows: list[ExperimentRow] = []
    for n in ns:
        m = 2 * n
        for trial in range(trials):
            inst = _trial_instance(seed, m, n, 0.0, rent, trial)
            _dump(dump_dir, "runtime", m, n, 0.0, trial, inst)
            t0 = time.perf_counter()
            a = mwis_assign(inst)
            ms = (time.perf_counter() - t0) * 1000.0
            rows.append(
                ExperimentRow(
                    "runtime", m, n, 0.0, trial, "mwis",
                    raw_welfare=raw_valuation_sum(inst, a),
                    runtime_ms=ms,
                    status="ok" if ms <= timeout_s * 1000.0 else "timeout",
                )
            )
    return rows


def _dump(dump_dir: Optional[str], experiment: str, m: int, n: int, alpha: float, trial: int, inst: Instance) -> None:
    if dump_dir is None:
        return
    path = Path(dump_dir)
    path.mkdir(parents=True, exist_ok=True)
    name = f"{experiment}_m{m}_n{n}_a{alpha:g}_t{trial}.json"
    (path / name).write_text(json.dumps(instance_to_dict(inst)))


def write_csv(rows: Iterable[ExperimentRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in rows:
            writer.writerow(
                [
                    r.experiment,
                    r.m,
                    r.n,
                    repr(r.alpha),
                    r.trial,
                    r.algorithm,
                    r.pricing_mode,
                    "" if r.raw_welfare is None else repr(r.raw_welfare),
                    "" if r.ratio_to_opt is None else repr(r.ratio_to_opt),
                    "" if r.epsilon is None else repr(r.epsilon),
                    "" if r.zero_envy_frac is None else repr(r.zero_envy_frac),
                    "" if r.runtime_ms is None else f"{r.runtime_ms:.3f}",
                    r.status,
                ]
            )


EXPERIMENTS = {
    "welfare": run_welfare_experiment,
    "alpha": run_alpha_sweep,
    "epsilon": run_epsilon_experiment,
    "runtime": run_runtime_experiment,
}
