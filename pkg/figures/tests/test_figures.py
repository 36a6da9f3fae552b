import csv
import subprocess
import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[2]
FIGURES = REPO / "figures"

sys.path.insert(0, str(REPO / "src"))

from rentdiv import bench  # noqa: E402


@pytest.fixture(scope="session")
def csvs(tmp_path_factory):
    """Small but real experiment CSVs, one per experiment."""
    d = tmp_path_factory.mktemp("csvs")
    bench.write_csv(
        bench.run_welfare_experiment(trials=3, seed=0, grid=[(3, 2), (4, 2)]),
        str(d / "welfare.csv"),
    )
    bench.write_csv(
        bench.run_alpha_sweep(trials=2, seed=0, alphas=(0.0, 0.5)), str(d / "alpha.csv")
    )
    bench.write_csv(bench.run_epsilon_experiment(trials=3, seed=0), str(d / "epsilon.csv"))
    bench.write_csv(
        bench.run_runtime_experiment(trials=2, seed=0, ns=(2, 3, 4)), str(d / "runtime.csv")
    )
    return d


def run_script(name, in_path, out_path, expect_ok=True):
    proc = subprocess.run(
        [sys.executable, str(FIGURES / f"{name}.py"), "--in", str(in_path), "--out", str(out_path)],
        capture_output=True,
        text=True,
    )
    if expect_ok:
        assert proc.returncode == 0, proc.stderr
    return proc


def parse_aggregates(stdout):
    """Printed lines look like 'name k=v k=v <repr float>'."""
    out = {}
    for line in stdout.strip().splitlines():
        parts = line.split()
        name, value = parts[0], float(parts[-1])
        labels = tuple(parts[1:-1])
        out[(name,) + labels] = value
    return out


def mean(xs):
    return sum(xs) / len(xs)


CASES = [
    ("welfare", "welfare.csv"),
    ("alpha", "alpha.csv"),
    ("runtime", "runtime.csv"),
    ("eps_cdf", "epsilon.csv"),
    ("envy_hist", "epsilon.csv"),
]


@pytest.mark.parametrize("script,source", CASES)
def test_renders_nonempty_image(csvs, tmp_path, script, source):
    out = tmp_path / f"{script}.png"
    proc = run_script(script, csvs / source, out)
    assert out.exists() and out.stat().st_size > 1000
    assert proc.stdout.strip()  # aggregates were printed


def test_welfare_aggregates_match_recomputation(csvs, tmp_path):
    proc = run_script("welfare", csvs / "welfare.csv", tmp_path / "w.png")
    got = parse_aggregates(proc.stdout)
    with open(csvs / "welfare.csv") as fh:
        rows = list(csv.DictReader(fh))
    for alg in ("greedy", "greedy-matching", "mwis"):
        for m, n in ((3, 2), (4, 2)):
            vals = [
                float(r["ratio_to_opt"])
                for r in rows
                if r["algorithm"] == alg and int(r["m"]) == m and int(r["n"]) == n
            ]
            key = ("mean_ratio", f"algorithm={alg}", f"m={m}", f"n={n}")
            assert abs(got[key] - mean(vals)) < 1e-9


def test_eps_cdf_aggregates_match_recomputation(csvs, tmp_path):
    proc = run_script("eps_cdf", csvs / "epsilon.csv", tmp_path / "e.png")
    got = parse_aggregates(proc.stdout)
    with open(csvs / "epsilon.csv") as fh:
        rows = list(csv.DictReader(fh))
    for alg in ("mwis", "greedy-matching"):
        eps = [
            float(r["epsilon"])
            for r in rows
            if r["algorithm"] == alg and r["pricing_mode"] == "min-eps-tenant" and r["status"] == "ok"
        ]
        for t in (4.0, 10.0):
            frac = mean([1.0 if e <= t else 0.0 for e in eps])
            assert abs(got[("frac_at_most", f"algorithm={alg}", f"factor={t}")] - frac) < 1e-9


def test_envy_hist_aggregates_match_recomputation(csvs, tmp_path):
    proc = run_script("envy_hist", csvs / "epsilon.csv", tmp_path / "h.png")
    got = parse_aggregates(proc.stdout)
    with open(csvs / "epsilon.csv") as fh:
        rows = list(csv.DictReader(fh))
    for alg in ("mwis", "greedy-matching"):
        fr = [
            float(r["zero_envy_frac"])
            for r in rows
            if r["algorithm"] == alg and r["pricing_mode"] == "min-eps-tenant" and r["status"] == "ok"
        ]
        assert abs(got[("mean_zero_envy_frac", f"algorithm={alg}")] - mean(fr)) < 1e-9


def test_runtime_and_alpha_aggregates_match(csvs, tmp_path):
    proc = run_script("runtime", csvs / "runtime.csv", tmp_path / "r.png")
    got = parse_aggregates(proc.stdout)
    with open(csvs / "runtime.csv") as fh:
        rows = list(csv.DictReader(fh))
    for n in (2, 3, 4):
        vals = [float(r["runtime_ms"]) for r in rows if int(r["n"]) == n]
        assert abs(got[("mean_runtime_ms", f"n={n}")] - mean(vals)) < 1e-9

    proc = run_script("alpha", csvs / "alpha.csv", tmp_path / "a.png")
    got = parse_aggregates(proc.stdout)
    with open(csvs / "alpha.csv") as fh:
        rows = list(csv.DictReader(fh))
    for alpha in ("0.0", "0.5"):
        vals = [float(r["ratio_to_opt"]) for r in rows if r["alpha"] == alpha and r["algorithm"] == "mwis"]
        assert abs(got[("mean_ratio", "algorithm=mwis", f"alpha={float(alpha)}")] - mean(vals)) < 1e-9


def test_missing_column_is_named(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("experiment,m,n,algorithm\nwelfare,3,2,greedy\n")
    out = tmp_path / "x.png"
    proc = run_script("welfare", bad, out, expect_ok=False)
    assert proc.returncode != 0
    assert "ratio_to_opt" in proc.stderr
    assert not out.exists()


def test_empty_data_is_an_error(tmp_path):
    from rentdiv.bench import CSV_COLUMNS

    empty = tmp_path / "empty.csv"
    empty.write_text(",".join(CSV_COLUMNS) + "\n")
    out = tmp_path / "x.png"
    proc = run_script("eps_cdf", empty, out, expect_ok=False)
    assert proc.returncode != 0
    assert "no data rows" in proc.stderr
    assert not out.exists()
