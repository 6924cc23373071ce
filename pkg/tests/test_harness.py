import csv

import numpy as np
import pytest

from dynmopso.cli import main
from dynmopso.harness import (
    REPORT_HEADER,
    SUMMARY_HEADER,
    ConfigError,
    ExperimentConfig,
    cell_seed,
    emit_front_snapshot,
    load_config,
    run_cell,
    run_experiment,
    summarize,
)
from dynmopso.metrics import MetricReport, WindowMetrics
from dynmopso.optimizers.trace import RunTrace, WindowSnapshot

TINY = dict(iterations=20, swarm_size=20, archive_size=10, nsga_population=10, nsga_evaluations=300)


def _report(gd, spread, hv):
    return MetricReport([WindowMetrics(0, 0.0, gd, spread, hv)])


def test_summarize_statistics():
    table = summarize({("fda1", "omopso"): [_report(v, v, v) for v in (1.0, 2.0, 3.0)]})
    row = table.get("fda1", "omopso", "gd")
    assert (row.mean, row.median, row.sd, row.min, row.max) == (2.0, 2.0, 1.0, 1.0, 3.0)
    assert all(r.best for r in table.rows)


def test_summarize_identical_and_best_flags():
    table = summarize({
        ("fda1", "a"): [_report(0.5, 0.1, 0.9)] * 4,
        ("fda1", "b"): [_report(0.7, 0.05, 0.8)] * 4,
        ("fda1", "c"): [],
    })
    assert table.get("fda1", "a", "gd").sd == 0.0
    assert table.get("fda1", "a", "gd").mean == 0.5
    assert table.get("fda1", "a", "gd").best and not table.get("fda1", "b", "gd").best
    assert table.get("fda1", "b", "spread").best
    assert table.get("fda1", "a", "hv").best
    with pytest.raises(KeyError):
        table.get("fda1", "c", "gd")


def test_cell_seed_is_context_free():
    assert cell_seed(0, "omopso", "fda1", 3) == cell_seed(0, "omopso", "fda1", 3)
    seeds = {cell_seed(0, a, p, k) for a in ("x", "y") for p in ("fda1", "dmop3") for k in range(5)}
    assert len(seeds) == 20
    assert 0 <= cell_seed(1, "x", "y", 0) < 2**64


def test_emit_front_snapshot(tmp_path):
    trace = RunTrace("x", "fda1", 0)
    F = np.array([[0.9, 0.1], [0.1, 0.9], [0.5, 0.3]])
    trace.snapshots.append(WindowSnapshot(0, 0.0, np.zeros((3, 2)), F, F))
    path = emit_front_snapshot(trace, 0, tmp_path / "a.txt")
    lines = path.read_text().splitlines()
    assert len(lines) == 3
    assert [float(line.split()[0]) for line in lines] == [0.1, 0.5, 0.9]
    first = path.read_bytes()
    emit_front_snapshot(trace, 0, path)
    assert path.read_bytes() == first
    with pytest.raises(IndexError):
        emit_front_snapshot(trace, 3, tmp_path / "b.txt")


def test_single_cell_outputs(tmp_path):
    config = ExperimentConfig(problems=("fda1",), algorithms=("dynamic-mopso",), runs=1, out=str(tmp_path), **TINY)
    result = run_experiment(config)
    assert result.exit_code == 0
    assert len(list((tmp_path / "reports").glob("*.csv"))) == 1
    assert len(list((tmp_path / "fronts").glob("*.txt"))) == 1
    with open(tmp_path / "summary.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == SUMMARY_HEADER
    assert {(r[0], r[1]) for r in rows[1:]} == {("fda1", "dynamic-mopso")}
    with open(next((tmp_path / "reports").glob("*.csv"))) as fh:
        assert next(csv.reader(fh)) == REPORT_HEADER


def _read_all(root):
    return {p.relative_to(root): p.read_bytes() for p in sorted(root.rglob("*.csv")) + sorted(root.rglob("*.txt"))}


def test_grid_cell_reproducible_in_isolation(tmp_path):
    grid = ExperimentConfig(problems=("fda1", "dmop3"), algorithms=("omopso", "nsga2"), runs=2,
                            out=str(tmp_path / "grid"), **TINY)
    run_experiment(grid)
    single = ExperimentConfig(problems=("dmop3",), algorithms=("nsga2",), runs=2, out=str(tmp_path / "one"), **TINY)
    run_experiment(single)
    name = "reports/dmop3__nsga2__run01.csv"
    assert (tmp_path / "grid" / name).read_bytes() == (tmp_path / "one" / name).read_bytes()


def test_workers_match_sequential(tmp_path):
    base = dict(problems=("fda1",), algorithms=("dynamic-mopso", "omopso"), runs=2, **TINY)
    run_experiment(ExperimentConfig(out=str(tmp_path / "a"), workers=1, **base))
    run_experiment(ExperimentConfig(out=str(tmp_path / "b"), workers=2, **base))
    assert _read_all(tmp_path / "a") == _read_all(tmp_path / "b")


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("# grid\nproblems = fda1, dmop3\nalgorithms = omopso\nruns = 4\nseed_unused_comment = 1\n")
    with pytest.raises(ConfigError):
        load_config(cfg)
    cfg.write_text("problems = fda1, dmop3\nalgorithms = omopso\nruns = 4\n")
    config = load_config(cfg, {"runs": 2, "out": "x"})
    assert config.problems == ("fda1", "dmop3") and config.runs == 2 and config.out == "x"
    assert config.swarm_size == 200 and config.archive_size == 100 and config.iterations == 200
    with pytest.raises(ConfigError):
        load_config(None, {"problems": "fda9"})
    with pytest.raises(ConfigError):
        load_config(None, {"algorithms": "pso"})


def test_run_cell_matches_direct_call():
    config = ExperimentConfig(**TINY)
    a = run_cell(config, "fda1", "omopso", 0)
    b = run_cell(config, "fda1", "omopso", 0)
    assert a.seed == cell_seed(0, "omopso", "fda1", 0)
    assert all(x.f.tobytes() == y.f.tobytes() for x, y in zip(a.snapshots, b.snapshots))


def test_cli_run_metrics_summarize(tmp_path, monkeypatch, capsys):
    out = tmp_path / "res"
    code = main(["run", "--problem", "fda1", "--algorithm", "dynamic-mopso,nsga2", "--runs", "1",
                 "--iterations", "20", "--out", str(out)])
    assert code == 0
    before = (out / "reports" / "fda1__dynamic-mopso__run00.csv").read_bytes()
    summary = (out / "summary.csv").read_bytes()
    (out / "reports" / "fda1__dynamic-mopso__run00.csv").unlink()
    monkeypatch.setenv("DYNMOPSO_OUT", str(out))
    assert main(["metrics"]) == 0
    assert (out / "reports" / "fda1__dynamic-mopso__run00.csv").read_bytes() == before
    assert main(["summarize"]) == 0
    assert (out / "summary.csv").read_bytes() == summary
    assert (out / "hv_curves" / "fda1__nsga2.csv").exists()


def test_cli_config_error_exit_code(tmp_path, capsys):
    assert main(["run", "--problem", "zdt1", "--out", str(tmp_path)]) == 1
    assert "unknown problem" in capsys.readouterr().err
    assert main(["summarize", "--out", str(tmp_path / "missing")]) == 1


def test_partial_failure_exit_code(tmp_path, monkeypatch):
    import dynmopso.harness as harness

    real = harness.run_cell

    def flaky(config, problem_id, algorithm, run):
        if run == 1:
            raise RuntimeError("boom")
        return real(config, problem_id, algorithm, run)

    monkeypatch.setattr(harness, "run_cell", flaky)
    config = ExperimentConfig(problems=("fda1",), algorithms=("omopso",), runs=2, out=str(tmp_path), **TINY)
    result = run_experiment(config)
    assert result.exit_code == 2
    assert "boom" in (tmp_path / "failures.txt").read_text()
    assert len(list((tmp_path / "reports").glob("*.csv"))) == 1
