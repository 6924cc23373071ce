"""Experiment grid runner: problems x algorithms x independent runs.

Every cell ``(problem, algorithm, run)`` derives its own seed from the base
seed and its coordinates, so any cell can be re-run alone and reproduce the
bytes it wrote as part of the full grid.

Output layout under ``out``::

    reports/<problem>__<algorithm>__run<k>.csv   window,t,gd,spread,hv
    fronts/<problem>__<algorithm>__run<k>.txt    final-window front, "f1 f2" per line
    traces/<problem>__<algorithm>__run<k>.npz    window snapshots for `metrics`
    hv_curves/<problem>__<algorithm>.csv         per-window HV across runs
    summary.csv                                  problem,algorithm,metric,mean,median,sd,min,max,best
"""

from __future__ import annotations

import csv
import hashlib
import logging
import re
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .benchmarks import BENCHMARK_IDS, BenchmarkSpec, make_problem
from .metrics import METRIC_NAMES, MetricReport, WindowMetrics, report
from .optimizers import ALGORITHM_IDS, NSGA2Config, OptimizerConfig, RunTrace, run_dynamic_mopso, run_nsga2, run_omopso

log = logging.getLogger(__name__)

REPORT_HEADER = ["window", "t", "gd", "spread", "hv"]
SUMMARY_HEADER = ["problem", "algorithm", "metric", "mean", "median", "sd", "min", "max", "best"]
HV_CURVE_HEADER = ["window", "t", "mean", "median", "min", "max"]
OUT_ENV = "DYNMOPSO_OUT"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    problems: tuple[str, ...] = BENCHMARK_IDS
    algorithms: tuple[str, ...] = ALGORITHM_IDS
    runs: int = 30
    base_seed: int = 0
    iterations: int = 200
    severity: int = 10
    frequency: int = 10
    swarm_size: int = 200
    archive_size: int = 100
    dimension: int = 10
    nsga_population: int = 100
    nsga_evaluations: int = 25_000
    workers: int = 1
    out: str = "results"

    def validate(self) -> None:
        unknown = [p for p in self.problems if p not in BENCHMARK_IDS]
        if unknown:
            raise ConfigError(f"unknown problem id(s) {unknown}; expected {list(BENCHMARK_IDS)}")
        unknown = [a for a in self.algorithms if a not in ALGORITHM_IDS]
        if unknown:
            raise ConfigError(f"unknown algorithm id(s) {unknown}; expected {list(ALGORITHM_IDS)}")
        if not self.problems or not self.algorithms:
            raise ConfigError("at least one problem and one algorithm are required")
        for name in ("runs", "iterations", "severity", "frequency", "swarm_size",
                     "archive_size", "nsga_population", "nsga_evaluations", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.dimension < 2:
            raise ConfigError("dimension must be at least 2")
        try:
            self.pso_config(0)
            self.nsga_config(0)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def pso_config(self, seed: int) -> OptimizerConfig:
        return OptimizerConfig(
            swarm_size=self.swarm_size,
            archive_capacity=self.archive_size,
            max_iterations=self.iterations,
            severity=self.severity,
            frequency=self.frequency,
            seed=seed,
        )

    def nsga_config(self, seed: int) -> NSGA2Config:
        return NSGA2Config(
            population=self.nsga_population,
            evaluations=self.nsga_evaluations,
            max_iterations=self.iterations,
            severity=self.severity,
            frequency=self.frequency,
            seed=seed,
        )


def _coerce(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(ExperimentConfig)}
    if name not in kinds:
        raise ConfigError(f"unknown config key {name!r}")
    kind = kinds[name]
    if "tuple" in str(kind):
        return tuple(s.strip().lower() for s in raw.split(",") if s.strip())
    if kind in ("int", int):
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"{name} expects an integer, got {raw!r}") from exc
    return raw.strip()


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Read a flat ``key = value`` file, then apply overrides (CLI flags)."""
    values: dict = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            m = re.fullmatch(r"([A-Za-z_]+)\s*[=:]\s*(.*)", line)
            if not m:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key = m.group(1).lower()
            values[key] = _coerce(key, m.group(2))
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        values[key] = _coerce(key, value) if isinstance(value, str) else value
    config = replace(ExperimentConfig(), **values)
    config.validate()
    return config


def cell_seed(base_seed: int, algorithm: str, problem: str, run: int) -> int:
    """64-bit seed that depends only on the cell coordinates."""
    digest = hashlib.sha256(f"{base_seed}|{algorithm}|{problem}|{run}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def cell_name(problem: str, algorithm: str, run: int) -> str:
    return f"{problem}__{algorithm}__run{run:02d}"


def run_cell(config: ExperimentConfig, problem_id: str, algorithm: str, run: int) -> RunTrace:
    seed = cell_seed(config.base_seed, algorithm, problem_id, run)
    problem = make_problem(BenchmarkSpec(problem_id, config.dimension), seed=seed)
    if algorithm == "dynamic-mopso":
        return run_dynamic_mopso(problem, config.pso_config(seed))
    if algorithm == "omopso":
        return run_omopso(problem, config.pso_config(seed))
    if algorithm == "nsga2":
        return run_nsga2(problem, config.nsga_config(seed))
    raise ConfigError(f"unknown algorithm {algorithm!r}")


def _fmt(value: float) -> str:
    return repr(float(value))


def write_report(rep: MetricReport, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_HEADER)
        for r in rep.rows:
            writer.writerow([r.window, _fmt(r.t), _fmt(r.gd), _fmt(r.spread), _fmt(r.hv)])


def read_report(path: Path) -> MetricReport:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != REPORT_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return MetricReport([
            WindowMetrics(int(row["window"]), float(row["t"]), float(row["gd"]),
                          float(row["spread"]), float(row["hv"]))
            for row in reader
        ])


def emit_front_snapshot(trace: RunTrace, window: int, path: str | Path) -> Path:
    """Write one window's front as ``f1 f2`` lines sorted by f1.

    Negative ``window`` counts from the end, so ``-1`` is the final window.
    """
    n = len(trace.snapshots)
    if not -n <= window < n:
        raise IndexError(f"window {window} outside 0..{n - 1}")
    F = trace.snapshots[window].f_eval
    F = F[np.lexsort((F[:, 1], F[:, 0]))]
    path = Path(path)
    with open(path, "w") as fh:
        for f1, f2 in F:
            fh.write(f"{_fmt(f1)} {_fmt(f2)}\n")
    return path


def _execute(args: tuple[ExperimentConfig, str, str, int]) -> tuple[str, str, int, dict | None, str | None]:
    config, problem_id, algorithm, run = args
    out = Path(config.out)
    name = cell_name(problem_id, algorithm, run)
    try:
        trace = run_cell(config, problem_id, algorithm, run)
        rep = report(trace, BenchmarkSpec(problem_id, config.dimension))
        trace.save(out / "traces" / f"{name}.npz")
        write_report(rep, out / "reports" / f"{name}.csv")
        emit_front_snapshot(trace, -1, out / "fronts" / f"{name}.txt")
        return problem_id, algorithm, run, rep.aggregates(), None
    except Exception as exc:  # a failed cell is recorded, the grid continues
        return problem_id, algorithm, run, None, f"{type(exc).__name__}: {exc}"


@dataclass
class SummaryRow:
    problem: str
    algorithm: str
    metric: str
    mean: float
    median: float
    sd: float
    min: float
    max: float
    best: bool = False


@dataclass
class SummaryTable:
    rows: list[SummaryRow] = field(default_factory=list)

    def get(self, problem: str, algorithm: str, metric: str) -> SummaryRow:
        for r in self.rows:
            if (r.problem, r.algorithm, r.metric) == (problem, algorithm, metric):
                return r
        raise KeyError((problem, algorithm, metric))

    def write(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SUMMARY_HEADER)
            for r in self.rows:
                writer.writerow([r.problem, r.algorithm, r.metric, _fmt(r.mean), _fmt(r.median),
                                 _fmt(r.sd), _fmt(r.min), _fmt(r.max), int(r.best)])


def summarize(reports: dict[tuple[str, str], list[MetricReport]]) -> SummaryTable:
    """Mean/median/sample-sd/min/max over runs of each run's window-mean metric.

    The best algorithm per (problem, metric) has the lowest mean GD or
    spread, or the highest mean HV.
    """
    table = SummaryTable()
    per_problem: dict[str, list[SummaryRow]] = defaultdict(list)
    for (problem, algorithm), reps in reports.items():
        if not reps:
            log.warning("no reports for %s/%s; cell omitted from summary", problem, algorithm)
            continue
        for metric in METRIC_NAMES:
            values = np.array([r.mean(metric) for r in reps], dtype=float)
            values = values[np.isfinite(values)]
            if values.size == 0:
                log.warning("no finite %s values for %s/%s", metric, problem, algorithm)
                continue
            sd = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
            row = SummaryRow(problem, algorithm, metric, float(values.mean()), float(np.median(values)),
                             sd, float(values.min()), float(values.max()))
            table.rows.append(row)
            per_problem[problem].append(row)
    for rows in per_problem.values():
        for metric in METRIC_NAMES:
            group = [r for r in rows if r.metric == metric]
            if not group:
                continue
            pick = max if metric == "hv" else min
            target = pick(r.mean for r in group)
            for r in group:
                r.best = r.mean == target
    return table


def write_hv_curves(out: Path, reports: dict[tuple[str, str], list[MetricReport]]) -> None:
    (out / "hv_curves").mkdir(parents=True, exist_ok=True)
    for (problem, algorithm), reps in reports.items():
        if not reps:
            continue
        H = np.array([[r.hv for r in rep.rows] for rep in reps])
        ts = [r.t for r in reps[0].rows]
        with open(out / "hv_curves" / f"{problem}__{algorithm}.csv", "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(HV_CURVE_HEADER)
            for k, t in enumerate(ts):
                col = H[:, k]
                writer.writerow([k, _fmt(t), _fmt(col.mean()), _fmt(np.median(col)),
                                 _fmt(col.min()), _fmt(col.max())])


@dataclass
class ExperimentResult:
    summary: SummaryTable
    failures: list[str]
    reports: dict[tuple[str, str], list[MetricReport]]

    @property
    def exit_code(self) -> int:
        return 2 if self.failures else 0


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    config.validate()
    out = Path(config.out)
    for sub in ("reports", "fronts", "traces"):
        (out / sub).mkdir(parents=True, exist_ok=True)
    jobs = [(config, p, a, k) for p in config.problems for a in config.algorithms for k in range(config.runs)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_execute, jobs))
    else:
        results = [_execute(job) for job in jobs]

    failures = []
    for problem, algorithm, run, aggregates, error in results:
        if error is not None:
            failures.append(f"{cell_name(problem, algorithm, run)}: {error}")
            log.error("cell %s failed: %s", cell_name(problem, algorithm, run), error)
    reports = collect_reports(out, config.problems, config.algorithms)
    summary = summarize(reports)
    summary.write(out / "summary.csv")
    write_hv_curves(out, reports)
    if failures:
        (out / "failures.txt").write_text("\n".join(failures) + "\n")
    return ExperimentResult(summary, failures, reports)


_REPORT_NAME = re.compile(r"(?P<problem>[a-z0-9]+)__(?P<algorithm>[a-z0-9-]+)__run(?P<run>\d+)")


def collect_reports(out: Path, problems=None, algorithms=None) -> dict[tuple[str, str], list[MetricReport]]:
    """Load every report CSV under ``out/reports`` grouped by (problem, algorithm)."""
    grouped: dict[tuple[str, str], list[tuple[int, MetricReport]]] = defaultdict(list)
    for path in sorted((Path(out) / "reports").glob("*.csv")):
        m = _REPORT_NAME.fullmatch(path.stem)
        if not m:
            continue
        key = (m["problem"], m["algorithm"])
        if problems is not None and key[0] not in problems:
            continue
        if algorithms is not None and key[1] not in algorithms:
            continue
        grouped[key].append((int(m["run"]), read_report(path)))
    order_p = {p: i for i, p in enumerate(problems or BENCHMARK_IDS)}
    order_a = {a: i for i, a in enumerate(algorithms or ALGORITHM_IDS)}
    keys = sorted(grouped, key=lambda k: (order_p.get(k[0], 99), k[0], order_a.get(k[1], 99), k[1]))
    return {k: [rep for _, rep in sorted(grouped[k], key=lambda item: item[0])] for k in keys}


def recompute_metrics(out: str | Path, dimension: int = 10) -> int:
    """Rebuild report CSVs and fronts from stored traces; returns the count."""
    out = Path(out)
    (out / "reports").mkdir(parents=True, exist_ok=True)
    (out / "fronts").mkdir(parents=True, exist_ok=True)
    count = 0
    for path in sorted((out / "traces").glob("*.npz")):
        trace = RunTrace.load(path)
        rep = report(trace, BenchmarkSpec(trace.problem, dimension))
        write_report(rep, out / "reports" / f"{path.stem}.csv")
        emit_front_snapshot(trace, -1, out / "fronts" / f"{path.stem}.txt")
        count += 1
    return count


def rebuild_summary(out: str | Path) -> SummaryTable:
    out = Path(out)
    reports = collect_reports(out)
    summary = summarize(reports)
    summary.write(out / "summary.csv")
    write_hv_curves(out, reports)
    return summary
