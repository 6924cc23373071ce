"""Dynamic multi-objective particle swarm optimization with archive-based change detection."""

from .archive import Archive, ArchiveEntry, crowding_distance, dominates, non_dominated_set
from .benchmarks import BenchmarkSpec, make_problem, true_pof
from .metrics import gd, hypervolume, report, spread
from .optimizers import (
    NSGA2Config,
    OptimizerConfig,
    RunTrace,
    run_dynamic_mopso,
    run_nsga2,
    run_omopso,
)
from .problem import DynamicProblem, TimeContext, compute_time, evaluate, freeze

__version__ = "0.1.0"
