"""Dynamic-MOPSO, OMOPSO and NSGA-II under one trace format."""

from .pso import (
    OptimizerConfig,
    SwarmState,
    detect_change,
    init_swarm,
    mutate,
    respond_change,
    run_dynamic_mopso,
    run_omopso,
    select_leader,
    select_leaders,
    update_pbest,
    update_position,
    update_velocity,
)
from .trace import IterationRecord, RunTrace, WindowSnapshot
from .nsga2 import (
    NSGA2Config,
    fast_non_dominated_sort,
    polynomial_delta,
    polynomial_mutation,
    run_nsga2,
    sbx_beta,
    sbx_children,
    sbx_crossover,
)

ALGORITHM_IDS = ("dynamic-mopso", "omopso", "nsga2")
