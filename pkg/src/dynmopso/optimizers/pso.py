"""Dynamic-MOPSO and the OMOPSO baseline.

Both share one swarm loop. Dynamic-MOPSO additionally re-evaluates its
archive at every environment boundary; if any stored objective moved it
re-initializes the particles whose objectives got worse and refreshes the
personal bests of the rest. OMOPSO never looks back, so its archive keeps
objectives computed in environments that no longer exist.

The swarm is updated synchronously: leaders for all particles are drawn
from the archive as it stands at the start of the iteration, and the
archive absorbs the new positions one particle at a time afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..archive import Archive, crowding_distance, dominates_rows, non_dominated_set
from ..problem import DynamicProblem, TimeContext, compute_time
from .trace import IterationRecord, RunTrace, WindowSnapshot


@dataclass(frozen=True)
class OptimizerConfig:
    swarm_size: int = 200
    archive_capacity: int = 100
    max_iterations: int = 200
    mutation_probability: float | None = None  # None -> 1 / dimension
    c_range: tuple[float, float] = (1.5, 2.0)
    w_range: tuple[float, float] = (0.1, 0.5)
    severity: int = 10
    frequency: int = 10
    seed: int = 0
    vmax_fraction: float = 0.5

    def __post_init__(self) -> None:
        for name in ("swarm_size", "archive_capacity", "max_iterations", "severity", "frequency"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        p = self.mutation_probability
        if p is not None and not 0.0 <= p <= 1.0:
            raise ValueError("mutation_probability must lie in [0, 1]")
        for name in ("c_range", "w_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} must be ordered (low, high)")
        if self.vmax_fraction <= 0:
            raise ValueError("vmax_fraction must be positive")

    def mutation_rate(self, dimension: int) -> float:
        return 1.0 / dimension if self.mutation_probability is None else self.mutation_probability


@dataclass
class SwarmState:
    """Particles stored row-wise: position, velocity, current objectives, personal best."""

    X: np.ndarray
    V: np.ndarray
    F: np.ndarray
    pbest_x: np.ndarray
    pbest_f: np.ndarray
    archive: Archive
    ctx: TimeContext
    rng: np.random.Generator = field(repr=False)

    @property
    def t(self) -> float:
        return compute_time(self.ctx)


def update_velocity(
    x: np.ndarray,
    v: np.ndarray,
    pbest_x: np.ndarray,
    leader: np.ndarray,
    w: float,
    c1: float,
    c2: float,
    r1: float | np.ndarray,
    r2: float | np.ndarray,
    vmax: np.ndarray,
) -> np.ndarray:
    """Inertia + cognitive + social velocity, clamped to ``[-vmax, vmax]``.

    Works on a single particle or on row-stacked particles; per-particle
    ``r1``/``r2`` arrays must then have shape ``(m, 1)`` or ``(m,)``.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if r1.ndim == 1 and np.ndim(x) == 2:
        r1, r2 = r1[:, None], r2[:, None]
    v_new = w * v + c1 * r1 * (pbest_x - x) + c2 * r2 * (leader - x)
    return np.clip(v_new, -vmax, vmax)


def update_position(
    x: np.ndarray, v: np.ndarray, lower: np.ndarray, upper: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Move by ``v``; components pushed past a bound stick to it with zero velocity."""
    x_new = x + v
    hit = (x_new < lower) | (x_new > upper)
    x_new = np.clip(x_new, lower, upper)
    v_new = np.where(hit, 0.0, v)
    return x_new, v_new


def select_leaders(
    archive: Archive, rng: np.random.Generator, count: int, crowding: np.ndarray | None = None
) -> np.ndarray:
    """Binary crowding tournaments over the archive; returns ``count`` leader positions."""
    k = len(archive)
    if k == 0:
        raise ValueError("archive is empty; seed it before selecting leaders")
    cd = crowding_distance(archive.F) if crowding is None else crowding
    pairs = rng.integers(0, k, size=(count, 2))
    coin = rng.random(count) < 0.5
    a, b = pairs[:, 0], pairs[:, 1]
    ca, cb = cd[a], cd[b]
    winner = np.where(ca > cb, a, np.where(cb > ca, b, np.where(coin, a, b)))
    return archive.X[winner]


def select_leader(archive: Archive, rng: np.random.Generator) -> np.ndarray:
    return select_leaders(archive, rng, 1)[0]


def mutate(
    x: np.ndarray, prob: float, rng: np.random.Generator, lower: np.ndarray, upper: np.ndarray
) -> np.ndarray:
    """Uniform mutation: each component is redrawn in its bounds with probability ``prob``."""
    x = np.asarray(x, dtype=float)
    mask = rng.random(x.shape) < prob
    fresh = rng.uniform(lower, upper, size=x.shape)
    return np.where(mask, fresh, x)


def update_pbest(
    pbest_x: np.ndarray,
    pbest_f: np.ndarray,
    x: np.ndarray,
    f: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Replace when the new point dominates; keep when dominated; else a fair coin."""
    pbest_x = np.atleast_2d(pbest_x)
    pbest_f = np.atleast_2d(pbest_f)
    x = np.atleast_2d(x)
    f = np.atleast_2d(f)
    coin = rng.random(len(f)) < 0.5
    new_wins = dominates_rows(f, pbest_f)
    old_wins = dominates_rows(pbest_f, f)
    replace = new_wins | (~old_wins & coin)
    return (
        np.where(replace[:, None], x, pbest_x),
        np.where(replace[:, None], f, pbest_f),
    )


def init_swarm(problem: DynamicProblem, config: OptimizerConfig, rng: np.random.Generator) -> SwarmState:
    ctx = TimeContext(config.severity, config.frequency, 0)
    t = compute_time(ctx)
    X = problem.sample(rng, config.swarm_size)
    F = problem.evaluate_batch(X, t)
    archive = Archive(config.archive_capacity, problem.dimension, problem.n_obj)
    front = non_dominated_set(F)
    archive.extend(X[front], F[front], t)
    return SwarmState(X, np.zeros_like(X), F, X.copy(), F.copy(), archive, ctx, rng)


def detect_change(state: SwarmState, problem: DynamicProblem) -> tuple[bool, int]:
    """Re-evaluate the archive at the current time; it is the change detector.

    Returns whether any stored objective moved and how many entries were
    dominated by their own previous objectives. Dominated entries are pruned.
    """
    changed, degraded = state.archive.reevaluate(problem, state.t)
    return changed > 0, degraded


def respond_change(state: SwarmState, problem: DynamicProblem, rng: np.random.Generator) -> int:
    """Re-initialize degraded particles and refresh the others' personal bests.

    A particle is degraded when its position, re-evaluated at the new time,
    is dominated by the objectives it had before the change. Returns the
    number of re-initialized particles.
    """
    t = state.t
    F_new = problem.evaluate_batch(state.X, t)
    degraded = dominates_rows(state.F, F_new)
    count = int(degraded.sum())
    state.pbest_f = problem.evaluate_batch(state.pbest_x, t)
    state.F = F_new
    if count:
        X_fresh = problem.sample(rng, count)
        F_fresh = problem.evaluate_batch(X_fresh, t)
        state.X[degraded] = X_fresh
        state.V[degraded] = 0.0
        state.F[degraded] = F_fresh
        state.pbest_x[degraded] = X_fresh
        state.pbest_f[degraded] = F_fresh
    return count


def _snapshot(state: SwarmState, problem: DynamicProblem, window: int, t: float) -> WindowSnapshot:
    a = state.archive
    return WindowSnapshot(window, t, a.X.copy(), a.F.copy(), problem.evaluate_batch(a.X, t))


def _run(problem: DynamicProblem, config: OptimizerConfig, dynamic: bool, name: str) -> RunTrace:
    rng = np.random.default_rng(config.seed)
    state = init_swarm(problem, config, rng)
    lower, upper = problem.lower, problem.upper
    vmax = config.vmax_fraction * (upper - lower)
    pm = config.mutation_rate(problem.dimension)
    n = config.swarm_size
    trace = RunTrace(name, problem.name, config.seed)

    for tau in range(1, config.max_iterations + 1):
        t_prev = state.t
        state.ctx = state.ctx.advance()
        t = state.t
        record = IterationRecord(tau, t)
        if state.ctx.is_boundary():
            trace.snapshots.append(_snapshot(state, problem, state.ctx.window - 1, t_prev))
            if dynamic:
                trace.detection_calls += 1
                record.changed, record.degraded = detect_change(state, problem)
                if record.changed:
                    record.reinitialized = respond_change(state, problem, rng)

        w = rng.uniform(*config.w_range)
        c1 = rng.uniform(*config.c_range)
        c2 = rng.uniform(*config.c_range)
        leaders = select_leaders(state.archive, rng, n)
        r1, r2 = rng.random(n), rng.random(n)
        state.V = update_velocity(state.X, state.V, state.pbest_x, leaders, w, c1, c2, r1, r2, vmax)
        state.X, state.V = update_position(state.X, state.V, lower, upper)
        state.X = mutate(state.X, pm, rng, lower, upper)
        state.F = problem.evaluate_batch(state.X, t)
        state.pbest_x, state.pbest_f = update_pbest(state.pbest_x, state.pbest_f, state.X, state.F, rng)
        state.archive.extend(state.X, state.F, t)
        trace.records.append(record)

    trace.final_archive = state.archive
    return trace


def run_dynamic_mopso(problem: DynamicProblem, config: OptimizerConfig = OptimizerConfig()) -> RunTrace:
    """Dynamic-MOPSO: swarm loop with archive-based change detection and response."""
    return _run(problem, config, dynamic=True, name="dynamic-mopso")


def run_omopso(problem: DynamicProblem, config: OptimizerConfig = OptimizerConfig()) -> RunTrace:
    """The same swarm loop without detection or response."""
    return _run(problem, config, dynamic=False, name="omopso")
