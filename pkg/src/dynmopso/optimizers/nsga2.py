"""Generational NSGA-II baseline (SBX + polynomial mutation), no change handling.

Time advances with the evaluation budget: generation ``g`` of ``G`` is
mapped to the swarm iteration counter ``g * max_iterations // G`` so the run
sees the same sequence of environments as a PSO run of ``max_iterations``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..archive import crowding_distance, dominates_rows
from ..problem import DynamicProblem, TimeContext, compute_time
from .trace import IterationRecord, RunTrace, WindowSnapshot


@dataclass(frozen=True)
class NSGA2Config:
    population: int = 100
    evaluations: int = 25_000
    crossover_probability: float = 0.9
    eta_crossover: float = 20.0
    eta_mutation: float = 20.0
    mutation_probability: float | None = None  # None -> 1 / dimension
    max_iterations: int = 200
    severity: int = 10
    frequency: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population < 2 or self.population % 2:
            raise ValueError("population must be an even number >= 2")
        if self.evaluations < self.population:
            raise ValueError("evaluation budget smaller than one generation")
        if not 0.0 <= self.crossover_probability <= 1.0:
            raise ValueError("crossover_probability must lie in [0, 1]")
        if self.eta_crossover < 0 or self.eta_mutation < 0:
            raise ValueError("distribution indices must be non-negative")
        for name in ("max_iterations", "severity", "frequency"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def generations(self) -> int:
        return self.evaluations // self.population


def fast_non_dominated_sort(F: np.ndarray) -> list[np.ndarray]:
    """Partition row indices of ``F`` into successive Pareto fronts."""
    F = np.atleast_2d(F)
    dom = dominates_rows(F[:, None, :], F[None, :, :])
    counts = dom.sum(axis=0)
    fronts = []
    current = np.flatnonzero(counts == 0)
    while current.size:
        fronts.append(current)
        counts = counts - dom[current].sum(axis=0)
        counts[current] = -1
        current = np.flatnonzero(counts == 0)
    return fronts


def rank_and_crowding(F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rank = np.empty(len(F), dtype=int)
    crowd = np.empty(len(F))
    for r, front in enumerate(fast_non_dominated_sort(F)):
        rank[front] = r
        crowd[front] = crowding_distance(F[front])
    return rank, crowd


def sbx_beta(u: np.ndarray, eta: float) -> np.ndarray:
    """Spread factor for uniform draws ``u``; ``u = 0.5`` gives ``beta = 1``."""
    u = np.asarray(u, dtype=float)
    return np.where(
        u <= 0.5,
        (2.0 * u) ** (1.0 / (eta + 1.0)),
        (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0)),
    )


def sbx_children(p1: np.ndarray, p2: np.ndarray, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    return c1, c2


def sbx_crossover(
    P1: np.ndarray,
    P2: np.ndarray,
    eta: float,
    prob: float,
    rng: np.random.Generator,
    lower: np.ndarray,
    upper: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover on row-paired parents.

    Each pair crosses with probability ``prob``; inside a crossing pair every
    variable is recombined with probability 0.5. Children are clipped to bounds.
    """
    m, n = P1.shape
    u = rng.random((m, n))
    do_pair = rng.random(m) < prob
    do_var = rng.random((m, n)) < 0.5
    beta = np.where(do_pair[:, None] & do_var, sbx_beta(u, eta), 1.0)
    C1, C2 = sbx_children(P1, P2, beta)
    return np.clip(C1, lower, upper), np.clip(C2, lower, upper)


def polynomial_delta(u: np.ndarray, eta: float) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return np.where(
        u < 0.5,
        (2.0 * u) ** (1.0 / (eta + 1.0)) - 1.0,
        1.0 - (2.0 * (1.0 - u)) ** (1.0 / (eta + 1.0)),
    )


def polynomial_mutation(
    X: np.ndarray,
    eta: float,
    prob: float,
    rng: np.random.Generator,
    lower: np.ndarray,
    upper: np.ndarray,
) -> np.ndarray:
    u = rng.random(X.shape)
    mask = rng.random(X.shape) < prob
    X_new = X + np.where(mask, polynomial_delta(u, eta), 0.0) * (upper - lower)
    return np.clip(X_new, lower, upper)


def tournament(rank: np.ndarray, crowd: np.ndarray, rng: np.random.Generator, count: int) -> np.ndarray:
    """Binary tournaments by (lower rank, larger crowding); returns winner indices."""
    pairs = rng.integers(0, len(rank), size=(count, 2))
    a, b = pairs[:, 0], pairs[:, 1]
    a_wins = (rank[a] < rank[b]) | ((rank[a] == rank[b]) & (crowd[a] >= crowd[b]))
    return np.where(a_wins, a, b)


def survival(F: np.ndarray, size: int) -> np.ndarray:
    """Indices of the ``size`` survivors: whole fronts first, then by crowding."""
    chosen: list[np.ndarray] = []
    remaining = size
    for front in fast_non_dominated_sort(F):
        if len(front) <= remaining:
            chosen.append(front)
            remaining -= len(front)
        else:
            cd = crowding_distance(F[front])
            order = np.argsort(-cd, kind="stable")
            chosen.append(front[order[:remaining]])
            remaining = 0
        if remaining == 0:
            break
    return np.concatenate(chosen)


def _first_front_snapshot(X, F, problem, window, t) -> WindowSnapshot:
    front = fast_non_dominated_sort(F)[0]
    Xf = X[front]
    return WindowSnapshot(window, t, Xf.copy(), F[front].copy(), problem.evaluate_batch(Xf, t))


def run_nsga2(problem: DynamicProblem, config: NSGA2Config = NSGA2Config()) -> RunTrace:
    rng = np.random.default_rng(config.seed)
    lower, upper = problem.lower, problem.upper
    pm = 1.0 / problem.dimension if config.mutation_probability is None else config.mutation_probability
    N = config.population
    G = config.generations
    ctx = TimeContext(config.severity, config.frequency, 0)
    t = compute_time(ctx)
    X = problem.sample(rng, N)
    F = problem.evaluate_batch(X, t)
    trace = RunTrace("nsga2", problem.name, config.seed)

    for gen in range(1, G + 1):
        prev = ctx
        ctx = TimeContext(config.severity, config.frequency, gen * config.max_iterations // G)
        t = compute_time(ctx)
        record = IterationRecord(ctx.iteration, t)
        if ctx.window > prev.window:
            for window in range(prev.window, ctx.window):
                trace.snapshots.append(_first_front_snapshot(X, F, problem, window, compute_time(prev)))
        rank, crowd = rank_and_crowding(F)
        parents = tournament(rank, crowd, rng, N)
        P1, P2 = X[parents[0::2]], X[parents[1::2]]
        C1, C2 = sbx_crossover(P1, P2, config.eta_crossover, config.crossover_probability, rng, lower, upper)
        children = polynomial_mutation(np.vstack([C1, C2]), config.eta_mutation, pm, rng, lower, upper)
        F_child = problem.evaluate_batch(children, t)
        X_all = np.vstack([X, children])
        F_all = np.vstack([F, F_child])
        keep = survival(F_all, N)
        X, F = X_all[keep], F_all[keep]
        trace.records.append(record)

    trace.final_archive = (X, F)
    return trace
