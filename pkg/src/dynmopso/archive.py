"""Pareto dominance, non-dominated filtering and the bounded external archive.

The archive keeps decision vectors, their objectives and the time at which
those objectives were computed. Re-evaluating it at a new time is how the
dynamic optimizer notices that the landscape moved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import DynamicProblem

#: absolute per-component tolerance for "objectives changed"
CHANGE_TOL = 1e-12


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """Minimization dominance: ``a`` no worse everywhere, strictly better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def dominates_rows(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise dominance of ``A[i]`` over ``B[i]`` (broadcasting allowed)."""
    return np.all(A <= B, axis=-1) & np.any(A < B, axis=-1)


def non_dominated_set(points: np.ndarray) -> np.ndarray:
    """Indices of points not dominated by any other point, in ascending order.

    Equal points do not dominate each other, so duplicates are all kept.
    """
    F = np.asarray(points, dtype=float)
    if F.size == 0:
        return np.empty(0, dtype=int)
    F = np.atleast_2d(F)
    # dom[i, j]: point i dominates point j
    dom = dominates_rows(F[:, None, :], F[None, :, :])
    return np.flatnonzero(~dom.any(axis=0))


def crowding_distance(points: np.ndarray) -> np.ndarray:
    """Crowding distance with +inf at the boundaries of every objective.

    Gaps are normalized by each objective's range; an objective with zero
    range adds nothing to interior points.
    """
    F = np.atleast_2d(np.asarray(points, dtype=float))
    n, m = F.shape
    dist = np.zeros(n)
    if n <= 2:
        dist[:] = np.inf
        return dist
    for j in range(m):
        order = np.argsort(F[:, j], kind="stable")
        col = F[order, j]
        span = col[-1] - col[0]
        if span > 0:
            dist[order[1:-1]] += (col[2:] - col[:-2]) / span
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
    return dist


@dataclass
class ArchiveEntry:
    x: np.ndarray
    f: np.ndarray
    eval_time: float


class Archive:
    """Bounded store of mutually non-dominated solutions.

    Overflow evicts one minimal-crowding entry at a time (lowest index on
    ties), so boundary points survive truncation.
    """

    def __init__(self, capacity: int = 100, dimension: int | None = None, n_obj: int = 2):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self._dim = dimension
        self.n_obj = n_obj
        self.X = np.empty((0, dimension or 0))
        self.F = np.empty((0, n_obj))
        self.times = np.empty(0)

    def __len__(self) -> int:
        return len(self.F)

    def entries(self) -> list[ArchiveEntry]:
        return [ArchiveEntry(x.copy(), f.copy(), float(t)) for x, f, t in zip(self.X, self.F, self.times)]

    def copy(self) -> Archive:
        other = Archive(self.capacity, self._dim, self.n_obj)
        other.X, other.F, other.times = self.X.copy(), self.F.copy(), self.times.copy()
        return other

    def insert(self, x: np.ndarray, f: np.ndarray, eval_time: float) -> bool:
        """Offer a candidate; returns True when it is stored."""
        x = np.asarray(x, dtype=float)
        f = np.asarray(f, dtype=float)
        if len(self.F) == 0:
            self.X = x[None, :].copy()
            self.F = f[None, :].copy()
            self.times = np.array([eval_time], dtype=float)
            self._dim = x.shape[0]
            return True
        if np.any(dominates_rows(self.F, f)):
            return False
        same = np.all(self.F == f, axis=1)
        if same.any() and np.any(np.all(self.X[same] == x, axis=1)):
            return False
        keep = ~dominates_rows(f, self.F)
        self.X = np.vstack([self.X[keep], x])
        self.F = np.vstack([self.F[keep], f])
        self.times = np.append(self.times[keep], eval_time)
        stored = True
        while len(self.F) > self.capacity:
            victim = int(np.argmin(crowding_distance(self.F)))
            if victim == len(self.F) - 1:
                stored = False
            self._drop(victim)
        return stored

    def extend(self, X: np.ndarray, F: np.ndarray, eval_time: float) -> int:
        """Insert rows one at a time; returns how many were stored."""
        return sum(self.insert(x, f, eval_time) for x, f in zip(X, F))

    def reevaluate(self, problem: DynamicProblem, t: float) -> tuple[int, int]:
        """Recompute every entry at time ``t`` and prune newly dominated ones.

        Returns ``(changed, degraded)``: entries whose objectives moved by more
        than ``CHANGE_TOL`` in any component, and entries whose new objectives
        are dominated by their own previous objectives.
        """
        if len(self.F) == 0:
            return 0, 0
        old = self.F
        new = problem.evaluate_batch(self.X, t)
        changed = int(np.sum(np.any(np.abs(new - old) > CHANGE_TOL, axis=1)))
        degraded = int(np.sum(dominates_rows(old, new)))
        self.F = new
        self.times = np.full(len(new), float(t))
        keep = non_dominated_set(new)
        self.X, self.F, self.times = self.X[keep], self.F[keep], self.times[keep]
        return changed, degraded

    def stale_count(self, problem: DynamicProblem, t: float) -> int:
        """Entries whose stored objectives disagree with evaluation at ``t``."""
        if len(self.F) == 0:
            return 0
        fresh = problem.evaluate_batch(self.X, t)
        return int(np.sum(np.any(np.abs(fresh - self.F) > CHANGE_TOL, axis=1)))

    def _drop(self, i: int) -> None:
        self.X = np.delete(self.X, i, axis=0)
        self.F = np.delete(self.F, i, axis=0)
        self.times = np.delete(self.times, i)


def pof_image(archive: Archive) -> np.ndarray:
    """Objective vectors of every entry, in storage order."""
    return archive.F.copy()


def archive_insert(archive: Archive, candidate: ArchiveEntry) -> Archive:
    archive.insert(candidate.x, candidate.f, candidate.eval_time)
    return archive


def reevaluate_entries(
    archive: Archive, problem: DynamicProblem, t: float
) -> tuple[Archive, int, int]:
    changed, degraded = archive.reevaluate(problem, t)
    return archive, changed, degraded
