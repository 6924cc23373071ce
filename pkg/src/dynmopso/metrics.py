"""Quality indicators: generational distance, spread and 2-D hypervolume.

Per-window reports evaluate each archive snapshot against the analytic
Type-I front.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .benchmarks import BenchmarkSpec, true_pof

REFERENCE_POINT = (1.1, 1.1)
POF_RESOLUTION = 500
METRIC_NAMES = ("gd", "spread", "hv")


def gd(approx: np.ndarray, reference: np.ndarray) -> float:
    """Generational distance: RMS of nearest-reference distances.

    Args:
        approx: (k, m) approximation front.
        reference: (r, m) sample of the true front.

    Returns:
        ``sqrt(sum(d_i**2) / k)`` where ``d_i`` is the Euclidean distance from
        approximation point ``i`` to its closest reference point.
    """
    A = np.atleast_2d(np.asarray(approx, dtype=float))
    R = np.atleast_2d(np.asarray(reference, dtype=float))
    if A.size == 0:
        raise ValueError("GD is undefined for an empty approximation")
    if R.size == 0:
        raise ValueError("reference front is empty")
    d2 = np.min(np.sum((A[:, None, :] - R[None, :, :]) ** 2, axis=-1), axis=1)
    return float(np.sqrt(d2.sum() / len(A)))


def spread(front: np.ndarray) -> float:
    """Mean absolute deviation of consecutive gaps along the front.

    Points are sorted by the first objective (ties by the second); the
    average is taken over the ``len(front) - 1`` gaps.
    """
    F = np.atleast_2d(np.asarray(front, dtype=float))
    if len(F) < 2:
        raise ValueError("spread needs at least two points")
    order = np.lexsort(F.T[::-1])
    gaps = np.linalg.norm(np.diff(F[order], axis=0), axis=1)
    return float(np.mean(np.abs(gaps - gaps.mean())))


def hypervolume(
    front: np.ndarray,
    reference_point: np.ndarray = REFERENCE_POINT,
    ideal: np.ndarray | None = None,
) -> float:
    """Area dominated by a bi-objective front and bounded by ``reference_point``.

    Points that do not strictly dominate the reference point add nothing.
    When ``ideal`` (the best achievable objective values) is given, a
    reference point not strictly worse than it in every objective is
    rejected as degenerate.
    """
    ref = np.asarray(reference_point, dtype=float)
    if ref.shape != (2,):
        raise ValueError("hypervolume is implemented for two objectives only")
    if ideal is not None and np.any(ref <= np.asarray(ideal, dtype=float)):
        raise ValueError(f"degenerate reference point {ref.tolist()}")
    F = np.asarray(front, dtype=float).reshape(-1, 2)
    F = F[np.all(F < ref, axis=1)]
    if len(F) == 0:
        return 0.0
    # sweep in f1; keep only strictly improving f2
    F = F[np.lexsort((F[:, 1], F[:, 0]))]
    volume = 0.0
    best_f2 = ref[1]
    for f1, f2 in F:
        if f2 >= best_f2:
            continue
        volume += (ref[0] - f1) * (best_f2 - f2)
        best_f2 = f2
    return float(volume)


def hypervolume_monte_carlo(
    front: np.ndarray,
    reference_point: np.ndarray,
    rng: np.random.Generator,
    samples: int = 1_000_000,
    lower: np.ndarray | None = None,
) -> tuple[float, float]:
    """Monte-Carlo hypervolume estimate and its standard error.

    Samples uniformly in the box ``[lower, reference_point]``; ``lower``
    defaults to the componentwise minimum of the front.
    """
    F = np.asarray(front, dtype=float).reshape(-1, 2)
    ref = np.asarray(reference_point, dtype=float)
    lo = F.min(axis=0) if lower is None else np.asarray(lower, dtype=float)
    box = float(np.prod(ref - lo))
    hits = np.zeros(samples, dtype=bool)
    chunk = 100_000
    for start in range(0, samples, chunk):
        P = rng.uniform(lo, ref, size=(min(chunk, samples - start), 2))
        hits[start : start + len(P)] = np.any(
            np.all(F[None, :, :] <= P[:, None, :], axis=-1), axis=1
        )
    p = hits.mean()
    return box * p, box * np.sqrt(p * (1 - p) / samples)


@dataclass
class WindowMetrics:
    window: int
    t: float
    gd: float
    spread: float
    hv: float


@dataclass
class MetricReport:
    rows: list[WindowMetrics]

    def mean(self, name: str) -> float:
        values = np.array([getattr(r, name) for r in self.rows], dtype=float)
        return float(np.nanmean(values)) if np.any(np.isfinite(values)) else float("nan")

    def aggregates(self) -> dict[str, float]:
        return {name: self.mean(name) for name in METRIC_NAMES}

    def to_array(self) -> np.ndarray:
        return np.array([[r.window, r.t, r.gd, r.spread, r.hv] for r in self.rows], dtype=float)


def window_metrics(window: int, t: float, points: np.ndarray, spec: BenchmarkSpec | str) -> WindowMetrics:
    reference = true_pof(spec, t, POF_RESOLUTION)
    points = np.atleast_2d(points)
    spr = spread(points) if len(points) >= 2 else float("nan")
    hv = hypervolume(points, REFERENCE_POINT, ideal=(0.0, 0.0))
    return WindowMetrics(window, float(t), gd(points, reference), spr, hv)


def report(trace, spec: BenchmarkSpec | str) -> MetricReport:
    """Per-window GD, spread and HV of a run trace.

    Each snapshot is scored by the objectives of its decision vectors
    evaluated at the window's time, which is what the front actually
    achieves even when the optimizer's stored values are stale.
    """
    if not trace.snapshots:
        raise ValueError("trace has no window snapshots")
    return MetricReport(
        [window_metrics(s.window, s.t, s.f_eval, spec) for s in trace.snapshots]
    )
