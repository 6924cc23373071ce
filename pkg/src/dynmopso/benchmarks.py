"""Type-I dynamic benchmarks: FDA1, DIMP2 and dMOP3.

All three share the construction

    f1 = x_p,   f2 = g(x, t) * (1 - sqrt(f1 / g(x, t)))

where ``x_p`` is the position variable and ``g >= 1`` with equality exactly on
the moving Pareto-optimal set. The front is therefore ``f2 = 1 - sqrt(f1)`` at
every time while the optimal decision vectors drift.

FDA1 (Farina, Deb & Amato 2004)
    G(t) = sin(0.5 pi t),  g = 1 + sum_{i>=2} (x_i - G)^2
    x_1 in [0, 1], x_i in [-1, 1].

DIMP2
    G_i(t) = sin(0.5 pi t + 2 pi i / (n + 1))^2  for i = 2..n (1-based)
    g = 1 + 2(n - 1) + sum_{i>=2} [(x_i - G_i)^2 - 2 cos(3 pi (x_i - G_i))]
    x_1 in [0, 1], x_i in [-2, 2]. Each bracket has its global minimum -2 at
    x_i = G_i (the next local minima near |d| = 2/3 sit at about -1.56).

dMOP3
    f1 = x_r for a position index r that is redrawn at each change,
    G(t) = sin(0.5 pi t),  g = 1 + sum_{i != r} (x_i - G)^2, x in [0, 1]^n.
    For t in [0, 2] the optimum G stays inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .problem import DynamicProblem

BENCHMARK_IDS = ("fda1", "dimp2", "dmop3")
DEFAULT_DIMENSION = 10


def _front(f1: np.ndarray, g: np.ndarray) -> np.ndarray:
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.stack([f1, f2], axis=-1)


def fda1_g(X: np.ndarray, t: float) -> np.ndarray:
    G = np.sin(0.5 * np.pi * t)
    return 1.0 + np.sum((X[..., 1:] - G) ** 2, axis=-1)


def fda1_evaluate(x: np.ndarray, t: float) -> np.ndarray:
    X = np.asarray(x, dtype=float)
    return _front(X[..., 0], fda1_g(X, t))


def dimp2_targets(n: int, t: float) -> np.ndarray:
    """Per-variable optima G_i(t) for the non-position variables i = 2..n."""
    i = np.arange(2, n + 1)
    return np.sin(0.5 * np.pi * t + 2.0 * np.pi * i / (n + 1)) ** 2


def dimp2_g(X: np.ndarray, t: float) -> np.ndarray:
    n = X.shape[-1]
    d = X[..., 1:] - dimp2_targets(n, t)
    return 1.0 + 2.0 * (n - 1) + np.sum(d**2 - 2.0 * np.cos(3.0 * np.pi * d), axis=-1)


def dimp2_evaluate(x: np.ndarray, t: float) -> np.ndarray:
    X = np.asarray(x, dtype=float)
    return _front(X[..., 0], dimp2_g(X, t))


def dmop3_g(X: np.ndarray, t: float, r: int) -> np.ndarray:
    G = np.sin(0.5 * np.pi * t)
    rest = np.delete(X, r - 1, axis=-1)
    return 1.0 + np.sum((rest - G) ** 2, axis=-1)


def dmop3_evaluate(x: np.ndarray, t: float, r: int) -> np.ndarray:
    """dMOP3 with 1-based position index ``r``."""
    X = np.asarray(x, dtype=float)
    n = X.shape[-1]
    if not 1 <= r <= n:
        raise ValueError(f"position index r must lie in 1..{n}, got {r}")
    return _front(X[..., r - 1], dmop3_g(X, t, r))


def dmop3_index(seed: int, t: float, n: int) -> int:
    """Position index used by a seeded dMOP3 instance at time ``t``.

    Drawn from a generator keyed on (seed, t), so it is constant inside an
    environment window, redrawn whenever t moves, and evaluation stays pure.
    """
    return _dmop3_index(int(seed), round(float(t) * 1_000_000_000), int(n))


@lru_cache(maxsize=4096)
def _dmop3_index(seed: int, tkey: int, n: int) -> int:
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, tkey])
    return int(rng.integers(1, n + 1))


@dataclass(frozen=True)
class BenchmarkSpec:
    id: str
    dimension: int = DEFAULT_DIMENSION

    def __post_init__(self) -> None:
        if self.id not in BENCHMARK_IDS:
            raise ValueError(f"unknown benchmark {self.id!r}; expected one of {BENCHMARK_IDS}")
        if self.dimension < 2:
            raise ValueError("benchmarks need at least two decision variables")

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.dimension
        if self.id == "fda1":
            lo, hi = np.full(n, -1.0), np.ones(n)
        elif self.id == "dimp2":
            lo, hi = np.full(n, -2.0), np.full(n, 2.0)
        else:
            return np.zeros(n), np.ones(n)
        lo[0], hi[0] = 0.0, 1.0
        return lo, hi


def make_problem(spec: BenchmarkSpec | str, dimension: int = DEFAULT_DIMENSION, seed: int = 0) -> DynamicProblem:
    """Build a :class:`DynamicProblem`; ``seed`` only matters for dMOP3."""
    if isinstance(spec, str):
        spec = BenchmarkSpec(spec.lower(), dimension)
    lower, upper = spec.bounds
    if spec.id == "fda1":
        evaluator = fda1_evaluate
    elif spec.id == "dimp2":
        evaluator = dimp2_evaluate
    else:
        n = spec.dimension

        def evaluator(X: np.ndarray, t: float) -> np.ndarray:
            return dmop3_evaluate(X, t, dmop3_index(seed, t, n))

    return DynamicProblem(spec.id, spec.dimension, 2, lower, upper, evaluator)


def optimal_set(spec: BenchmarkSpec | str, t: float, f1: np.ndarray, seed: int = 0) -> np.ndarray:
    """Decision vectors on the Pareto-optimal set at ``t`` with position values ``f1``."""
    if isinstance(spec, str):
        spec = BenchmarkSpec(spec.lower())
    f1 = np.atleast_1d(np.asarray(f1, dtype=float))
    n = spec.dimension
    X = np.empty((len(f1), n))
    if spec.id == "dimp2":
        X[:, 1:] = dimp2_targets(n, t)
        X[:, 0] = f1
    elif spec.id == "fda1":
        X[:, 1:] = np.sin(0.5 * np.pi * t)
        X[:, 0] = f1
    else:
        r = dmop3_index(seed, t, n)
        X[:] = np.sin(0.5 * np.pi * t)
        X[:, r - 1] = f1
    return X


def true_pof(spec: BenchmarkSpec | str, t: float, resolution: int = 500) -> np.ndarray:
    """Evenly spaced samples of the shared front ``f2 = 1 - sqrt(f1)``.

    Type-I fronts are static, so ``t`` does not change the result.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    f1 = np.arange(resolution) / (resolution - 1)
    return np.column_stack([f1, 1.0 - np.sqrt(f1)])
