"""Time-parameterized problem abstraction and the iteration-to-time mapping."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

Evaluator = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class TimeContext:
    """Environment clock: severity n_t, frequency tau_t and iteration counter tau."""

    severity: int = 10
    frequency: int = 10
    iteration: int = 0

    def __post_init__(self) -> None:
        if self.severity < 1 or self.frequency < 1:
            raise ValueError(
                f"severity and frequency must be >= 1, got {self.severity}, {self.frequency}"
            )
        if self.iteration < 0:
            raise ValueError(f"iteration must be >= 0, got {self.iteration}")

    @property
    def time(self) -> float:
        return compute_time(self)

    @property
    def window(self) -> int:
        return self.iteration // self.frequency

    def is_boundary(self) -> bool:
        """True when the environment changes at this iteration."""
        return self.iteration > 0 and self.iteration % self.frequency == 0

    def advance(self, steps: int = 1) -> TimeContext:
        return TimeContext(self.severity, self.frequency, self.iteration + steps)


def compute_time(ctx: TimeContext) -> float:
    """Return t = floor(tau / tau_t) / n_t.

    The quotient is formed as an exact rational so window boundaries carry
    no floating-point drift; e.g. 19/10 -> 1.9 exactly as Python rounds it.
    """
    if ctx.severity < 1 or ctx.frequency < 1:
        raise ValueError("severity and frequency must be >= 1")
    return float(Fraction(ctx.iteration // ctx.frequency, ctx.severity))


@dataclass(frozen=True)
class DynamicProblem:
    """Box-constrained vector function whose landscape depends on time ``t``.

    ``evaluator`` maps a batch ``X`` of shape ``(m, n)`` and a scalar ``t`` to
    objectives of shape ``(m, n_obj)``. It must be pure.
    """

    name: str
    dimension: int
    n_obj: int
    lower: np.ndarray
    upper: np.ndarray
    evaluator: Evaluator = field(repr=False, compare=False)

    def __post_init__(self) -> None:
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.shape != (self.dimension,) or upper.shape != (self.dimension,):
            raise ValueError("bounds must have length equal to dimension")
        if not np.all(lower < upper):
            raise ValueError("lower bounds must be strictly below upper bounds")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def evaluate(self, x: np.ndarray, t: float) -> np.ndarray:
        """Checked evaluation of a single decision vector or a batch."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        X = np.atleast_2d(x)
        if X.ndim != 2 or X.shape[1] != self.dimension:
            raise ValueError(
                f"{self.name}: expected decision vectors of length {self.dimension}, "
                f"got shape {x.shape}"
            )
        if np.any(X < self.lower) or np.any(X > self.upper):
            raise ValueError(f"{self.name}: decision vector outside the box bounds")
        F = self.evaluator(X, t)
        return F[0] if single else F

    def evaluate_batch(self, X: np.ndarray, t: float) -> np.ndarray:
        """Unchecked batch evaluation used on the optimizer hot path."""
        return self.evaluator(X, t)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, size=(size, self.dimension))


def evaluate(problem: DynamicProblem, x: np.ndarray, t: float) -> np.ndarray:
    return problem.evaluate(x, t)


def freeze(problem: DynamicProblem, t: float = 0.0) -> DynamicProblem:
    """Return a copy of ``problem`` whose landscape is pinned at time ``t``."""

    def frozen(X: np.ndarray, _t: float) -> np.ndarray:
        return problem.evaluator(X, t)

    return DynamicProblem(
        name=f"{problem.name}-frozen",
        dimension=problem.dimension,
        n_obj=problem.n_obj,
        lower=problem.lower,
        upper=problem.upper,
        evaluator=frozen,
    )
