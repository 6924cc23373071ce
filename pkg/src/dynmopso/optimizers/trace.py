"""Run traces shared by every optimizer."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class WindowSnapshot:
    """Archive (or first front) at the end of one environment window.

    ``f`` holds the objectives the optimizer has stored; ``f_eval`` is the
    same decision vectors evaluated at the window's time ``t``.
    """

    window: int
    t: float
    x: np.ndarray
    f: np.ndarray
    f_eval: np.ndarray


@dataclass
class IterationRecord:
    tau: int
    t: float
    changed: bool = False
    degraded: int = 0
    reinitialized: int = 0


@dataclass
class RunTrace:
    algorithm: str
    problem: str
    seed: int
    records: list[IterationRecord] = field(default_factory=list)
    snapshots: list[WindowSnapshot] = field(default_factory=list)
    detection_calls: int = 0
    # Archive for swarm runs, (X, F) population for NSGA-II
    final_archive: object | None = None

    def save(self, path: str | Path) -> None:
        arrays: dict[str, np.ndarray] = {
            "meta": np.array([self.algorithm, self.problem, str(self.seed)]),
            "records": np.array(
                [[r.tau, r.t, r.changed, r.degraded, r.reinitialized] for r in self.records],
                dtype=float,
            ).reshape(-1, 5),
            "windows": np.array([[s.window, s.t] for s in self.snapshots], dtype=float).reshape(-1, 2),
            "detection_calls": np.array(self.detection_calls),
        }
        for k, s in enumerate(self.snapshots):
            arrays[f"x{k}"] = s.x
            arrays[f"f{k}"] = s.f
            arrays[f"fe{k}"] = s.f_eval
        with open(path, "wb") as fh:
            np.savez_compressed(fh, **arrays)

    @classmethod
    def load(cls, path: str | Path) -> RunTrace:
        with np.load(path) as data:
            algorithm, problem, seed = (str(v) for v in data["meta"])
            trace = cls(algorithm, problem, int(seed), detection_calls=int(data["detection_calls"]))
            for tau, t, changed, degraded, reinit in data["records"]:
                trace.records.append(
                    IterationRecord(int(tau), float(t), bool(changed), int(degraded), int(reinit))
                )
            for k, (window, t) in enumerate(data["windows"]):
                trace.snapshots.append(
                    WindowSnapshot(int(window), float(t), data[f"x{k}"], data[f"f{k}"], data[f"fe{k}"])
                )
        return trace
