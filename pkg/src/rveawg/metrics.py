"""Inverted generational distance and run statistics.

The IGD here is defined as the literal double loop: for every reference point
take the minimum Euclidean distance to any solution, then average over the
reference points. The vectorized implementation accumulates squared
coordinate differences in index order and averages with a sequential sum, so
it matches a naive per-pair loop bit for bit on float64.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class IgdResult:
    value: float
    reference_count: int
    solution_count: int


@dataclass
class RunStats:
    mean: float
    std: float
    median: float
    min: float
    max: float


def igd(reference, solutions) -> IgdResult:
    ref = np.asarray(reference, dtype=float)
    sol = np.asarray(solutions, dtype=float)
    if ref.ndim != 2 or sol.ndim != 2 or ref.shape[0] == 0 or sol.shape[0] == 0:
        raise ValueError("need non-empty (K, M) reference and solution arrays")
    if ref.shape[1] != sol.shape[1]:
        raise ValueError(f"objective counts differ: {ref.shape[1]} vs {sol.shape[1]}")
    sq = np.zeros((ref.shape[0], sol.shape[0]))
    for k in range(ref.shape[1]):
        diff = ref[:, k][:, None] - sol[:, k][None, :]
        sq += diff * diff
    mins = np.sqrt(sq).min(axis=1)
    total = 0.0
    for v in mins:
        total += float(v)
    return IgdResult(
        value=total / ref.shape[0],
        reference_count=ref.shape[0],
        solution_count=sol.shape[0],
    )


def aggregate_runs(values) -> RunStats:
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("need a non-empty list of per-run values")
    return RunStats(
        mean=float(np.mean(vals)),
        std=float(np.std(vals)),
        median=float(np.median(vals)),
        min=float(np.min(vals)),
        max=float(np.max(vals)),
    )
