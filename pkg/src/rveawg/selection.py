"""Reference-vector guided selection: translation, partition, angle-penalized distance, elitism."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EvaluationError, Population
from .refvec import ReferenceVectorSet


@dataclass
class TranslatedObjectives:
    """Objectives shifted so the per-column minimum sits at the origin."""

    rows: np.ndarray   # (P, M), all components >= 0
    z_min: np.ndarray  # (M,)
    z_max: np.ndarray  # (M,)


@dataclass
class Partition:
    assignment: np.ndarray  # (P,) index of the closest reference vector
    cosines: np.ndarray     # (P,) cosine to the assigned vector


@dataclass
class SelectionResult:
    population: Population
    selected_indices: np.ndarray  # indices into the input population, by partition order
    z_min: np.ndarray             # column minima of the combined population
    z_max: np.ndarray             # column maxima of the combined population


def translate(objectives) -> TranslatedObjectives:
    """Subtract the column-wise minimum from every objective vector."""
    rows = np.asarray(objectives, dtype=float)
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise EvaluationError("translation needs a non-empty (P, M) objective array")
    z_min = rows.min(axis=0)
    z_max = rows.max(axis=0)
    return TranslatedObjectives(rows=rows - z_min, z_min=z_min, z_max=z_max)


def partition(translated: TranslatedObjectives, refs: ReferenceVectorSet) -> Partition:
    """Assign each individual to the reference vector with maximal cosine.

    Ties go to the lowest vector index; rows at the ideal point (zero norm)
    go to vector 0 with cosine 1.
    """
    rows = translated.rows
    norms = np.linalg.norm(rows, axis=1)
    cos = np.zeros((rows.shape[0], len(refs)))
    nz = norms > 0.0
    if np.any(nz):
        cos[nz] = (rows[nz] @ refs.current.T) / norms[nz, None]
    assignment = np.argmax(cos, axis=1)
    best = cos[np.arange(rows.shape[0]), assignment]
    assignment[~nz] = 0
    best[~nz] = 1.0
    return Partition(assignment=assignment, cosines=best)


def apd(translated_row, angle: float, gamma_j: float, t: int, t_max: int, alpha: float, m: int) -> float:
    """Angle-penalized distance of one translated objective vector."""
    if t_max < 1 or not 0 <= t <= t_max:
        raise ValueError(f"need 0 <= t <= t_max with t_max >= 1, got t={t}, t_max={t_max}")
    if gamma_j <= 0.0:
        raise ValueError("gamma must be positive (reference vectors must be distinct)")
    norm = float(np.linalg.norm(np.asarray(translated_row, dtype=float)))
    penalty = m * (t / t_max) ** alpha * (angle / gamma_j)
    return (1.0 + penalty) * norm


def elitism_select(
    pop: Population,
    refs: ReferenceVectorSet,
    t: int,
    t_max: int,
    alpha: float = 2.0,
) -> SelectionResult:
    """Keep the minimum-APD individual of every non-empty partition.

    APD ties resolve to the lowest individual index. Empty partitions are
    skipped, so the output may be smaller than the vector count. The combined
    population's objective extrema are returned for vector adaptation.
    """
    if not pop.all_evaluated():
        raise EvaluationError("selection requires a fully evaluated population")
    translated = translate(pop.objective_matrix())
    part = partition(translated, refs)
    norms = np.linalg.norm(translated.rows, axis=1)
    angles = np.arccos(np.clip(part.cosines, -1.0, 1.0))
    angles[norms == 0.0] = 0.0
    scale = refs.m * (t / t_max) ** alpha
    distances = (1.0 + scale * angles / refs.gamma[part.assignment]) * norms

    selected = []
    for j in range(len(refs)):
        members = np.flatnonzero(part.assignment == j)
        if members.size == 0:
            continue
        selected.append(members[int(np.argmin(distances[members]))])
    selected = np.array(selected, dtype=int)
    kept = Population(members=[pop.members[i] for i in selected], generation=pop.generation)
    return SelectionResult(
        population=kept,
        selected_indices=selected,
        z_min=translated.z_min,
        z_max=translated.z_max,
    )
