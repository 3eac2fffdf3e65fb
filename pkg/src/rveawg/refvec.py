"""Uniform unit reference vectors: lattice generation, normalization, range adaptation."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .core import ConfigurationError

# Range floor applied when an objective has collapsed to a single value, so the
# adapted vector stays finite and unit-norm.
RANGE_FLOOR = 1e-12

# Lattice settings whose vector counts equal the benchmark population sizes
# 105 / 132 / 156 / 275 for 3 / 6 / 8 / 10 objectives.
DEFAULT_LATTICES = {3: (13, 0), 6: (4, 1), 8: (3, 2), 10: (3, 2)}


@dataclass
class ReferenceVectorSet:
    """Unit vectors guiding selection, their uniform initial copies, and per-vector
    minimum neighbor angles (radians)."""

    current: np.ndarray  # (N, M), unit rows
    initial: np.ndarray  # (N, M), unit rows
    gamma: np.ndarray    # (N,)

    def __len__(self) -> int:
        return self.current.shape[0]

    @property
    def m(self) -> int:
        return self.current.shape[1]


def simplex_lattice(m: int, h: int) -> np.ndarray:
    """All weight vectors with components in {0, 1/h, ..., 1} summing to 1.

    Returned in lexicographic order of the integer compositions; the count is
    C(h + m - 1, m - 1).
    """
    if m < 2:
        raise ConfigurationError(f"lattice needs at least 2 objectives, got {m}")
    if h < 1:
        raise ConfigurationError(f"lattice resolution must be >= 1, got {h}")
    rows = []

    def build(prefix, remaining, slots):
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for k in range(remaining + 1):
            build(prefix + [k], remaining - k, slots - 1)

    build([], h, m)
    weights = np.array(rows, dtype=float) / h
    assert weights.shape[0] == comb(h + m - 1, m - 1)
    return weights


def two_layer_lattice(m: int, h_outer: int, h_inner: int) -> np.ndarray:
    """Outer lattice plus an inner lattice shrunk toward the centroid.

    The inner weights are mapped by w/2 + 1/(2m), exact duplicates between the
    two layers are dropped, h_inner = 0 means no inner layer.
    """
    if h_inner < 0:
        raise ConfigurationError(f"inner resolution must be >= 0, got {h_inner}")
    outer = simplex_lattice(m, h_outer)
    if h_inner == 0:
        return outer
    inner = simplex_lattice(m, h_inner) / 2.0 + 1.0 / (2 * m)
    combined = np.vstack([outer, inner])
    seen = set()
    keep = []
    for i, row in enumerate(combined):
        key = tuple(np.round(row, 12))
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return combined[keep]


def lattice_for(m: int, pop_size: int | None = None) -> np.ndarray:
    """Weight lattice for m objectives.

    Without a requested size, the benchmark defaults are used when known,
    otherwise the smallest single lattice with at least 100 points. With a
    requested size, the smallest single lattice reaching it is used (the
    resulting count is the population size the caller must adopt).
    """
    if pop_size is None:
        if m in DEFAULT_LATTICES:
            h_outer, h_inner = DEFAULT_LATTICES[m]
            return two_layer_lattice(m, h_outer, h_inner)
        pop_size = 100
    h = 1
    while comb(h + m - 1, m - 1) < pop_size:
        h += 1
    return simplex_lattice(m, h)


def to_unit_vectors(weights: np.ndarray) -> ReferenceVectorSet:
    """Normalize lattice weights to unit vectors; initial = current; gamma computed."""
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 2 or weights.shape[0] == 0:
        raise ConfigurationError("need a non-empty (N, M) weight array")
    norms = np.linalg.norm(weights, axis=1)
    if np.any(norms == 0.0):
        raise ConfigurationError("zero-norm weight vector cannot be normalized")
    current = weights / norms[:, None]
    return ReferenceVectorSet(current=current, initial=current.copy(), gamma=_min_angles(current))


def _min_angles(vectors: np.ndarray) -> np.ndarray:
    """Per-vector smallest angle to any other vector in the set."""
    n = vectors.shape[0]
    if n == 1:
        # Degenerate single-vector set; half a right angle keeps the APD
        # penalty finite.
        return np.array([np.pi / 2])
    cos = np.clip(vectors @ vectors.T, -1.0, 1.0)
    np.fill_diagonal(cos, -np.inf)
    return np.arccos(np.max(cos, axis=1))


def adapt(refs: ReferenceVectorSet, z_max: np.ndarray, z_min: np.ndarray) -> ReferenceVectorSet:
    """Rescale the initial vectors by the objective ranges and renormalize.

    Always starts from the initial uniform set, so adapting twice with the
    same ranges gives the same result. Collapsed ranges are floored.
    """
    z_max = np.asarray(z_max, dtype=float)
    z_min = np.asarray(z_min, dtype=float)
    if z_max.shape != (refs.m,) or z_min.shape != (refs.m,):
        raise ConfigurationError("objective range vectors must have length M")
    ranges = np.maximum(z_max - z_min, RANGE_FLOOR)
    scaled = refs.initial * ranges
    current = scaled / np.linalg.norm(scaled, axis=1)[:, None]
    return ReferenceVectorSet(current=current, initial=refs.initial.copy(), gamma=_min_angles(current))
