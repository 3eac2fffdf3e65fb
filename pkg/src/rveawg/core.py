"""Shared domain types: box-bounded decision vectors, populations, seeded RNG streams."""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np


class ConfigurationError(ValueError):
    """Raised for malformed run, problem, or operator configuration."""


class EvaluationError(RuntimeError):
    """Raised when objective evaluation produces non-finite values."""


class TrainingError(RuntimeError):
    """Raised when network training receives or produces invalid numbers."""


class RandomSource:
    """Deterministic random stream with independently derivable child streams.

    Built on PCG64 seeded through a SeedSequence so that the same seed plus
    the same call sequence reproduces the same values bit for bit, and
    ``child(tag)`` streams are statistically independent of the parent and
    of each other regardless of how much the parent has been consumed.
    """

    def __init__(self, seed: int, _key: tuple = ()):
        self.seed = int(seed)
        self._key = tuple(_key)
        seq = np.random.SeedSequence(self.seed, spawn_key=self._key)
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def child(self, tag) -> "RandomSource":
        if isinstance(tag, str):
            code = zlib.crc32(tag.encode("utf-8"))
        else:
            code = int(tag) % (2**32)
        return RandomSource(self.seed, self._key + (code,))

    # Thin delegation so call sites read like a numpy Generator.
    def random(self, size=None):
        return self.generator.random(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.generator.uniform(low, high, size)

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high, size=size)

    def permutation(self, x):
        return self.generator.permutation(x)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, key={self._key})"


@dataclass(frozen=True)
class Individual:
    """One candidate solution: decision vector plus cached objectives (None until evaluated)."""

    x: np.ndarray
    f: Optional[np.ndarray] = None

    @property
    def evaluated(self) -> bool:
        return self.f is not None


@dataclass
class Population:
    members: list[Individual] = field(default_factory=list)
    generation: int = 0

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Individual]:
        return iter(self.members)

    def __getitem__(self, i: int) -> Individual:
        return self.members[i]

    def decision_matrix(self) -> np.ndarray:
        """Stack decision vectors into an (N, n) matrix."""
        return np.array([ind.x for ind in self.members], dtype=float)

    def objective_matrix(self) -> np.ndarray:
        """Stack objective vectors into an (N, M) matrix; requires full evaluation."""
        if not self.all_evaluated():
            raise EvaluationError("population contains unevaluated individuals")
        return np.array([ind.f for ind in self.members], dtype=float)

    def all_evaluated(self) -> bool:
        return all(ind.evaluated for ind in self.members)


@dataclass
class EvaluationCounter:
    """Mutable tally of objective-function evaluations consumed by a run."""

    count: int = 0

    def add(self, n: int) -> None:
        self.count += int(n)


def check_bounds(lower: np.ndarray, upper: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != upper.shape or lower.ndim != 1:
        raise ConfigurationError("lower/upper bounds must be 1-D arrays of equal length")
    if not np.all(lower < upper):
        raise ConfigurationError("bounds require lower_i < upper_i for every variable")
    return lower, upper


def init_population(problem, size: int, rng: RandomSource) -> Population:
    """Draw `size` individuals uniformly inside the problem box, unevaluated."""
    if size < 1:
        raise ConfigurationError(f"population size must be >= 1, got {size}")
    lower, upper = check_bounds(problem.lower, problem.upper)
    xs = rng.uniform(lower, upper, size=(size, len(lower)))
    return Population(members=[Individual(x=xs[i].copy()) for i in range(size)], generation=0)


def evaluate(pop: Population, problem, counter: EvaluationCounter | None = None) -> Population:
    """Evaluate every individual; pure, so re-evaluation reproduces cached objectives."""
    if len(pop) == 0:
        return Population(members=[], generation=pop.generation)
    xs = pop.decision_matrix()
    fs = np.asarray(problem.evaluate(xs), dtype=float)
    if fs.shape != (len(pop), problem.m):
        raise EvaluationError(
            f"problem '{problem.name}' returned shape {fs.shape}, expected {(len(pop), problem.m)}"
        )
    bad = ~np.all(np.isfinite(fs), axis=1)
    if np.any(bad):
        idx = int(np.argmax(bad))
        raise EvaluationError(f"non-finite objectives for individual {idx}: {fs[idx]}")
    if counter is not None:
        counter.add(len(pop))
    members = [Individual(x=ind.x, f=fs[i].copy()) for i, ind in enumerate(pop.members)]
    return Population(members=members, generation=pop.generation)
