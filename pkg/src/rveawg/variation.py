"""Bounded variation operators: polynomial mutation and simulated binary crossover."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigurationError, Individual, Population, RandomSource


@dataclass
class MutationConfig:
    eta_m: float = 20.0
    p_m: float | None = None  # None means 1/n, resolved against the problem

    def prob(self, n_var: int) -> float:
        p = 1.0 / n_var if self.p_m is None else self.p_m
        if not 0.0 <= p <= 1.0 or self.eta_m <= 0.0:
            raise ConfigurationError("need 0 <= p_m <= 1 and eta_m > 0")
        return p


def mutation_delta(u: np.ndarray, delta1: np.ndarray, delta2: np.ndarray, eta: float) -> np.ndarray:
    """Normalized polynomial perturbation for uniform draws u.

    delta1/delta2 are the normalized distances to the lower/upper bound; the
    result is 0 at u = 0.5 and stays within [-delta1, delta2].
    """
    exponent = 1.0 / (eta + 1.0)
    low = u <= 0.5
    val_low = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1) ** (eta + 1.0)
    val_high = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta2) ** (eta + 1.0)
    return np.where(low, val_low**exponent - 1.0, 1.0 - val_high**exponent)


def mutate_matrix(
    xs: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    cfg: MutationConfig,
    rng: RandomSource,
) -> np.ndarray:
    """Polynomial mutation applied independently to every entry of an (N, n) matrix."""
    xs = np.asarray(xs, dtype=float)
    span = upper - lower
    p = cfg.prob(xs.shape[-1])
    # Draw both grids up front so the stream consumption is shape-determined.
    mask = rng.random(xs.shape) < p
    u = rng.random(xs.shape)
    delta1 = (xs - lower) / span
    delta2 = (upper - xs) / span
    moved = xs + mutation_delta(u, delta1, delta2, cfg.eta_m) * span
    out = np.where(mask, moved, xs)
    return np.clip(out, lower, upper)


def polynomial_mutation(
    x: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    cfg: MutationConfig,
    rng: RandomSource,
) -> np.ndarray:
    """Mutate one decision vector; each variable moves with probability p_m."""
    return mutate_matrix(np.asarray(x, dtype=float)[None, :], lower, upper, cfg, rng)[0]


def mutate_population(
    pop: Population,
    lower: np.ndarray,
    upper: np.ndarray,
    cfg: MutationConfig,
    rng: RandomSource,
) -> Population:
    if len(pop) == 0:
        return pop
    xs = mutate_matrix(pop.decision_matrix(), lower, upper, cfg, rng)
    return Population(
        members=[Individual(x=xs[i].copy()) for i in range(len(pop))],
        generation=pop.generation,
    )


def sbx_crossover(
    a: np.ndarray,
    b: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    eta_c: float,
    rng: RandomSource,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover of two parents.

    Each variable is crossed with probability 0.5; the children's per-variable
    mean equals the parents' mean before the final clamp.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    cross = rng.random(a.shape) <= 0.5
    u = rng.random(a.shape)
    beta = np.where(
        u <= 0.5,
        (2.0 * u) ** (1.0 / (eta_c + 1.0)),
        (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta_c + 1.0)),
    )
    c1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b)
    c2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b)
    child1 = np.where(cross, c1, a)
    child2 = np.where(cross, c2, b)
    return np.clip(child1, lower, upper), np.clip(child2, lower, upper)
