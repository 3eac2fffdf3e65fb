"""Adversarial offspring model: critic pre-training on survivors vs eliminated
individuals, Wasserstein training with gradient penalty, and offspring sampling.

Decision vectors are trained in normalized [-1, 1] coordinates so the
generator's tanh output always lands inside the box.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Individual, Population, RandomSource, TrainingError
from .neuronet import (
    AdamState,
    Mlp,
    adam_step,
    backward,
    forward,
    gradient_penalty_backward,
    init_mlp,
    input_gradient,
)


@dataclass
class GanConfig:
    """Offspring-trainer settings.

    The defaults are calibrated for the benchmark protocol (40 epochs per
    generation over 15 generations): networks restart every generation and
    both sides share a coarse learning rate, which keeps the generated
    offspring dispersed enough to explore. For long single-corpus training
    set gen_learning_rate well below learning_rate (two time scales); a
    shared-rate adversarial game orbits its target instead of settling.
    """

    epochs: int = 40
    critic_steps: int = 5          # critic updates per generator update
    batch_size: int = 32           # capped at the corpus size
    lambda_gp: float = 10.0
    pretrain_epochs: int = 10
    latent_dim: int = 16
    hidden: int = 64
    learning_rate: float = 7e-3
    gen_learning_rate: float | None = None  # None: same as learning_rate
    beta1: float = 0.5
    beta2: float = 0.9
    noise: str = "normal"          # "normal" or "uniform"
    warm_start: bool = False       # True keeps networks across generations

    @property
    def generator_rate(self) -> float:
        return self.learning_rate if self.gen_learning_rate is None else self.gen_learning_rate

    def validate(self) -> None:
        if min(self.epochs, self.critic_steps, self.batch_size, self.pretrain_epochs) < 0:
            raise ValueError("GAN loop counts must be non-negative")
        if self.lambda_gp < 0:
            raise ValueError("gradient-penalty coefficient must be >= 0")
        if self.noise not in ("normal", "uniform"):
            raise ValueError(f"unknown noise model '{self.noise}'")


@dataclass
class TrainingCorpus:
    real: np.ndarray  # (R, n) survivors in normalized coordinates
    bad: np.ndarray   # (B, n) eliminated individuals, may be empty


@dataclass
class EpochStats:
    epoch: int
    critic_loss: float
    gen_loss: float
    wasserstein: float
    penalty: float


def normalize_to_net(x: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Affine map of box coordinates onto [-1, 1] per dimension."""
    return 2.0 * (np.asarray(x, dtype=float) - lower) / (upper - lower) - 1.0


def denormalize_from_net(y: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Inverse map back to the box, clamped to the bounds."""
    x = lower + (np.asarray(y, dtype=float) + 1.0) * 0.5 * (upper - lower)
    return np.clip(x, lower, upper)


def _noise(cfg: GanConfig, count: int, rng: RandomSource) -> np.ndarray:
    if cfg.noise == "uniform":
        return rng.uniform(-1.0, 1.0, size=(count, cfg.latent_dim))
    return rng.standard_normal((count, cfg.latent_dim))


def _critic_update(
    critic: Mlp,
    opt: AdamState,
    good: np.ndarray,
    bad: np.ndarray,
    lambda_gp: float,
    rng: RandomSource,
) -> tuple[float, float, float]:
    """One critic step on loss mean D(bad) - mean D(good) + lambda * penalty.

    Returns (loss, penalty, mean D(good) - mean D(bad)).
    """
    b = good.shape[0]
    y_good, cache_good = forward(critic, good)
    y_bad, cache_bad = forward(critic, bad)
    grads = backward(critic, cache_bad, np.full_like(y_bad, 1.0 / b))
    grads = grads + backward(critic, cache_good, np.full_like(y_good, -1.0 / b))
    eps = rng.random((b, 1))
    mixed = eps * good + (1.0 - eps) * bad
    penalty, pen_grads = gradient_penalty_backward(critic, mixed)
    grads = grads + pen_grads.scaled(lambda_gp)
    loss = float(np.mean(y_bad) - np.mean(y_good) + lambda_gp * penalty)
    if not np.isfinite(loss):
        raise TrainingError(f"critic loss diverged: {loss}")
    adam_step(critic, grads, opt)
    return loss, penalty, float(np.mean(y_good) - np.mean(y_bad))


def pretrain_discriminator(
    critic: Mlp,
    opt: AdamState,
    corpus: TrainingCorpus,
    cfg: GanConfig,
    rng: RandomSource,
) -> Mlp:
    """Push the critic up on survivor rows and down on eliminated rows.

    A corpus without eliminated rows leaves the critic untouched.
    """
    if corpus.bad.shape[0] == 0 or cfg.pretrain_epochs == 0:
        return critic
    n_good, n_bad = corpus.real.shape[0], corpus.bad.shape[0]
    b = min(cfg.batch_size, n_good, n_bad)
    for _ in range(cfg.pretrain_epochs):
        good = corpus.real[rng.integers(0, n_good, size=b)]
        bad = corpus.bad[rng.integers(0, n_bad, size=b)]
        _critic_update(critic, opt, good, bad, cfg.lambda_gp, rng)
    return critic


def train(
    gen: Mlp,
    gen_opt: AdamState,
    critic: Mlp,
    critic_opt: AdamState,
    corpus: TrainingCorpus,
    cfg: GanConfig,
    rng: RandomSource,
) -> list[EpochStats]:
    """Adversarial training on the survivor rows.

    Per epoch: cfg.critic_steps critic updates against fresh generator
    samples (with the gradient penalty taken at uniform interpolates of real
    and generated rows), then one generator update on -mean D(G(z)).
    """
    if corpus.real.shape[0] == 0:
        raise TrainingError("cannot train on an empty survivor set")
    n_real = corpus.real.shape[0]
    b = min(cfg.batch_size, n_real)
    trace = []
    for epoch in range(cfg.epochs):
        critic_loss = penalty = w_est = 0.0
        for _ in range(cfg.critic_steps):
            real = corpus.real[rng.integers(0, n_real, size=b)]
            fake, _ = forward(gen, _noise(cfg, b, rng))
            critic_loss, penalty, w_est = _critic_update(
                critic, critic_opt, real, fake, cfg.lambda_gp, rng
            )
        fake, gen_cache = forward(gen, _noise(cfg, b, rng))
        scores, _ = forward(critic, fake)
        gen_loss = float(-np.mean(scores))
        if not np.isfinite(gen_loss):
            raise TrainingError(f"generator loss diverged at epoch {epoch}")
        d_fake = -input_gradient(critic, fake) / b
        adam_step(gen, backward(gen, gen_cache, d_fake), gen_opt)
        trace.append(
            EpochStats(
                epoch=epoch,
                critic_loss=critic_loss,
                gen_loss=gen_loss,
                wasserstein=w_est,
                penalty=penalty,
            )
        )
    return trace


def sample_offspring(
    gen: Mlp,
    count: int,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: RandomSource,
    cfg: GanConfig,
) -> Population:
    """Decode `count` latent draws into unevaluated in-bounds individuals."""
    if count < 1:
        raise ValueError(f"offspring count must be >= 1, got {count}")
    y, _ = forward(gen, _noise(cfg, count, rng))
    xs = denormalize_from_net(y, lower, upper)
    return Population(members=[Individual(x=xs[i].copy()) for i in range(count)])


class OffspringGan:
    """Generator/critic pair owned by one optimization run.

    With warm starting (the default) the networks persist across generations;
    otherwise they are reinitialized before every training call.
    """

    def __init__(self, n_var: int, cfg: GanConfig, rng: RandomSource):
        cfg.validate()
        self.cfg = cfg
        self.n_var = n_var
        self._rng = rng
        self._init_rng = rng.child("init")
        self._reset()

    def _reset(self) -> None:
        h = self.cfg.hidden
        self.generator = init_mlp(
            [self.cfg.latent_dim, h, h, self.n_var], output_tanh=True, rng=self._init_rng
        )
        self.critic = init_mlp([self.n_var, h, h, 1], output_tanh=False, rng=self._init_rng)
        b1, b2 = self.cfg.beta1, self.cfg.beta2
        self.gen_opt = AdamState.for_net(self.generator, self.cfg.generator_rate, b1, b2)
        self.critic_opt = AdamState.for_net(self.critic, self.cfg.learning_rate, b1, b2)

    def next_generation(self, corpus: TrainingCorpus) -> list[EpochStats]:
        """Pre-train the critic, then run the adversarial epochs."""
        if not self.cfg.warm_start:
            self._reset()
        pretrain_discriminator(self.critic, self.critic_opt, corpus, self.cfg, self._rng)
        return train(
            self.generator, self.gen_opt, self.critic, self.critic_opt, corpus, self.cfg, self._rng
        )

    def sample(self, count: int, lower: np.ndarray, upper: np.ndarray) -> Population:
        return sample_offspring(self.generator, count, lower, upper, self._rng, self.cfg)
