"""Small fully-connected networks in plain numpy.

Provides exactly what adversarial offspring generation needs: a batched
forward pass, backpropagation to parameters, per-sample gradients of a
scalar-output critic with respect to its input, and the derivative of the
unit-gradient-norm penalty with respect to the critic parameters. The penalty
derivative is computed analytically: the input gradient is differentiated in
the penalty's descent direction with a forward (tangent) sweep, and that
extended computation is then swept in reverse. Hidden activations are tanh
throughout, which keeps this second differentiation smooth everywhere.

All arithmetic is float64. Weight matrices are stored (out, in); batches are
row-major (batch, features).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import RandomSource, TrainingError


@dataclass
class Mlp:
    weights: list[np.ndarray]  # each (out, in)
    biases: list[np.ndarray]   # each (out,)
    output_tanh: bool
    version: int = 0           # bumped on every parameter update; guards stale caches

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    @property
    def in_dim(self) -> int:
        return self.weights[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights[-1].shape[0]

    def copy(self) -> "Mlp":
        return Mlp(
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
            output_tanh=self.output_tanh,
            version=self.version,
        )


@dataclass
class Grads:
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def __add__(self, other: "Grads") -> "Grads":
        return Grads(
            weights=[a + b for a, b in zip(self.weights, other.weights)],
            biases=[a + b for a, b in zip(self.biases, other.biases)],
        )

    def scaled(self, factor: float) -> "Grads":
        return Grads(
            weights=[factor * w for w in self.weights],
            biases=[factor * b for b in self.biases],
        )

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(w)) for w in self.weights) and all(
            np.all(np.isfinite(b)) for b in self.biases
        )


@dataclass
class ForwardCache:
    version: int
    x: np.ndarray
    hs: list[np.ndarray]  # post-activation output of every layer, last entry is y


def zero_grads(net: Mlp) -> Grads:
    return Grads(
        weights=[np.zeros_like(w) for w in net.weights],
        biases=[np.zeros_like(b) for b in net.biases],
    )


def save_params(net: Mlp, path) -> None:
    """Debug dump: little-endian float64, row-major, weights then bias per layer."""
    parts = []
    for w, b in zip(net.weights, net.biases):
        parts.append(w.reshape(-1))
        parts.append(b)
    np.concatenate(parts).astype("<f8").tofile(path)


def init_mlp(layer_sizes: list[int], output_tanh: bool, rng: RandomSource) -> Mlp:
    """Glorot-range uniform weights, zero biases."""
    if len(layer_sizes) < 2:
        raise ValueError("need at least an input and an output size")
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return Mlp(weights=weights, biases=biases, output_tanh=output_tanh)


def forward(net: Mlp, x: np.ndarray) -> tuple[np.ndarray, ForwardCache]:
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[1] != net.in_dim:
        raise ValueError(f"expected batch of shape (b, {net.in_dim}), got {x.shape}")
    hs = []
    h = x
    for k, (w, b) in enumerate(zip(net.weights, net.biases)):
        a = h @ w.T + b
        last = k == net.n_layers - 1
        h = a if (last and not net.output_tanh) else np.tanh(a)
        hs.append(h)
    return hs[-1], ForwardCache(version=net.version, x=x, hs=hs)


def backward(net: Mlp, cache: ForwardCache, loss_grad: np.ndarray) -> Grads:
    """Gradients of sum(loss_grad * output) with respect to all weights and biases."""
    if cache.version != net.version:
        raise ValueError("stale forward cache: parameters were updated after the forward pass")
    loss_grad = np.asarray(loss_grad, dtype=float)
    y = cache.hs[-1]
    if loss_grad.shape != y.shape:
        raise ValueError(f"loss_grad shape {loss_grad.shape} does not match output {y.shape}")
    delta = loss_grad * (1.0 - y * y) if net.output_tanh else loss_grad
    grads = zero_grads(net)
    for k in range(net.n_layers - 1, -1, -1):
        prev = cache.x if k == 0 else cache.hs[k - 1]
        grads.weights[k] += delta.T @ prev
        grads.biases[k] += delta.sum(axis=0)
        if k > 0:
            h = cache.hs[k - 1]
            delta = (delta @ net.weights[k]) * (1.0 - h * h)
    return grads


def _require_scalar_critic(net: Mlp) -> None:
    if net.output_tanh or net.out_dim != 1:
        raise ValueError("input gradients require a linear scalar-output network")


def input_gradient(net: Mlp, x: np.ndarray) -> np.ndarray:
    """Per-sample gradient of the critic's scalar output with respect to its input."""
    _require_scalar_critic(net)
    _, cache = forward(net, x)
    d = np.ones((x.shape[0], 1))
    for k in range(net.n_layers - 1, 0, -1):
        h = cache.hs[k - 1]
        d = (d @ net.weights[k]) * (1.0 - h * h)
    return d @ net.weights[0]


def gradient_penalty_backward(net: Mlp, interpolated: np.ndarray) -> tuple[float, Grads]:
    """Mean squared deviation of the input-gradient norm from 1, and its parameter gradient.

    The parameter gradient never touches the output bias (the input gradient
    does not depend on it). A sample whose input gradient is exactly zero
    contributes the subgradient 0 at the norm kink.
    """
    _require_scalar_critic(net)
    x = np.asarray(interpolated, dtype=float)
    b = x.shape[0]
    L = net.n_layers
    _, cache = forward(net, x)
    hs = cache.hs

    # Reverse sweep of the primal network: d[k] = dD/da_k per sample.
    d = [None] * L
    d[L - 1] = np.ones((b, 1))
    for k in range(L - 1, 0, -1):
        d[k - 1] = (d[k] @ net.weights[k]) * (1.0 - hs[k - 1] * hs[k - 1])
    g = d[0] @ net.weights[0]  # (b, in), per-sample input gradient

    norms = np.linalg.norm(g, axis=1)
    penalty = float(np.mean((norms - 1.0) ** 2))

    # Descent direction of the penalty in input-gradient space, with the 1/b
    # of the mean folded in; zero-norm rows keep the zero subgradient.
    u = np.zeros_like(g)
    nz = norms > 0.0
    u[nz] = (2.0 * (norms[nz] - 1.0) / norms[nz])[:, None] * g[nz] / b

    # Tangent sweep: directional derivative of the forward pass along u.
    ta = [None] * L  # tangent pre-activations per hidden layer
    th = [None] * L  # tangent post-activations
    t_prev = u
    for k in range(L - 1):
        ta[k] = t_prev @ net.weights[k].T
        th[k] = (1.0 - hs[k] * hs[k]) * ta[k]
        t_prev = th[k]
    # The scalar u.g per sample would be th[L-2] @ W_L^T; only its parameter
    # gradient is needed.

    grads = zero_grads(net)
    hbar = [np.zeros_like(hs[k]) for k in range(L - 1)]

    # Reverse through the tangent chain.
    last_t = u if L == 1 else th[L - 2]
    grads.weights[L - 1] += last_t.sum(axis=0)[None, :]
    tbar = np.broadcast_to(net.weights[L - 1][0], (b, net.weights[L - 1].shape[1])).copy()
    for k in range(L - 2, -1, -1):
        sech2 = 1.0 - hs[k] * hs[k]
        tabar = tbar * sech2
        hbar[k] += tbar * (-2.0 * hs[k] * ta[k])
        prev_t = u if k == 0 else th[k - 1]
        grads.weights[k] += tabar.T @ prev_t
        if k > 0:
            tbar = tabar @ net.weights[k]

    # Reverse through the primal chain for the activation dependencies.
    for k in range(L - 2, -1, -1):
        abar = hbar[k] * (1.0 - hs[k] * hs[k])
        prev = x if k == 0 else hs[k - 1]
        grads.weights[k] += abar.T @ prev
        grads.biases[k] += abar.sum(axis=0)
        if k > 0:
            hbar[k - 1] += abar @ net.weights[k]

    return penalty, grads


@dataclass
class AdamState:
    m: Grads
    v: Grads
    step: int = 0
    learning_rate: float = 1e-3
    beta1: float = 0.5
    beta2: float = 0.9
    eps: float = 1e-8

    @classmethod
    def for_net(cls, net: Mlp, learning_rate=1e-3, beta1=0.5, beta2=0.9, eps=1e-8) -> "AdamState":
        return cls(
            m=zero_grads(net),
            v=zero_grads(net),
            learning_rate=learning_rate,
            beta1=beta1,
            beta2=beta2,
            eps=eps,
        )

    def copy(self) -> "AdamState":
        return AdamState(
            m=Grads([w.copy() for w in self.m.weights], [b.copy() for b in self.m.biases]),
            v=Grads([w.copy() for w in self.v.weights], [b.copy() for b in self.v.biases]),
            step=self.step,
            learning_rate=self.learning_rate,
            beta1=self.beta1,
            beta2=self.beta2,
            eps=self.eps,
        )


def adam_step(net: Mlp, grads: Grads, state: AdamState) -> tuple[Mlp, AdamState]:
    """Standard Adam update with bias correction, applied in place."""
    if not grads.all_finite():
        raise TrainingError("non-finite gradient passed to the optimizer")
    state.step += 1
    c1 = 1.0 - state.beta1 ** state.step
    c2 = 1.0 - state.beta2 ** state.step
    for params, g_list, m_list, v_list in (
        (net.weights, grads.weights, state.m.weights, state.v.weights),
        (net.biases, grads.biases, state.m.biases, state.v.biases),
    ):
        for p, g, m, v in zip(params, g_list, m_list, v_list):
            m *= state.beta1
            m += (1.0 - state.beta1) * g
            v *= state.beta2
            v += (1.0 - state.beta2) * g * g
            p -= state.learning_rate * (m / c1) / (np.sqrt(v / c2) + state.eps)
    net.version += 1
    return net, state
