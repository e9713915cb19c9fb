"""Upper-bound estimator for intrinsic information via channel optimization.

Minimizes I(X:Y | Zbar) over channels Z -> Zbar with multiplicative row
updates and restarts; every reported value is a certified upper bound since
it is the objective of an explicit channel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .channels import Binarization, Channel, binarize
from .dists import Alphabet, JointDistribution, marginal


@dataclass(frozen=True)
class EstimatorConfig:
    output_size: int | None = None  # defaults to the Z alphabet size
    restarts: int = 32
    max_iterations: int = 2000
    seed: int = 0
    tol: float = 1e-12
    patience: int = 50

    def __post_init__(self):
        if self.restarts < 1 or self.max_iterations < 1 or self.patience < 1:
            raise ValueError("restarts, max_iterations and patience must be >= 1")
        if self.output_size is not None and self.output_size < 1:
            raise ValueError("output_size must be >= 1")


@dataclass
class EstimateReport:
    best_value: float
    best_rows: np.ndarray
    start_values: list = field(default_factory=list)
    restart_values: list = field(default_factory=list)
    iterations: list = field(default_factory=list)
    config: EstimatorConfig | None = None

    def best_channel(self, z_alphabet: Alphabet) -> Channel:
        out = Alphabet(tuple(str(i) for i in range(self.best_rows.shape[1])))
        return Channel(z_alphabet, out, self.best_rows)

    def to_json(self) -> str:
        return json.dumps(
            {
                "best_value": self.best_value,
                "best_rows": self.best_rows.tolist(),
                "start_values": self.start_values,
                "restart_values": self.restart_values,
                "iterations": self.iterations,
                "config": None if self.config is None else vars(self.config).copy(),
            }
        )


def _objective_and_grad(p: np.ndarray, rows: np.ndarray, want_grad: bool):
    """I(X:Y|Zbar) in bits for channel `rows`, with its gradient in rows.

    p is the joint probability tensor indexed (x, y, z). The gradient entry
    for (z, zbar) is sum_xy p(x,y,z) log2( q(x,y,zbar) q(zbar)
    / (q(x,zbar) q(y,zbar)) ), the log-ratio convention that makes the
    objective's directional derivative exact.
    """
    q = np.einsum("xyz,zm->xym", p, rows)
    q_m = q.sum(axis=(0, 1))
    q_xm = q.sum(axis=1)
    q_ym = q.sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = q * q_m[None, None, :] / (q_xm[:, None, :] * q_ym[None, :, :])
        log_ratio = np.log2(ratio)
    log_ratio[~np.isfinite(log_ratio)] = 0.0
    value = float((q * log_ratio).sum())
    if not want_grad:
        return value, None
    grad = np.einsum("xyz,xym->zm", p, log_ratio)
    return value, grad


def _optimize(p: np.ndarray, rows: np.ndarray, cfg: EstimatorConfig):
    """Monotone multiplicative-update descent from a starting channel."""
    rows = rows.copy()
    value, grad = _objective_and_grad(p, rows, True)
    start_value = value
    best = value
    stale = 0
    eta = 1.0
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        improved = False
        step = eta
        scale = max(np.abs(grad).max(), 1e-300)
        for _ in range(40):
            trial = rows * np.exp(np.clip(-step * grad / scale, -500.0, 500.0))
            norms = trial.sum(axis=1, keepdims=True)
            trial = np.where(norms > 0, trial / np.maximum(norms, 1e-300), rows)
            t_value, t_grad = _objective_and_grad(p, trial, True)
            if t_value < value:
                rows, value, grad = trial, t_value, t_grad
                eta = min(step * 2.0, 1e6)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
        if best - value < cfg.tol:
            stale += 1
            if stale >= cfg.patience:
                best = min(best, value)
                break
        else:
            stale = 0
        best = min(best, value)
    return start_value, min(best, value), rows, iterations


def estimate_intrinsic(
    d: JointDistribution, cfg: EstimatorConfig = EstimatorConfig(), extra_starts=()
) -> EstimateReport:
    """Best upper bound on inf over channels of I(X:Y | channel(Z)).

    Starts from a deterministic identity-like channel, any caller-provided
    channels (e.g. a smaller optimum padded with zero columns, which makes
    the bound monotone in output size), and seeded random channels.
    """
    m3 = marginal(d, ["X", "Y", "Z"])
    p = m3.probabilities
    n_z = p.shape[2]
    n_out = cfg.output_size or n_z

    starts = []
    ident = np.zeros((n_z, n_out))
    for z in range(n_z):
        ident[z, z % n_out] = 1.0
    starts.append(ident)
    for c in extra_starts:
        rows = c.rows if isinstance(c, Channel) else np.asarray(c, dtype=float)
        if rows.shape[0] != n_z:
            raise ValueError(f"extra start has {rows.shape[0]} input rows, expected {n_z}")
        if rows.shape[1] > n_out:
            raise ValueError("extra start has more outputs than the configured size")
        if rows.shape[1] < n_out:
            rows = np.hstack([rows, np.zeros((n_z, n_out - rows.shape[1]))])
        starts.append(rows)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(max(cfg.restarts - len(starts), 0)):
        starts.append(rng.dirichlet(np.ones(n_out), size=n_z))

    report = EstimateReport(best_value=np.inf, best_rows=ident, config=cfg)
    for rows in starts:
        start_value, value, final_rows, iters = _optimize(p, rows, cfg)
        report.start_values.append(start_value)
        report.restart_values.append(value)
        report.iterations.append(iters)
        if value < report.best_value:
            report.best_value = value
            report.best_rows = final_rows
    return report


def binarized_independence_search(
    d: JointDistribution,
    n_samples: int,
    cfg: EstimatorConfig = EstimatorConfig(),
    seed: int = 0,
    binarize_x: bool = False,
    witness_starts=None,
) -> float:
    """Max over random Bob (optionally also Alice) binarizations of the
    estimated minimum conditional mutual information.

    witness_starts, if given, maps a Bob binarization to extra starting
    channels for the estimator. Returns the worst (largest) estimate; a value
    near zero on every sample supports near-independence after binarizing.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    y_alpha = d.alphabet("Y")
    x_alpha = d.alphabet("X")
    worst = 0.0
    for _ in range(n_samples):
        bob = Binarization(y_alpha, tuple(rng.uniform(size=len(y_alpha))))
        sample = binarize(d, "Y", bob)
        if binarize_x:
            alice = Binarization(x_alpha, tuple(rng.uniform(size=len(x_alpha))))
            sample = binarize(sample, "X", alice)
        extra = witness_starts(bob) if witness_starts is not None else ()
        report = estimate_intrinsic(sample, cfg, extra_starts=extra)
        worst = max(worst, report.best_value)
    return worst
