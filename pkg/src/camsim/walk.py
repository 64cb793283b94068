"""Noisy price estimation as a mean-reverting random walk.

Players do not know true prices; each carries a Gaussian-noised estimate
that drifts back toward the true value over time:

    x[t+1] = (1 - eta) * x[t] + eta * true_price + sigma * z[t]

For 0 < eta < 2 the recursion is stable with stationary mean equal to the
true price and stationary variance sigma^2 / (eta * (2 - eta)), which
serves as the closed-form oracle for simulated traces. Estimates are
prices, so negative values are clamped to zero and counted; stationary
statistics are only trusted when sigma is small against the true price
and clamping is vanishingly rare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter


@dataclass(frozen=True)
class WalkParams:
    true_price: float
    eta: float
    sigma: float

    def __post_init__(self) -> None:
        if not (0 < self.eta < 2):
            raise ValueError(f"eta must be in (0, 2), got {self.eta}")
        if self.sigma < 0 or not math.isfinite(self.sigma):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")
        if self.true_price < 0 or not math.isfinite(self.true_price):
            raise ValueError(f"true_price must be finite and >= 0, got {self.true_price}")


@dataclass(frozen=True)
class WalkTrace:
    values: np.ndarray
    seed: int
    clamped: int


def noisy_estimate(true_price: float, sigma: float, rng: np.random.Generator) -> float:
    """One Gaussian mis-estimate of a true price, clamped to 0."""
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    return max(0.0, true_price + sigma * rng.standard_normal())


def noisy_population(
    true_price: float, sigma: float, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, int]:
    """A population of mis-estimates plus the number of clamp events."""
    raw = true_price + sigma * rng.standard_normal(count)
    clamped = int(np.count_nonzero(raw < 0))
    return np.maximum(raw, 0.0), clamped


def walk_step(current: float, params: WalkParams, rng: np.random.Generator) -> float:
    """Advance the estimate one step toward the true price, with noise."""
    nxt = (
        (1.0 - params.eta) * current
        + params.eta * params.true_price
        + params.sigma * rng.standard_normal()
    )
    return max(0.0, nxt)


def simulate_walk(
    params: WalkParams, steps: int, seed: int, start: float | None = None
) -> WalkTrace:
    """Generate a reproducible trace of ``steps`` values after ``start``.

    Fast path runs the whole AR(1) recursion through an IIR filter; only
    if that trajectory would dip below zero is the stepwise loop (which
    applies and counts the clamp) used instead.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    x0 = params.true_price if start is None else start
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    noise = params.sigma * rng.standard_normal(steps)
    drive = params.eta * params.true_price + noise
    zi = np.array([(1.0 - params.eta) * x0])
    values, _ = lfilter([1.0], [1.0, -(1.0 - params.eta)], drive, zi=zi)
    if not (values < 0).any():
        return WalkTrace(values=values, seed=seed, clamped=0)
    out = np.empty(steps)
    current = x0
    clamped = 0
    for t in range(steps):
        current = (1.0 - params.eta) * current + drive[t]
        if current < 0:
            current = 0.0
            clamped += 1
        out[t] = current
    return WalkTrace(values=out, seed=seed, clamped=clamped)


def stationary_stats(params: WalkParams) -> tuple[float, float]:
    """Exact stationary mean and variance of the unclamped recursion."""
    variance = params.sigma**2 / (params.eta * (2.0 - params.eta))
    return params.true_price, variance


def derive_trace_seed(master_seed: int, trace_index: int) -> int:
    """Deterministic per-trace seed from a master seed and trace index."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(2, trace_index))
    return int(ss.generate_state(1)[0])
