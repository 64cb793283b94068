import numpy as np
import pytest

from camsim import WalkParams, simulate_walk, stationary_stats, walk_step
from camsim.walk import derive_trace_seed, noisy_estimate, noisy_population


def test_params_validation():
    with pytest.raises(ValueError):
        WalkParams(true_price=1.0, eta=0.0, sigma=1.0)
    with pytest.raises(ValueError):
        WalkParams(true_price=1.0, eta=2.0, sigma=1.0)
    with pytest.raises(ValueError):
        WalkParams(true_price=1.0, eta=0.5, sigma=-1.0)


def test_noisy_estimate_degenerate():
    rng = np.random.default_rng(0)
    assert noisy_estimate(100.0, 0.0, rng) == 100.0


def test_noisy_estimate_moments():
    rng = np.random.default_rng(1)
    draws, clamped = noisy_population(100.0, 5.0, 100_000, rng)
    assert clamped == 0
    assert abs(draws.mean() - 100.0) < 0.1
    assert abs(draws.std() - 5.0) < 0.15


def test_noisy_estimate_clamping_counted():
    rng = np.random.default_rng(2)
    draws, clamped = noisy_population(1.0, 100.0, 10_000, rng)
    assert clamped > 0
    assert (draws >= 0).all()


def test_walk_step_fixed_point():
    params = WalkParams(true_price=50.0, eta=0.3, sigma=0.0)
    rng = np.random.default_rng(0)
    assert walk_step(50.0, params, rng) == 50.0


def test_walk_step_geometric_convergence():
    params = WalkParams(true_price=100.0, eta=0.5, sigma=0.0)
    rng = np.random.default_rng(0)
    x = 0.0
    x = walk_step(x, params, rng)
    assert x == 50.0
    for _ in range(9):
        x = walk_step(x, params, rng)
    assert x == pytest.approx(100.0 * (1 - 0.5**10))


def test_walk_step_full_correction():
    params = WalkParams(true_price=42.0, eta=1.0, sigma=0.0)
    rng = np.random.default_rng(0)
    assert walk_step(7.0, params, rng) == 42.0


def test_stationary_stats_examples():
    assert stationary_stats(WalkParams(10.0, 1.0, 1.0)) == (10.0, 1.0)
    assert stationary_stats(WalkParams(10.0, 0.5, 0.0)) == (10.0, 0.0)
    mean, var = stationary_stats(WalkParams(10.0, 0.5, 2.0))
    assert var == pytest.approx(4 / 0.75)


def test_trace_reproducible():
    params = WalkParams(true_price=100.0, eta=0.4, sigma=5.0)
    a = simulate_walk(params, 1000, seed=7)
    b = simulate_walk(params, 1000, seed=7)
    assert np.array_equal(a.values, b.values)
    c = simulate_walk(params, 1000, seed=8)
    assert not np.array_equal(a.values, c.values)


def test_trace_monte_carlo_matches_stationary_stats():
    params = WalkParams(true_price=100.0, eta=0.5, sigma=10.0)
    trace = simulate_walk(params, 200_000, seed=11)
    mean, var = stationary_stats(params)
    assert trace.clamped == 0
    assert abs(trace.values.mean() - mean) < 0.01 * mean
    assert abs(trace.values.var() - var) < 0.1 * var


def test_noiseless_trace_monotone_convergence():
    params = WalkParams(true_price=100.0, eta=0.2, sigma=0.0)
    trace = simulate_walk(params, 50, seed=0, start=10.0)
    gaps = np.abs(trace.values - 100.0)
    assert (np.diff(gaps) <= 0).all()


def test_clamping_in_traces():
    params = WalkParams(true_price=1.0, eta=0.5, sigma=50.0)
    trace = simulate_walk(params, 2000, seed=3)
    assert trace.clamped > 0
    assert (trace.values >= 0).all()


def test_derive_trace_seed_deterministic():
    assert derive_trace_seed(42, 0) == derive_trace_seed(42, 0)
    assert derive_trace_seed(42, 0) != derive_trace_seed(42, 1)
    assert derive_trace_seed(42, 0) != derive_trace_seed(43, 0)


def test_noisy_endpoints_density_smoke():
    """Walk endpoints fed into a price density keep buyers at 0 far above p_max."""
    from camsim import build_price_density, buyer_count

    params = WalkParams(true_price=100.0, eta=0.5, sigma=10.0)
    endpoints = [
        float(simulate_walk(params, 500, seed=derive_trace_seed(5, i)).values[-1])
        for i in range(50)
    ]
    d = build_price_density(endpoints)
    assert buyer_count(d, d.p_max + 3 * params.sigma) == 0
