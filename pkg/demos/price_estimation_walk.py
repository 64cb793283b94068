"""Mean-reverting price estimation walk.

Each trader's estimate of the true price relaxes toward it at rate eta
while absorbing fresh noise every step. The stationary spread around the
true price is sigma^2 / (eta * (2 - eta)): slow learners (small eta)
carry a wide, persistent error band, fast learners a narrow one.

    python3 demos/price_estimation_walk.py
"""

from camsim import WalkParams, derive_trace_seed, simulate_walk, stationary_stats

TRUE_PRICE = 100.0

for eta in (0.05, 0.3, 1.0):
    params = WalkParams(true_price=TRUE_PRICE, eta=eta, sigma=5.0)
    mean, var = stationary_stats(params)
    trace = simulate_walk(params, steps=200_000, seed=derive_trace_seed(7, 0))
    print(f"eta={eta:4.2f}  stationary sd {var ** 0.5:6.2f}  "
          f"sample mean {trace.values.mean():7.2f}  "
          f"sample sd {trace.values.std():6.2f}  "
          f"clamped at zero {trace.clamped}x")

# Independent traces from one master seed never share randomness.
a = simulate_walk(WalkParams(TRUE_PRICE, 0.3, 5.0), 5, seed=derive_trace_seed(7, 0))
b = simulate_walk(WalkParams(TRUE_PRICE, 0.3, 5.0), 5, seed=derive_trace_seed(7, 1))
print("\ntrace 0:", [f"{v:.2f}" for v in a.values])
print("trace 1:", [f"{v:.2f}" for v in b.values])
