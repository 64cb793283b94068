"""Walkthrough of a tiny three-player, two-job economy.

P1 is twice as efficient at job x, P2 twice as efficient at job y, and P3
is average at both. Run it and watch the specialists undercut P3, sell to
everyone, and pocket the spread while total system energy drops below
what autarky would cost.

    python3 demos/three_player_economy.py
"""

from camsim import (
    EconomyConfig,
    JobSpec,
    Player,
    autarky_energy,
    break_even_price,
    build_price_density,
    optimal_assignment,
    optimal_price,
    run_market,
)

jobs = [JobSpec("x", 10.0), JobSpec("y", 10.0)]
players = [
    Player("P1", {"x": 2.0, "y": 1.0}),
    Player("P2", {"x": 1.0, "y": 2.0}),
    Player("P3", {"x": 1.0, "y": 1.0}),
]
config = EconomyConfig(
    players=players,
    jobs=jobs,
    demand={(p.player_id, j.job_id): 1 for p in players for j in jobs},
    price_quantum=1.0,
)

print("Energy cost of each job (workload / efficiency):")
for pid in config.player_ids():
    costs = {jid: config.cost(pid, jid) for jid in config.job_ids()}
    print(f"  {pid}: {costs}")
print(f"Autarky energy (everyone self-produces): {autarky_energy(config):.1f}")

assignment, energy = optimal_assignment(config)
print(f"\nEnergy-minimizing producer per job: {assignment.producer_of} "
      f"(total {energy:.1f})")

print("\nHow P1 prices job x against the other break-evens:")
others = [break_even_price(config.cost(p, "x"), config.conversion) for p in ("P2", "P3")]
density = build_price_density(others)
be = break_even_price(config.cost("P1", "x"), config.conversion)
sol = optimal_price(be, density, config.price_quantum)
print(f"  competitor break-evens: {others}, posted price {sol.price:.0f}, "
      f"{sol.buyers} buyers, profit {sol.profit:.0f}")

state, reports = run_market(config, rounds=5, initial_money=100.0)
last = reports[-1]
print(f"\nAfter 5 rounds ({last.n_trades} trades/round):")
for pid in config.player_ids():
    print(f"  {pid}: money {state.money[pid]:8.1f}  "
          f"energy spent {state.energy_spent[pid]:6.1f}")
print(f"Round energy expended {last.energy_expended_total:.1f} + saved "
      f"{last.energy_saved_total:.1f} = autarky {last.autarky_energy:.1f}")
