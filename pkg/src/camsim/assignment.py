"""Globally energy-minimizing distribution of jobs among producers.

An assignment gives every job type exactly one producer, who covers the
whole system demand for that job. The net energy of an assignment is the
sum over jobs of total demand times the producer's per-unit cost.

Two routes are provided: an exhaustive enumeration over all
``players ** jobs`` candidates (the oracle, guarded by a candidate cap)
and a greedy-plus-local-search solver that scales past the cap. Both are
deterministic; ties break lexicographically by (job_id, player_id).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .core import CapacityError, EconomyConfig

ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class Assignment:
    """Map from job_id to the player_id producing that job's full demand."""

    producer_of: dict[str, str]

    def validate(self, config: EconomyConfig) -> None:
        jobs = set(config.job_ids())
        if set(self.producer_of) != jobs:
            missing = jobs - set(self.producer_of)
            extra = set(self.producer_of) - jobs
            raise ValueError(f"assignment job mismatch: missing={missing} extra={extra}")
        players = set(config.player_ids())
        for jid, pid in self.producer_of.items():
            if pid not in players:
                raise ValueError(f"job {jid!r} assigned to unknown player {pid!r}")


def cost_matrix(config: EconomyConfig) -> np.ndarray:
    """Energy to cover each job's full demand, per candidate producer.

    Rows follow sorted job_ids, columns sorted player_ids.
    """
    jobs = config.job_ids()
    players = config.player_ids()
    out = np.empty((len(jobs), len(players)))
    for r, jid in enumerate(jobs):
        d = config.total_demand(jid)
        for c, pid in enumerate(players):
            out[r, c] = d * config.cost(pid, jid)
    return out


def net_energy(assignment: Assignment, config: EconomyConfig) -> float:
    """Total system energy under one assignment."""
    assignment.validate(config)
    return float(
        sum(
            config.total_demand(jid) * config.cost(pid, jid)
            for jid, pid in assignment.producer_of.items()
        )
    )


def brute_force_min_assignment(
    config: EconomyConfig, cap: int = ENUMERATION_CAP
) -> tuple[Assignment, float]:
    """Exhaustively enumerate every producer choice per job; exact oracle.

    Raises CapacityError when players**jobs exceeds ``cap``.
    """
    jobs = config.job_ids()
    players = config.player_ids()
    if not jobs:
        return Assignment({}), 0.0
    if not players:
        raise ValueError("economy has no players")
    n_candidates = len(players) ** len(jobs)
    if n_candidates > cap:
        raise CapacityError(
            f"{len(players)}^{len(jobs)} = {n_candidates} candidates exceeds cap {cap}"
        )
    rows = cost_matrix(config)
    # Chained outer sums build the full players**jobs energy tensor; argmin's
    # first-occurrence rule is exactly the lexicographic (job, player) tie-break.
    total = functools.reduce(np.add.outer, rows)
    flat = int(np.argmin(total))
    choice = np.unravel_index(flat, total.shape)
    best = Assignment({jid: players[c] for jid, c in zip(jobs, choice)})
    return best, float(total.reshape(-1)[flat])


def _greedy(config: EconomyConfig) -> Assignment:
    players = config.player_ids()
    mat = cost_matrix(config)
    return Assignment(
        {jid: players[int(np.argmin(mat[r]))] for r, jid in enumerate(config.job_ids())}
    )


def optimal_assignment(config: EconomyConfig) -> tuple[Assignment, float]:
    """Minimize net energy: exact within the enumeration cap, local search above.

    Above the cap: greedy initialization (each job to its cheapest producer)
    then single-job reassignment moves until none improves.
    """
    jobs = config.job_ids()
    players = config.player_ids()
    if not jobs:
        return Assignment({}), 0.0
    if len(players) ** len(jobs) <= ENUMERATION_CAP:
        return brute_force_min_assignment(config)
    mat = cost_matrix(config)
    current = {jid: players[int(np.argmin(mat[r]))] for r, jid in enumerate(jobs)}
    p_index = {pid: c for c, pid in enumerate(players)}
    improved = True
    while improved:
        improved = False
        for r, jid in enumerate(jobs):
            here = mat[r, p_index[current[jid]]]
            best_c = int(np.argmin(mat[r]))
            if mat[r, best_c] < here:
                current[jid] = players[best_c]
                improved = True
    assignment = Assignment(dict(current))
    return assignment, net_energy(assignment, config)


def stationarity_check(assignment: Assignment, config: EconomyConfig) -> bool:
    """True iff no single-job reassignment strictly lowers net energy."""
    assignment.validate(config)
    for jid in config.job_ids():
        d = config.total_demand(jid)
        here = d * config.cost(assignment.producer_of[jid], jid)
        for pid in config.player_ids():
            if d * config.cost(pid, jid) < here:
                return False
    return True
