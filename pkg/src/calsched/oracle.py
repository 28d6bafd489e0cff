"""Exact offline optima used as ground truth.

``min_calibrations`` searches calibration start multisets by iterative
deepening on their size and uses EDF as the feasibility test. Branching is
driven by EDF's first late job: if the job due at ``d`` is late on the
calibrations chosen so far, any completion needs one more start no later than
``d - lam - 1``, and since starts are picked in non-decreasing order that start
is the next one picked.

``assignment_exists`` / ``min_machines_exhaustive`` enumerate job-to-slot
assignments directly and never call EDF.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Instance, Job, Schedule, sorted_jobs
from .edf import edf_first_miss, edf_schedule

DEFAULT_NODE_BUDGET = 10**7
BUDGET_ENV = "CALSCHED_NODE_BUDGET"


def default_node_budget() -> int:
    """``$CALSCHED_NODE_BUDGET`` if set, else ``DEFAULT_NODE_BUDGET``."""
    return int(os.environ.get(BUDGET_ENV, DEFAULT_NODE_BUDGET))

EXHAUSTIVE = "exhaustive"
REDUCED = "reduced"


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int, floor: int = 0):
        super().__init__(f"search stopped after {nodes} nodes (budget {budget}); OPT >= {floor}")
        self.nodes = nodes
        self.budget = budget
        self.floor = floor


@dataclass(frozen=True)
class OracleConfig:
    candidate_mode: str = EXHAUSTIVE
    node_budget: int = field(default_factory=default_node_budget)
    produce_witness: bool = True

    def __post_init__(self):
        if self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.candidate_mode not in (EXHAUSTIVE, REDUCED):
            raise ValueError(f"unknown candidate mode {self.candidate_mode!r}")


@dataclass(frozen=True)
class OracleResult:
    count: int
    starts: tuple
    nodes: int
    schedule: Optional[Schedule] = None


def candidate_starts(instance: Instance, mode: str = EXHAUSTIVE) -> list:
    jobs, lam, T = instance.jobs, instance.lam, instance.T
    if not jobs:
        return []
    lo = max(0, min(j.release for j in jobs) - lam)
    hi = max(j.deadline for j in jobs) - lam - 1
    if mode == EXHAUSTIVE:
        return list(range(lo, hi + 1))
    starts = {j.deadline - lam - k for j in jobs for k in range(1, T + 1)}
    return sorted(s for s in starts if s >= 0)


def opt_lower_bound(instance: Instance) -> int:
    """Volume bound: for every span ``[a, b)`` between a release and a deadline,
    the jobs inside it need ``N / min(T, usable length)`` calibrations, where
    slots before ``lam`` are unusable. Never exceeds the true optimum."""
    jobs, lam, T = instance.jobs, instance.lam, instance.T
    if not jobs:
        return 0
    best = math.ceil(len(jobs) / T)
    for a in sorted({j.release for j in jobs}):
        for b in sorted({j.deadline for j in jobs}):
            if b <= a:
                continue
            n = sum(1 for j in jobs if j.release >= a and j.deadline <= b)
            usable = b - max(a, lam)
            if n and usable > 0:
                best = max(best, math.ceil(n / min(T, usable)))
    return best


def min_calibrations(instance: Instance, config: Optional[OracleConfig] = None) -> OracleResult:
    """Fewest calibrations (starts >= 0) that feasibly host every job.

    Raises :class:`BudgetExceeded` once more than ``config.node_budget``
    search nodes have been expanded.
    """
    config = config or OracleConfig()
    jobs = sorted_jobs(instance.jobs)
    if not jobs:
        return OracleResult(0, (), 0, Schedule() if config.produce_witness else None)
    lam, T = instance.lam, instance.T
    rel = [j.release for j in jobs]
    dl = [j.deadline for j in jobs]
    horizon = max(dl)
    cands = candidate_starts(instance, config.candidate_mode)
    cap = [0] * horizon
    chosen: list = []
    nodes = 0
    floor = opt_lower_bound(instance)

    def shift(s, delta):
        for tau in range(max(0, s + lam), min(horizon, s + lam + T)):
            cap[tau] += delta

    def dfs(lo_idx, remaining):
        nonlocal nodes
        nodes += 1
        if nodes > config.node_budget:
            raise BudgetExceeded(nodes, config.node_budget, floor)
        miss = edf_first_miss(rel, dl, cap)
        if miss < 0:
            return True
        if remaining == 0:
            return False
        latest = dl[miss] - lam - 1
        hi_idx = lo_idx
        while hi_idx < len(cands) and cands[hi_idx] <= latest:
            hi_idx += 1
        # later starts first: they waste the fewest slots
        for idx in range(hi_idx - 1, lo_idx - 1, -1):
            s = cands[idx]
            shift(s, 1)
            chosen.append(s)
            if dfs(idx, remaining - 1):
                return True
            chosen.pop()
            shift(s, -1)
        return False

    for c in range(floor, len(jobs) + 1):
        if dfs(0, c):
            starts = tuple(sorted(chosen))
            sched = edf_schedule(jobs, starts, lam, T).schedule if config.produce_witness else None
            return OracleResult(len(starts), starts, nodes, sched)
    raise AssertionError("one calibration per job is always feasible")


def assignment_exists(releases, deadlines, cap):
    """Backtracking search for any placement of unit jobs into per-step
    capacities ``cap``. Jobs with equal windows must be adjacent; they are
    placed at non-decreasing times to skip symmetric permutations.

    Plain loops and indexing only, so it can be compiled with numba.
    """
    n = len(releases)
    if n == 0:
        return True
    horizon = len(cap)
    left = [0] * horizon
    for t in range(horizon):
        left[t] = cap[t]
    pos = [-1] * n
    i = 0
    while i >= 0:
        if i == n:
            return True
        lower = releases[i]
        if i > 0 and releases[i] == releases[i - 1] and deadlines[i] == deadlines[i - 1]:
            lower = pos[i - 1]
        if pos[i] >= 0:
            left[pos[i]] += 1
            t = pos[i] + 1
        else:
            t = lower
        hi = deadlines[i]
        if hi > horizon:
            hi = horizon
        while t < hi and left[t] == 0:
            t += 1
        if t < hi:
            pos[i] = t
            left[t] -= 1
            i += 1
        else:
            pos[i] = -1
            i -= 1
    return False


MAX_EXHAUSTIVE_JOBS = 8
MAX_EXHAUSTIVE_HORIZON = 16


def min_machines_exhaustive(jobs: Iterable[Job], horizon: int) -> int:
    """Fewest always-on machines, found by enumerating slot assignments."""
    jobs = sorted(jobs, key=lambda j: (j.deadline, j.release, j.id))
    if len(jobs) > MAX_EXHAUSTIVE_JOBS or horizon > MAX_EXHAUSTIVE_HORIZON:
        raise ValueError(f"instance too large for enumeration ({len(jobs)} jobs, horizon {horizon}); "
                         "use machines.opt_machines")
    if not jobs:
        return 0
    rel = [j.release for j in jobs]
    dl = [j.deadline for j in jobs]
    for m in range(1, len(jobs) + 1):
        if assignment_exists(rel, dl, [m] * horizon):
            return m
    raise ValueError("some job window lies outside the horizon")
