"""Earliest-Deadline-First on a fixed set of calibrations.

For unit jobs EDF is a complete feasibility test: if any assignment of the jobs
to calibrated slots exists, EDF finds one.
"""
from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Assignment, Calibration, Job, Schedule, as_calibrations, capacity_profile, sorted_jobs

# above this horizon the dense counting path is replaced by the event-driven one
DENSE_HORIZON_LIMIT = 1 << 16


@dataclass(frozen=True)
class EdfOutcome:
    feasible: bool
    schedule: Optional[Schedule] = None
    witness: Optional[int] = None
    at_time: Optional[int] = None

    def __bool__(self):
        return self.feasible


def edf_first_miss(releases, deadlines, cap):
    """Counting EDF over a dense capacity array.

    ``releases``/``deadlines`` describe jobs already sorted in EDF priority
    order; ``cap[t]`` is the slot count at ``t`` and must cover every deadline.
    Returns the position of the first job found late, or -1 if all fit.

    Written with plain loops and indexing only so the same source can be
    compiled with numba by callers that need millions of evaluations.
    """
    n = len(releases)
    done = [False] * n
    left = n
    horizon = len(cap)
    t = 0
    while left > 0:
        if t >= horizon:
            for i in range(n):
                if not done[i]:
                    return i
        c = cap[t]
        taken = 0
        for i in range(n):
            if done[i] or releases[i] > t:
                continue
            if deadlines[i] <= t:
                return i
            if taken >= c:
                break
            done[i] = True
            taken += 1
            left -= 1
        t += 1
    return -1


def edf_schedule(jobs: Iterable[Job], calibrations: Sequence, lam: int, T: int) -> EdfOutcome:
    """Schedule unit jobs by EDF onto ``calibrations``.

    Time advances over events only: a step is taken at every release and at
    every time some calibration becomes usable; while the queue is non-empty
    and slots exist every integer step pops at least one job. At a step with
    several usable calibrations, slots are filled in order of calibrated-end
    then list position. Ties between jobs go to the smaller id.

    >>> out = edf_schedule([Job(0, 0, 3)], [Calibration(0)], lam=2, T=3)
    >>> out.feasible, out.schedule.assignments[0].time
    (True, 2)
    """
    cals = as_calibrations(calibrations)
    jobs = sorted(jobs, key=lambda j: (j.release, j.id))
    if not jobs:
        return EdfOutcome(True, Schedule(cals, ()))

    order = sorted(range(len(cals)), key=lambda k: (cals[k].start + lam + T, k))
    opens = sorted({c.start + lam for c in cals})

    queue: list = []
    out = []
    i, n = 0, len(jobs)
    t = jobs[0].release
    while True:
        while i < n and jobs[i].release <= t:
            j = jobs[i]
            heapq.heappush(queue, (j.deadline, j.id, j))
            i += 1
        if not queue:
            if i == n:
                break
            t = jobs[i].release
            continue
        d0, _, j0 = queue[0]
        if d0 <= t:
            return EdfOutcome(False, witness=j0.id, at_time=d0)
        active = [k for k in order if cals[k].start + lam <= t < cals[k].start + lam + T]
        if not active:
            nxt = [x for x in opens if x > t]
            if i < n:
                nxt.append(jobs[i].release)
            if not nxt:
                return EdfOutcome(False, witness=j0.id, at_time=d0)
            t = min(nxt)
            continue
        for k in active:
            if not queue:
                break
            _, _, j = heapq.heappop(queue)
            out.append(Assignment(j.id, k, t))
        t += 1
    return EdfOutcome(True, Schedule(cals, out))


def edf_feasible(jobs: Iterable[Job], calibrations: Sequence, lam: int, T: int) -> bool:
    """True iff ``jobs`` fit on ``calibrations`` (same answer as ``edf_schedule``)."""
    order = sorted_jobs(list(jobs))
    if not order:
        return True
    horizon = order[-1].deadline
    if horizon > DENSE_HORIZON_LIMIT:
        return edf_schedule(order, calibrations, lam, T).feasible
    starts = [c.start if isinstance(c, Calibration) else int(c) for c in calibrations]
    cap = capacity_profile(starts, lam, T, horizon)
    return edf_first_miss([j.release for j in order], [j.deadline for j in order], cap) < 0


class CapacityProfile:
    """Slot counts per time step for a growing calibration set, minus slots
    already consumed by executed jobs."""

    def __init__(self, lam: int, T: int, calibrations: Iterable = (), consumed=None):
        self.lam = lam
        self.T = T
        self.starts: list = []
        self._cap: Counter = Counter()
        self._used: Counter = Counter(consumed or {})
        for c in calibrations:
            self.add(c.start if isinstance(c, Calibration) else c)

    def add(self, start: int) -> None:
        self.starts.append(start)
        for t in range(start + self.lam, start + self.lam + self.T):
            self._cap[t] += 1

    def capacity(self, t: int) -> int:
        return self._cap[t]

    def remaining(self, t: int) -> int:
        return self._cap[t] - self._used[t]

    def consume(self, t: int, n: int = 1) -> None:
        if self.remaining(t) < n:
            raise ValueError(f"no free slot left at t={t}")
        self._used[t] += n

    def consumed(self) -> dict:
        return {t: n for t, n in self._used.items() if n}


def virtual_check(pending: Iterable[Job], profile: CapacityProfile, t: int) -> Optional[int]:
    """Trial EDF of ``pending`` on the free slots at ``t..t+lam+T`` (inclusive).

    Returns the id of a job due by ``t+lam+T+1`` that would be late, or None.
    Jobs due later may stay unplaced without counting as a violation. All
    pending jobs must already be released.
    """
    lam, T = profile.lam, profile.T
    last = t + lam + T
    cutoff = last + 1
    queue = sorted_jobs(list(pending))
    i, n = 0, len(queue)
    for tau in range(t, last + 1):
        if i == n or queue[i].deadline > cutoff:
            return None
        if queue[i].deadline <= tau:
            return queue[i].id
        for _ in range(profile.remaining(tau)):
            if i == n:
                break
            i += 1
    if i < n and queue[i].deadline <= cutoff:
        return queue[i].id
    return None
