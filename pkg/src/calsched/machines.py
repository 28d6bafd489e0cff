"""Job density, offline machine optimum, and an online machine-minimization
controller for unit jobs on always-on machines."""
from __future__ import annotations

import bisect
import heapq
import math
from fractions import Fraction
from typing import Iterable, Optional

from .core import ContractViolation, Job

# certified rational bracket around e
E_LOWER = Fraction("2.718281828459045")
E_UPPER = Fraction("2.718281828459046")


class CertifiedCeilingError(ArithmeticError):
    """ceil(e*x) differs between the two rational bounds on e."""


def ceil_e(x) -> int:
    """``ceil(e * x)`` for rational ``x``, certified by both bounds on e."""
    x = Fraction(x)
    lo = math.ceil(E_LOWER * x)
    hi = math.ceil(E_UPPER * x)
    if lo != hi:
        raise CertifiedCeilingError(f"ceil(e*{x}) is {lo} or {hi} depending on the e bound")
    return hi


def density(jobs: Iterable[Job], r: int, d: int) -> Fraction:
    """Jobs whose whole window lies in ``[r, d)``, per unit of length."""
    if r >= d:
        raise ValueError(f"density needs r < d, got r={r}, d={d}")
    count = sum(1 for j in jobs if j.release >= r and j.deadline <= d)
    return Fraction(count, d - r)


def max_density(jobs: Iterable[Job]) -> tuple:
    """Maximum density and the interval attaining it.

    Only intervals with a job release on the left and a job deadline on the
    right are examined; moving either end inwards to the nearest such value
    never lowers the density. Ties keep the smallest ``r``, then smallest ``d``.
    Returns ``(Fraction(0), None)`` for no jobs.
    """
    jobs = list(jobs)
    if not jobs:
        return Fraction(0), None
    by_release = sorted(jobs, key=lambda j: j.release)
    releases = [j.release for j in by_release]
    deadlines = sorted({j.deadline for j in jobs})
    best, arg = Fraction(0), None
    for r in sorted(set(releases)):
        tail = sorted(j.deadline for j in by_release[bisect.bisect_left(releases, r):])
        for d in deadlines:
            if d <= r:
                continue
            val = Fraction(bisect.bisect_right(tail, d), d - r)
            if val > best:
                best, arg = val, (r, d)
    return best, arg


def opt_machines(jobs: Iterable[Job]) -> int:
    """Fewest always-on machines that run every job inside its window."""
    rho, _ = max_density(jobs)
    return math.ceil(rho)


def machines_needed_from(pending: Iterable[Job], t: int) -> int:
    """Machines needed to finish ``pending`` (all released) starting at ``t``."""
    deadlines = sorted(j.deadline for j in pending)
    need = 0
    for k, d in enumerate(deadlines, 1):
        if d <= t:
            raise ContractViolation(f"pending job already past its deadline {d} at t={t}")
        need = max(need, -(-k // (d - t)))
    return need


class MachineMinController:
    """Density-guided EDF with a feasibility repair.

    At each step the machine count is raised to ``ceil(e * rho)`` where ``rho``
    is the maximum density of all jobs released so far. If the pending jobs
    still cannot finish on the open machines, the count is raised to the
    smallest feasible value and ``repairs`` is incremented. Then up to
    ``opened`` pending jobs run in EDF order, machine 0 first.
    """

    def __init__(self):
        self.opened = 0
        self.released: list = []
        self.repairs = 0
        self.open_times: list = []
        self.peak_target = 0
        self._pending: list = []
        self._last_t: Optional[int] = None

    @property
    def pending(self) -> list:
        return [item[2] for item in sorted(self._pending)]

    def has_pending(self) -> bool:
        return bool(self._pending)

    def _open(self, n: int, t: int) -> None:
        self.opened += n
        self.open_times.extend([t] * n)

    def step(self, t: int, released: Iterable[Job] = ()) -> tuple:
        """Advance to ``t``. Returns ``(machines_opened_now, executed)`` where
        ``executed`` is a list of ``(job_id, machine_index, t)``."""
        if self._last_t is not None and t <= self._last_t:
            raise ContractViolation(f"machine-min step at t={t} after t={self._last_t}")
        self._last_t = t
        released = list(released)
        for j in released:
            if j.release != t:
                raise ContractViolation(f"job {j.id} delivered at t={t} but released at {j.release}")
            self.released.append(j)
            heapq.heappush(self._pending, (j.deadline, j.id, j))

        before = self.opened
        if released:
            rho, _ = max_density(self.released)
            target = ceil_e(rho)
            self.peak_target = max(self.peak_target, target)
            if target > self.opened:
                self._open(target - self.opened, t)
        if self._pending:
            need = machines_needed_from((p[2] for p in self._pending), t)
            if need > self.opened:
                self.repairs += 1
                self._open(need - self.opened, t)

        executed = []
        for m in range(min(self.opened, len(self._pending))):
            _, _, j = heapq.heappop(self._pending)
            executed.append((j.id, m, t))
        return self.opened - before, executed


def machine_min_step(controller: MachineMinController, t: int, released: Iterable[Job] = ()) -> tuple:
    return controller.step(t, released)
