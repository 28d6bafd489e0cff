"""Online event loop between a job source and a controller.

The simulator delivers each job exactly at its release, keeps the ledger of
committed calibrations and assignments, and rejects anything an online
algorithm could not legally do: starting a calibration in the past, using a
slot that is not calibrated or already taken, assigning a job twice, or
placing a job outside its window.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Protocol

from .core import (Calibration, ConfigurationError, ContractViolation, Instance, Schedule, StepResult,
                   validate_instance)

log = logging.getLogger(__name__)


class Controller(Protocol):
    def step(self, t: int, released: list) -> StepResult: ...

    def has_pending(self) -> bool: ...


@dataclass(frozen=True)
class StepRecord:
    t: int
    released: tuple
    starts: tuple
    assignments: tuple


@dataclass
class SimulationTrace:
    lam: int
    T: int
    steps: list = field(default_factory=list)
    schedule: Schedule = field(default_factory=Schedule)

    @property
    def calibration_count(self) -> int:
        return len(self.schedule.calibrations)

    def steps_until(self, t: int) -> list:
        return [s for s in self.steps if s.t <= t]


class _Ledger:
    def __init__(self, lam: int, T: int):
        self.lam = lam
        self.T = T
        self.jobs: dict = {}
        self.starts: list = []
        self.assigned: dict = {}
        self.order: list = []
        self.occupied: set = set()

    def deliver(self, t: int, jobs) -> None:
        for j in jobs:
            if j.id in self.jobs:
                raise ContractViolation(f"step {t}: job id {j.id} delivered twice")
            self.jobs[j.id] = j

    def apply(self, t: int, res: StepResult) -> None:
        for s in res.starts:
            if s < t:
                raise ContractViolation(f"step {t}: calibration start {s} lies in the past")
            self.starts.append(s)
        for a in res.assignments:
            job = self.jobs.get(a.job_id)
            if job is None:
                raise ContractViolation(f"step {t}: assignment of unreleased or unknown job {a.job_id}")
            if a.job_id in self.assigned:
                raise ContractViolation(f"step {t}: job {a.job_id} already committed, retraction not allowed")
            if not 0 <= a.calibration_index < len(self.starts):
                raise ContractViolation(f"step {t}: job {a.job_id} uses uncommitted calibration {a.calibration_index}")
            if a.time < t:
                raise ContractViolation(f"step {t}: job {a.job_id} assigned to past time {a.time}")
            s = self.starts[a.calibration_index]
            if not s + self.lam <= a.time < s + self.lam + self.T:
                raise ContractViolation(
                    f"step {t}: job {a.job_id} at {a.time} outside calibrated interval of calibration {a.calibration_index}")
            if not job.release <= a.time < job.deadline:
                raise ContractViolation(f"step {t}: job {a.job_id} at {a.time} outside window [{job.release}, {job.deadline})")
            slot = (a.calibration_index, a.time)
            if slot in self.occupied:
                raise ContractViolation(f"step {t}: slot {slot} double-booked by job {a.job_id}")
            self.occupied.add(slot)
            self.assigned[a.job_id] = a
            self.order.append(a)

    def unassigned(self) -> list:
        return sorted(i for i in self.jobs if i not in self.assigned)

    def schedule(self) -> Schedule:
        return Schedule([Calibration(s) for s in self.starts], self.order)


def run(instance: Instance, controller: Controller) -> SimulationTrace:
    """Feed ``instance`` to ``controller`` online and return the trace.

    Steps are taken at every release time and, while the controller reports
    pending work, at every following integer; an idle controller is not
    stepped, which is equivalent to stepping it with no arrivals.
    """
    report = validate_instance(instance)
    if not report.ok:
        raise ConfigurationError(f"invalid instance:\n{report}")
    lam, T = instance.lam, instance.T
    trace = SimulationTrace(lam, T)
    ledger = _Ledger(lam, T)
    if not instance.jobs:
        return trace

    by_time = defaultdict(list)
    for j in sorted(instance.jobs, key=lambda j: j.id):
        by_time[j.release].append(j)
    times = sorted(by_time)
    horizon = instance.horizon
    k = 0
    t = times[0]
    while True:
        released = by_time.get(t, [])
        if k < len(times) and times[k] == t:
            k += 1
        ledger.deliver(t, released)
        res = controller.step(t, released)
        ledger.apply(t, res)
        trace.steps.append(StepRecord(t, tuple(j.id for j in released), tuple(res.starts),
                                      tuple(res.assignments)))
        if controller.has_pending():
            t += 1
            if t >= horizon:
                raise ContractViolation(f"controller still holds jobs at the horizon {horizon}")
        elif k < len(times):
            t = times[k]
        else:
            break

    missing = ledger.unassigned()
    if missing:
        raise ContractViolation(f"jobs never scheduled: {missing}")
    trace.schedule = ledger.schedule()
    return trace


def run_reactive(adversary, controller: Controller, horizon: int) -> tuple:
    """Let ``adversary`` release jobs step by step while watching ``controller``.

    At each step the adversary sees the calibration starts the controller
    emitted in the previous step, then releases jobs. The loop stops once the
    adversary has halted and the controller is idle, or at ``horizon``.
    Returns ``(trace, instance)`` where ``instance`` holds every released job.
    """
    lam, T = adversary.lam, adversary.T
    trace = SimulationTrace(lam, T)
    ledger = _Ledger(lam, T)
    emitted: list = []
    observed: list = []
    for t in range(horizon):
        new = [] if adversary.halted else list(adversary.step(t, observed))
        for j in new:
            if j.release != t or j.deadline - j.release < 1 + lam:
                raise ContractViolation(f"adversary emitted malformed job {j} at t={t}")
        ledger.deliver(t, new)
        emitted.extend(new)
        res = controller.step(t, new)
        ledger.apply(t, res)
        trace.steps.append(StepRecord(t, tuple(j.id for j in new), tuple(res.starts),
                                      tuple(res.assignments)))
        observed = list(res.starts)
        if adversary.halted and not controller.has_pending():
            break
    missing = ledger.unassigned()
    if missing:
        raise ContractViolation(f"jobs never scheduled by horizon {horizon}: {missing}")
    trace.schedule = ledger.schedule()
    return trace, Instance(lam, T, emitted)


def prefix_consistency_check(controller_factory: Callable, instance: Instance, cut: int) -> bool:
    """True iff the controller behaves identically up to ``cut`` whether or
    not the jobs released after ``cut`` exist.

    ``controller_factory(instance)`` must build a fresh controller; it receives
    the instance so that deliberately clairvoyant fixtures can be expressed.
    """
    full = run(instance, controller_factory(instance))
    head = instance.with_jobs(j for j in instance.jobs if j.release <= cut)
    part = run(head, controller_factory(head))
    return full.steps_until(cut) == part.steps_until(cut)
