"""Online controller for jobs with short windows.

Each job ``(r, d)`` is first reduced to ``(r, d - lam)``, an instance with
instant calibration. Reduced jobs are grouped by release into buckets of width
``w = T - floor(alpha*T)``; every reduced window then fits in a length-``T``
span starting at the bucket's left edge, so within a bucket a calibration
behaves like an always-on machine. Each bucket runs its own
:class:`MachineMinController`; a machine opened at ``t`` becomes a calibration
started at ``t`` and a reduced job run at ``tau`` is committed to real time
``tau + lam`` on that calibration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .core import (Assignment, ConfigurationError, ContractViolation, Instance, Job, Schedule,
                   StepResult, check_alpha, is_alpha_long)
from .machines import MachineMinController


def reduce_job(job: Job, lam: int) -> Job:
    if job.deadline - job.release < 1 + lam:
        raise ContractViolation(f"job {job.id} window {job.window} < 1+lambda")
    return Job(job.id, job.release, job.deadline - lam)


def bucket_width(T: int, alpha) -> int:
    alpha = check_alpha(alpha)
    w = T - math.floor(alpha * T)
    if w < 1:
        raise ConfigurationError(f"bucket width T - floor(alpha*T) is {w} for T={T}, alpha={alpha}")
    return w


def bucket_index(release: int, T: int, alpha) -> int:
    return release // bucket_width(T, alpha)


def lift_schedule(reduced: Schedule, lam: int) -> Schedule:
    """Shift every assignment of a zero-activation schedule by ``lam`` steps."""
    return Schedule(reduced.calibrations,
                    [Assignment(a.job_id, a.calibration_index, a.time + lam)
                     for a in reduced.assignments])


@dataclass
class Bucket:
    index: int
    width: int
    controller: MachineMinController = field(default_factory=MachineMinController)
    # global calibration index of each machine, in opening order
    calibration_indices: list = field(default_factory=list)
    job_ids: list = field(default_factory=list)

    @property
    def calibration_starts(self) -> list:
        return list(self.controller.open_times)


class ShortController:
    name = "short"

    def __init__(self, alpha, lam: int, T: int, strict: bool = True):
        # strict=False drops the class check and keeps only the bucket-span check
        self.alpha = check_alpha(alpha)
        self.strict = strict
        self.lam = lam
        self.T = T
        self.width = bucket_width(T, self.alpha)
        self.buckets: dict = {}
        self.calibrations: list = []
        self._last_t = None

    def has_pending(self) -> bool:
        return any(b.controller.has_pending() for b in self.buckets.values())

    @property
    def repairs(self) -> int:
        return sum(b.controller.repairs for b in self.buckets.values())

    def _route(self, job: Job) -> tuple:
        if self.strict and is_alpha_long(job, self.alpha, self.T, self.lam):
            raise ContractViolation(f"job {job.id} is {self.alpha}-long, not short")
        reduced = reduce_job(job, self.lam)
        k = reduced.release // self.width
        lo = k * self.width
        if not (lo <= reduced.release and reduced.deadline <= lo + self.T):
            raise ContractViolation(f"reduced job {job.id} leaves bucket span [{lo}, {lo + self.T})")
        return k, reduced

    def step(self, t: int, released: Iterable[Job] = ()) -> StepResult:
        if self._last_t is not None and t <= self._last_t:
            raise ContractViolation(f"short controller stepped at t={t} after t={self._last_t}")
        self._last_t = t
        arrivals: dict = {}
        for j in released:
            k, reduced = self._route(j)
            if k not in self.buckets:
                self.buckets[k] = Bucket(k, self.width)
            self.buckets[k].job_ids.append(j.id)
            arrivals.setdefault(k, []).append(reduced)

        out = StepResult()
        for k in sorted(self.buckets):
            b = self.buckets[k]
            if k not in arrivals and not b.controller.has_pending():
                continue
            opened, executed = b.controller.step(t, arrivals.get(k, ()))
            for _ in range(opened):
                b.calibration_indices.append(len(self.calibrations))
                self.calibrations.append(t)
                out.starts.append(t)
            for job_id, machine, tau in executed:
                out.assignments.append(
                    Assignment(job_id, b.calibration_indices[machine], tau + self.lam))
        return out


def short_step(controller: ShortController, t: int, released: Iterable[Job] = ()) -> StepResult:
    return controller.step(t, released)


def short_run(instance: Instance, alpha) -> tuple:
    """Run the short-window controller; returns ``(schedule, controller)``."""
    from .simulator import run

    ctrl = ShortController(alpha, instance.lam, instance.T)
    trace = run(instance, ctrl)
    return trace.schedule, ctrl
