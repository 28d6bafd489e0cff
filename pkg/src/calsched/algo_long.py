"""Online controller for jobs with long windows.

At each step the controller checks whether the jobs due within the next
``lam+T+1`` steps still fit on its calibrations; while they don't, it starts a
round: ``ceil(1/alpha)`` calibrations now plus one more ``T`` steps later.
Jobs are then executed EDF into the free slots at the current step.
"""
from __future__ import annotations

import heapq
import math
from typing import Iterable

from .core import (Assignment, ContractViolation, Instance, Job, StepResult, check_alpha,
                   is_alpha_long)
from .edf import CapacityProfile, virtual_check


class LongController:
    name = "long"

    def __init__(self, alpha, lam: int, T: int):
        self.alpha = check_alpha(alpha)
        self.lam = lam
        self.T = T
        self.per_round = math.ceil(1 / self.alpha)
        self.profile = CapacityProfile(lam, T)
        self.rounds = 0
        # (t, witness job id) for every round started
        self.round_log: list = []
        self._queue: list = []
        self._last_t = None

    @property
    def calibrations(self) -> list:
        return self.profile.starts

    @property
    def queue(self) -> list:
        return [item[2] for item in sorted(self._queue)]

    def has_pending(self) -> bool:
        return bool(self._queue)

    def step(self, t: int, released: Iterable[Job] = ()) -> StepResult:
        if self._last_t is not None and t <= self._last_t:
            raise ContractViolation(f"long controller stepped at t={t} after t={self._last_t}")
        self._last_t = t
        for j in released:
            if not is_alpha_long(j, self.alpha, self.T, self.lam):
                raise ContractViolation(f"job {j.id} is not {self.alpha}-long")
            heapq.heappush(self._queue, (j.deadline, j.id, j))

        out = StepResult()
        budget = max(1, len(self._queue))
        while True:
            bad = virtual_check(self.queue, self.profile, t)
            if bad is None:
                break
            if budget == 0:
                raise ContractViolation(f"round loop did not settle at t={t}")
            budget -= 1
            new = [t] * self.per_round + [t + self.T]
            for s in new:
                self.profile.add(s)
            out.starts.extend(new)
            self.rounds += 1
            self.round_log.append((t, bad))

        starts = self.profile.starts
        lo = self.lam
        active = [k for k, s in enumerate(starts) if s + lo <= t < s + lo + self.T]
        active.sort(key=lambda k: (starts[k], k))
        for k in active:
            if not self._queue:
                break
            _, _, j = heapq.heappop(self._queue)
            self.profile.consume(t)
            out.assignments.append(Assignment(j.id, k, t))
        return out


def long_step(controller: LongController, t: int, released: Iterable[Job] = ()) -> StepResult:
    return controller.step(t, released)


def long_run(instance: Instance, alpha) -> tuple:
    """Run the long-window controller over ``instance``; returns ``(schedule, rounds)``."""
    from .simulator import run

    ctrl = LongController(alpha, instance.lam, instance.T)
    trace = run(instance, ctrl)
    return trace.schedule, ctrl.rounds
