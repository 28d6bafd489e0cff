"""Reactive lower-bound adversaries and a seeded random instance generator."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import ConfigurationError, Instance, Job, check_alpha
from .machines import E_LOWER, opt_machines


class LambdaAdversary:
    """Forces any deterministic controller to pay ``lam`` calibrations while a
    single calibration would do.

    A step ``tau`` is covered when an observed calibration ``[s, s+lam+T)``
    contains it. At the first uncovered ``tau`` in ``[lam, lam*(lam+T))`` the
    adversary releases ``lam`` jobs due at ``tau+lam+1`` and stops. If every
    such step was covered, it releases one job at ``lam*(lam+T)`` with window
    ``lam+T`` and stops. Steps before ``lam`` are only watched, since the
    single optimal calibration must start at ``tau - lam >= 0``; pass
    ``scan_from=0`` to scan from the origin anyway.
    """

    def __init__(self, lam: int, T: int, scan_from: Optional[int] = None):
        if lam < 1:
            raise ConfigurationError("lambda adversary needs lambda >= 1")
        self.lam = lam
        self.T = T
        self.scan_from = lam if scan_from is None else scan_from
        self.limit = lam * (lam + T)
        self.observed: list = []
        self.emitted: list = []
        self.halted = False
        self.phase = "scan"

    @property
    def horizon(self) -> int:
        """Steps needed to play out the construction, including the tail job."""
        return (self.lam + 1) * (self.lam + self.T) + 1

    def covered(self, tau: int) -> bool:
        span = self.lam + self.T
        return any(s <= tau < s + span for s in self.observed)

    def step(self, t: int, observed_new_starts=()) -> list:
        self.observed.extend(observed_new_starts)
        if self.halted:
            return []
        jobs = []
        if t < self.limit:
            if t >= self.scan_from and not self.covered(t):
                jobs = [Job(len(self.emitted) + i, t, t + self.lam + 1) for i in range(self.lam)]
                self.phase = "burst"
                self.halted = True
        elif t == self.limit:
            jobs = [Job(len(self.emitted), t, (self.lam + 1) * (self.lam + self.T))]
            self.phase = "tail"
            self.halted = True
        self.emitted.extend(jobs)
        return jobs


def lambda_adversary_step(state: LambdaAdversary, t: int, observed_new_starts=()) -> Optional[list]:
    """Jobs released at ``t``, or None once the adversary has halted."""
    if state.halted:
        return None
    return state.step(t, observed_new_starts)


def e_offline(jobs, lam: int) -> int:
    """Exact optimum for job sets that share one deadline ``D`` with
    ``D - lam`` at most ``T``: each calibration then acts as a machine usable
    from its start+lam to ``D``, so the optimum is a machine count with
    releases raised to ``lam``."""
    if not jobs:
        return 0
    return opt_machines([Job(j.id, max(j.release, lam), j.deadline) for j in jobs])


@dataclass
class EAdversary:
    """Releases ``floor(T^2/(T-t))`` jobs due at ``T+lam`` at every ``t < T``
    and stops as soon as the controller's calibration count exceeds
    ``(e - eps)`` times the offline optimum of the jobs released so far."""

    T: int
    lam: int = 0
    eps: Fraction = Fraction(1, 10)
    offline: Optional[Callable] = None
    online: int = 0
    emitted: list = field(default_factory=list)
    trajectory: list = field(default_factory=list)
    halted: bool = False

    def __post_init__(self):
        self.eps = Fraction(self.eps)
        if self.eps <= 0:
            raise ConfigurationError("eps must be positive")
        if self.offline is None:
            self.offline = lambda jobs: e_offline(jobs, self.lam)

    @property
    def horizon(self) -> int:
        return self.T + self.lam + 1

    def batch(self, t: int) -> list:
        count = self.T * self.T // (self.T - t)
        first = len(self.emitted)
        return [Job(first + i, t, self.T + self.lam) for i in range(count)]

    def decide(self, t: int, online: int, offline: int) -> Optional[list]:
        if offline and online > (E_LOWER - self.eps) * offline:
            self.halted = True
            return None
        if t >= self.T:
            self.halted = True
            return None
        jobs = self.batch(t)
        self.emitted.extend(jobs)
        return jobs

    def step(self, t: int, observed_new_starts=()) -> list:
        self.online += len(observed_new_starts)
        if self.halted:
            return []
        off = self.offline(self.emitted) if self.emitted else 0
        if self.emitted:
            self.trajectory.append((t - 1, self.online, off, Fraction(self.online, off)))
        jobs = self.decide(t, self.online, off)
        return jobs or []


def e_adversary_step(state: EAdversary, t: int, running_online: int, running_offline: int) -> Optional[list]:
    return state.decide(t, running_online, running_offline)


@dataclass(frozen=True)
class RandomParams:
    n: int = 10
    T: int = 6
    lam: int = 1
    horizon: int = 12
    short_fraction: float = 0.5
    alpha: Fraction = Fraction(1, 3)

    def window_ranges(self) -> tuple:
        """Inclusive (lo, hi) window lengths for short and long jobs."""
        a = check_alpha(self.alpha)
        cut = math.ceil(a * self.T)
        short = (1 + self.lam, self.lam + cut - 1)
        long = (self.lam + cut, self.lam + self.T)
        return short, long


def random_instance(seed: int, params: Optional[RandomParams] = None, **overrides) -> Instance:
    """Seeded instance with uniform releases in ``[0, horizon)`` and window
    lengths drawn from the short or long range with probability
    ``short_fraction`` / ``1 - short_fraction``."""
    p = params or RandomParams()
    if overrides:
        p = RandomParams(**{**p.__dict__, **overrides})
    if p.n < 0 or p.horizon < 1 or p.T < 1 or p.lam < 0:
        raise ConfigurationError(f"inconsistent parameters {p}")
    (slo, shi), (llo, lhi) = p.window_ranges()
    if p.short_fraction > 0 and shi < slo:
        raise ConfigurationError(f"no integer short window exists for alpha*T={Fraction(p.alpha) * p.T}")
    rng = random.Random(seed)
    jobs = []
    for i in range(p.n):
        r = rng.randrange(p.horizon)
        if rng.random() < p.short_fraction:
            w = rng.randint(slo, shi)
        else:
            w = rng.randint(llo, lhi)
        jobs.append(Job(i, r, r + w))
    return Instance(p.lam, p.T, jobs)
