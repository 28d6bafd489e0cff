"""Combined controller: route every arriving job by window length."""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable

from .algo_long import LongController
from .algo_short import ShortController
from .bounds import ratio_bound  # noqa: F401  (re-exported)
from .core import Assignment, ConfigurationError, ContractViolation, Instance, Job, StepResult, check_alpha, is_alpha_long

DEFAULT_ALPHA = Fraction(1, 3)


class JobClass(enum.Enum):
    LONG = "long"
    SHORT = "short"


def classify(job: Job, alpha, T: int, lam: int) -> JobClass:
    return JobClass.LONG if is_alpha_long(job, alpha, T, lam) else JobClass.SHORT


class IntegratedController:
    """Feeds long-window jobs to a :class:`LongController` and the rest to a
    :class:`ShortController`, merging their calibrations into one ledger.
    Within a step the long side's emissions come first."""

    name = "integrated"

    def __init__(self, alpha=DEFAULT_ALPHA, lam: int = 0, T: int = 1):
        self.alpha = check_alpha(alpha)
        self.lam = lam
        self.T = T
        self.long = LongController(self.alpha, lam, T)
        self.short = ShortController(self.alpha, lam, T)
        self.calibrations: list = []
        self.owner: list = []
        self._long_idx: list = []
        self._short_idx: list = []
        self._last_t = None

    def has_pending(self) -> bool:
        return self.long.has_pending() or self.short.has_pending()

    @property
    def long_cost(self) -> int:
        return len(self._long_idx)

    @property
    def short_cost(self) -> int:
        return len(self._short_idx)

    def _merge(self, res: StepResult, local: list, tag: str, out: StepResult) -> None:
        for s in res.starts:
            local.append(len(self.calibrations))
            self.calibrations.append(s)
            self.owner.append(tag)
            out.starts.append(s)
        for a in res.assignments:
            out.assignments.append(Assignment(a.job_id, local[a.calibration_index], a.time))

    def step(self, t: int, released: Iterable[Job] = ()) -> StepResult:
        if self._last_t is not None and t <= self._last_t:
            raise ContractViolation(f"integrated controller stepped at t={t} after t={self._last_t}")
        self._last_t = t
        longs, shorts = [], []
        for j in released:
            (longs if classify(j, self.alpha, self.T, self.lam) is JobClass.LONG else shorts).append(j)
        out = StepResult()
        if longs or self.long.has_pending():
            self._merge(self.long.step(t, longs), self._long_idx, "long", out)
        if shorts or self.short.has_pending():
            self._merge(self.short.step(t, shorts), self._short_idx, "short", out)
        return out


def integrated_step(controller: IntegratedController, t: int, released: Iterable[Job] = ()) -> StepResult:
    return controller.step(t, released)


def integrated_run(instance: Instance, alpha=DEFAULT_ALPHA) -> tuple:
    from .simulator import run

    ctrl = IntegratedController(alpha, instance.lam, instance.T)
    trace = run(instance, ctrl)
    return trace.schedule, ctrl


CONTROLLERS = {"long": LongController, "short": ShortController, "integrated": IntegratedController}


def make_controller(name: str, alpha, lam: int, T: int):
    try:
        cls = CONTROLLERS[name]
    except KeyError:
        raise ConfigurationError(f"unknown algorithm {name!r}; choose from {sorted(CONTROLLERS)}") from None
    return cls(alpha, lam, T)


def applicable(name: str, instance: Instance, alpha) -> bool:
    """The long and short controllers only accept jobs of their own class."""
    if name == "integrated":
        return True
    want = JobClass.LONG if name == "long" else JobClass.SHORT
    return all(classify(j, alpha, instance.T, instance.lam) is want for j in instance.jobs)
