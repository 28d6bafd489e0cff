"""Domain types and validation for unit-job calibration scheduling.

Time is integral. A slot at ``t`` is the half-open step ``[t, t+1)``. A
calibration started at ``s`` is activating during ``[s, s+lam)`` and usable
during ``[s+lam, s+lam+T)``; one unit job fits in each usable step.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

INT64_MAX = 2**63 - 1

# violation rule names
WINDOW_TOO_SMALL = "window < 1+lambda"
DUPLICATE_ID = "duplicate id"
NEGATIVE_FIELD = "negative field"
BAD_PARAMETER = "bad parameter"
OVERFLOW = "int64 overflow"
UNKNOWN_JOB = "unknown job"
BAD_CALIBRATION_INDEX = "calibration index out of range"
BEFORE_RELEASE = "before release"
PAST_DEADLINE = "past deadline"
NOT_CALIBRATED = "outside calibrated interval"
DOUBLE_BOOKED = "slot double-booked"
ASSIGNED_TWICE = "job assigned twice"
UNASSIGNED = "job unassigned"
NEGATIVE_START = "negative calibration start"


class ContractViolation(RuntimeError):
    """An online controller or caller broke a protocol rule."""


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Job:
    id: int
    release: int
    deadline: int

    @property
    def window(self) -> int:
        return self.deadline - self.release


@dataclass(frozen=True)
class Instance:
    lam: int
    T: int
    jobs: tuple = ()

    def __post_init__(self):
        # accept any iterable of jobs but store a tuple so instances hash
        object.__setattr__(self, "jobs", tuple(self.jobs))

    @property
    def horizon(self) -> int:
        return max((j.deadline for j in self.jobs), default=0)

    def job_map(self) -> dict:
        return {j.id: j for j in self.jobs}

    def with_jobs(self, jobs: Iterable[Job]) -> "Instance":
        return Instance(self.lam, self.T, tuple(jobs))


@dataclass(frozen=True, order=True)
class Calibration:
    start: int

    def calibrated(self, lam: int, T: int) -> range:
        """Usable time steps of this calibration."""
        return range(self.start + lam, self.start + lam + T)

    def covers(self, t: int, lam: int, T: int) -> bool:
        return self.start + lam <= t < self.start + lam + T


@dataclass(frozen=True, order=True)
class Assignment:
    job_id: int
    calibration_index: int
    time: int


@dataclass(frozen=True)
class Schedule:
    calibrations: tuple = ()
    assignments: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "calibrations", tuple(self.calibrations))
        object.__setattr__(self, "assignments", tuple(self.assignments))

    @property
    def cost(self) -> int:
        return len(self.calibrations)

    def starts(self) -> list:
        return [c.start for c in self.calibrations]


@dataclass(frozen=True)
class Violation:
    rule: str
    job_id: Optional[int] = None
    detail: str = ""

    def __str__(self):
        who = f"job {self.job_id}: " if self.job_id is not None else ""
        tail = f" ({self.detail})" if self.detail else ""
        return f"{who}{self.rule}{tail}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def rules(self) -> set:
        return {v.rule for v in self.violations}

    def add(self, rule, job_id=None, detail=""):
        self.violations.append(Violation(rule, job_id, detail))

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_instance(instance: Instance) -> ValidationReport:
    """Check parameter ranges, id uniqueness and the window assumption.

    Violations are collected, never raised. The output is sorted so it does
    not depend on the order of ``instance.jobs``.
    """
    report = ValidationReport()
    lam, T = instance.lam, instance.T
    if not _is_int(lam) or lam < 0:
        report.add(BAD_PARAMETER, detail=f"lambda={lam!r} must be an integer >= 0")
    if not _is_int(T) or T < 1:
        report.add(BAD_PARAMETER, detail=f"T={T!r} must be an integer >= 1")
    if not report.ok:
        return report

    seen = Counter(j.id for j in instance.jobs)
    for jid in sorted(i for i, k in seen.items() if k > 1):
        report.add(DUPLICATE_ID, jid, f"duplicate id {jid}")
    for j in sorted(instance.jobs):
        if not all(_is_int(v) for v in (j.id, j.release, j.deadline)):
            report.add(BAD_PARAMETER, j.id, "non-integer field")
            continue
        if j.id < 0 or j.release < 0:
            report.add(NEGATIVE_FIELD, j.id)
        if j.deadline > INT64_MAX or j.release + lam + T > INT64_MAX:
            report.add(OVERFLOW, j.id)
        if j.deadline - j.release < 1 + lam:
            report.add(WINDOW_TOO_SMALL, j.id,
                       f"d-r={j.deadline - j.release} < {1 + lam}")
    return report


def validate_schedule(instance: Instance, schedule: Schedule) -> ValidationReport:
    """Check a complete schedule against ``instance``.

    Every job must be assigned exactly once, inside its window and inside the
    calibrated interval of the referenced calibration, with no slot shared.
    """
    report = ValidationReport()
    lam, T = instance.lam, instance.T
    jobs = instance.job_map()
    cals = schedule.calibrations

    for k, c in enumerate(cals):
        if c.start < 0:
            report.add(NEGATIVE_START, detail=f"calibration {k} starts at {c.start}")
        if c.start + lam + T > INT64_MAX:
            report.add(OVERFLOW, detail=f"calibration {k}")

    used = Counter()
    assigned = Counter()
    for a in sorted(schedule.assignments):
        job = jobs.get(a.job_id)
        if job is None:
            report.add(UNKNOWN_JOB, a.job_id)
            continue
        assigned[a.job_id] += 1
        if not 0 <= a.calibration_index < len(cals):
            report.add(BAD_CALIBRATION_INDEX, a.job_id, f"index {a.calibration_index}")
            continue
        if a.time < job.release:
            report.add(BEFORE_RELEASE, a.job_id, f"t={a.time} < r={job.release}")
        if a.time + 1 > job.deadline:
            report.add(PAST_DEADLINE, a.job_id, f"t+1={a.time + 1} > d={job.deadline}")
        if not cals[a.calibration_index].covers(a.time, lam, T):
            report.add(NOT_CALIBRATED, a.job_id,
                       f"t={a.time} not in calibration {a.calibration_index}")
        used[(a.calibration_index, a.time)] += 1

    for (k, t), n in sorted(used.items()):
        if n > 1:
            report.add(DOUBLE_BOOKED, detail=f"calibration {k} at t={t} holds {n} jobs")
    for jid in sorted(jobs):
        if assigned[jid] == 0:
            report.add(UNASSIGNED, jid)
        elif assigned[jid] > 1:
            report.add(ASSIGNED_TWICE, jid)
    return report


def slot_capacity(calibrations: Iterable[Calibration], t: int, lam: int, T: int) -> int:
    """Number of calibrations usable at time ``t``."""
    return sum(1 for c in calibrations if c.start + lam <= t < c.start + lam + T)


def capacity_profile(starts: Iterable[int], lam: int, T: int, horizon: int) -> list:
    """Dense per-step slot counts on ``[0, horizon)`` for the given starts."""
    diff = [0] * (horizon + 1)
    for s in starts:
        lo = max(0, s + lam)
        hi = min(horizon, s + lam + T)
        if lo < hi:
            diff[lo] += 1
            diff[hi] -= 1
    out, run = [], 0
    for t in range(horizon):
        run += diff[t]
        out.append(run)
    return out


def as_calibrations(starts: Iterable[int]) -> list:
    return [c if isinstance(c, Calibration) else Calibration(int(c)) for c in starts]


def check_alpha(alpha) -> Fraction:
    a = Fraction(alpha)
    if not 0 < a < 1:
        raise ConfigurationError(f"alpha must lie in (0, 1), got {a}")
    return a


def sorted_jobs(jobs: Sequence[Job]) -> list:
    """Jobs in EDF priority order: deadline, then id."""
    return sorted(jobs, key=lambda j: (j.deadline, j.id))


def is_alpha_long(job: Job, alpha, T: int, lam: int) -> bool:
    """Window of at least ``alpha*T + lam`` steps, compared exactly."""
    return job.deadline - job.release >= Fraction(alpha) * T + lam


@dataclass
class StepResult:
    """What a controller emits at one time step.

    ``starts`` are new calibration starts (each >= the current step, indexed in
    emission order after all earlier ones). ``assignments`` may target the
    current step or commit a later one.
    """
    starts: list = field(default_factory=list)
    assignments: list = field(default_factory=list)
