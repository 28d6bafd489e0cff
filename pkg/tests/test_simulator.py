from fractions import Fraction

import pytest

from calsched.adversary import LambdaAdversary, RandomParams, random_instance
from calsched.algo_integrated import make_controller
from calsched.algo_long import LongController
from calsched.core import (Assignment, ConfigurationError, ContractViolation, Instance, StepResult,
                           validate_schedule)
from calsched.oracle import min_calibrations
from calsched.simulator import prefix_consistency_check, run, run_reactive
from helpers import jobs_of

THIRD = Fraction(1, 3)


class Idle:
    """Never calibrates; keeps nothing pending."""

    def step(self, t, released):
        return StepResult()

    def has_pending(self):
        return False


class LateStart:
    def step(self, t, released):
        return StepResult([t - 1], [])

    def has_pending(self):
        return False


class Reactive:
    """Calibrates only when forced: one start per released job, used at once."""

    def __init__(self, lam):
        self.lam = lam
        self.k = 0
        self.todo = []

    def step(self, t, released):
        out = StepResult()
        for j in released:
            out.starts.append(t)
            out.assignments.append(Assignment(j.id, self.k, t + self.lam))
            self.k += 1
        return out

    def has_pending(self):
        return False


class Eager:
    """Starts a calibration at every step, so each step is covered by an
    earlier, already observed start."""

    def __init__(self, lam, T):
        self.lam, self.T, self.k = lam, T, 0

    def step(self, t, released):
        out = StepResult()
        out.starts.append(t)
        self.k += 1
        for j in released:
            out.starts.append(t)
            out.assignments.append(Assignment(j.id, self.k, t + self.lam))
            self.k += 1
        return out

    def has_pending(self):
        return False


class Peeking:
    """Calibrates at t=0 once per job in the whole instance, then serves each
    job with a fresh calibration like ``Reactive``."""

    def __init__(self, instance):
        self.n = len(instance.jobs)
        self.lam = instance.lam
        self.k = 0

    def step(self, t, released):
        out = StepResult([t] * self.n if t == 0 else [])
        self.k += len(out.starts)
        for j in released:
            out.starts.append(t)
            out.assignments.append(Assignment(j.id, self.k, t + self.lam))
            self.k += 1
        return out

    def has_pending(self):
        return False


def test_empty_instance():
    for name in ("long", "short", "integrated"):
        trace = run(Instance(1, 9, ()), make_controller(name, THIRD, 1, 9))
        assert trace.steps == [] and trace.calibration_count == 0


def test_single_long_job_trace(single_long):
    trace = run(single_long, LongController(THIRD, 1, 9))
    assert [s.t for s in trace.steps] == [0, 1]
    assert sorted(trace.steps[0].starts) == [0, 0, 0, 9]
    assert trace.steps[1].assignments == (Assignment(0, 0, 1),)


def test_start_in_the_past_rejected():
    with pytest.raises(ContractViolation, match="step 0"):
        run(Instance(0, 2, jobs_of((0, 3))), LateStart())


def test_unscheduled_jobs_rejected():
    with pytest.raises(ContractViolation, match="never scheduled"):
        run(Instance(0, 2, jobs_of((0, 3))), Idle())


def test_invalid_instance_rejected():
    with pytest.raises(ConfigurationError):
        run(Instance(2, 3, jobs_of((0, 2))), Idle())


def test_double_booking_rejected():
    class Greedy:
        def step(self, t, released):
            return StepResult([t], [Assignment(j.id, 0, t) for j in released])

        def has_pending(self):
            return False

    with pytest.raises(ContractViolation, match="double-booked"):
        run(Instance(0, 2, jobs_of((0, 3), (0, 3))), Greedy())


class TestReactive:
    def test_idle_controller_gets_burst_at_lambda(self):
        adv = LambdaAdversary(2, 5)
        trace, inst = run_reactive(adv, Reactive(2), adv.horizon)
        assert [(j.release, j.deadline) for j in inst.jobs] == [(2, 5), (2, 5)]
        assert trace.calibration_count >= 2
        assert min_calibrations(inst).count == 1
        assert validate_schedule(inst, trace.schedule).ok

    def test_eager_controller_gets_tail(self):
        adv = LambdaAdversary(2, 5)
        trace, inst = run_reactive(adv, Eager(2, 5), adv.horizon)
        assert adv.phase == "tail"
        assert [(j.release, j.deadline) for j in inst.jobs] == [(14, 21)]
        assert trace.calibration_count >= 2


class TestPrefix:
    def test_cut_beyond_horizon(self, single_long):
        assert prefix_consistency_check(lambda i: LongController(THIRD, 1, 9), single_long, 100)

    def test_two_bursts(self):
        inst = Instance(1, 9, jobs_of(*([(0, 5)] * 3 + [(20, 25)] * 3)))
        for cut in (0, 5, 19, 20):
            assert prefix_consistency_check(lambda i: LongController(THIRD, 1, 9), inst, cut)

    def test_peeking_fixture_is_caught(self):
        inst = Instance(0, 3, jobs_of((0, 2), (5, 7)))
        assert not prefix_consistency_check(Peeking, inst, 0)


def test_ledger_conservation(rng):
    for seed in range(50):
        inst = random_instance(seed, RandomParams(n=20, T=9, lam=seed % 3, horizon=20))
        trace = run(inst, make_controller("integrated", THIRD, inst.lam, inst.T))
        assert trace.calibration_count == sum(len(s.starts) for s in trace.steps)
