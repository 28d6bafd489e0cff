import itertools

import pytest

from calsched.core import Calibration, Job, validate_schedule, Instance
from calsched.edf import CapacityProfile, edf_feasible, edf_schedule, virtual_check
from calsched.oracle import assignment_exists
from helpers import brute_capacity, jobs_of


def enumerate_feasible(jobs, starts, lam, T):
    """Try every slot tuple; no EDF involved."""
    horizon = max(j.deadline for j in jobs)
    slots = [(k, t) for k, s in enumerate(starts) for t in range(s + lam, min(s + lam + T, horizon))]
    for pick in itertools.permutations(slots, len(jobs)):
        if all(j.release <= t < j.deadline for j, (_, t) in zip(jobs, pick)):
            return True
    return False


class TestEdfSchedule:
    def test_empty(self):
        out = edf_schedule([], [Calibration(0)], 0, 1)
        assert out.feasible and out.schedule.assignments == ()

    def test_first_calibrated_slot(self):
        out = edf_schedule([Job(0, 0, 3)], [Calibration(0)], 2, 3)
        assert out.feasible
        assert out.schedule.assignments[0].time == 2

    def test_three_jobs_two_calibrations(self):
        jobs = [Job(0, 0, 1), Job(1, 0, 2), Job(2, 1, 2)]
        out = edf_schedule(jobs, [0, 1], 0, 2)
        assert out.feasible
        times = {a.job_id: a.time for a in out.schedule.assignments}
        assert times == {0: 0, 1: 1, 2: 1}
        assert enumerate_feasible(jobs, [0, 1], 0, 2)
        assert validate_schedule(Instance(0, 2, jobs), out.schedule).ok

    def test_infeasible_reports_witness(self):
        out = edf_schedule(jobs_of((0, 2), (0, 2)), [0], 1, 3)
        assert not out.feasible
        assert out.witness in (0, 1) and out.at_time == 2


class TestEdfFeasible:
    def test_single_job_minimal_window(self):
        for lam in range(4):
            assert edf_feasible([Job(0, 0, lam + 1)], [0], lam, 2)

    def test_two_jobs_one_usable_slot(self):
        jobs = jobs_of((0, 2), (0, 2))
        assert not edf_feasible(jobs, [0], 1, 3)
        assert not enumerate_feasible(jobs, [0], 1, 3)

    def test_no_calibrations(self):
        assert not edf_feasible([Job(0, 0, 3)], [], 0, 3)

    def test_sparse_path_agrees(self, rng, monkeypatch):
        import calsched.edf as edf_mod

        cases = []
        for _ in range(300):
            lam, T = rng.randint(0, 2), rng.randint(1, 4)
            jobs = []
            for i in range(rng.randint(1, 5)):
                r = rng.randint(0, 6)
                jobs.append(Job(i, r, r + lam + 1 + rng.randint(0, 3)))
            starts = [rng.randint(0, 8) for _ in range(rng.randint(0, 3))]
            cases.append((jobs, starts, lam, T, edf_feasible(jobs, starts, lam, T)))
        monkeypatch.setattr(edf_mod, "DENSE_HORIZON_LIMIT", 0)
        for jobs, starts, lam, T, want in cases:
            assert edf_mod.edf_feasible(jobs, starts, lam, T) == want

    def test_against_enumeration_small(self, rng):
        for _ in range(400):
            lam, T = rng.randint(0, 2), rng.randint(1, 3)
            jobs = []
            for i in range(rng.randint(1, 4)):
                r = rng.randint(0, 4)
                jobs.append(Job(i, r, r + lam + 1 + rng.randint(0, 2)))
            starts = [rng.randint(0, 5) for _ in range(rng.randint(0, 2))]
            assert edf_feasible(jobs, starts, lam, T) == enumerate_feasible(jobs, starts, lam, T)


class TestVirtualCheck:
    def test_zero_capacity(self):
        assert virtual_check([Job(0, 0, 2)], CapacityProfile(1, 3), 0) == 0

    def test_beyond_cutoff(self):
        # deadline 9 > 0+1+3+1
        assert virtual_check([Job(0, 0, 9)], CapacityProfile(1, 3), 0) is None

    def test_one_slot_two_jobs(self):
        prof = CapacityProfile(1, 3, [0])
        assert virtual_check(jobs_of((0, 2), (0, 2)), prof, 0) in (0, 1)
        # slot 1 is the only slot before 2
        assert [t for t in range(2) if brute_capacity([0], 1, 3, t)] == [1]

    def test_consumed_slots_are_not_reused(self):
        prof = CapacityProfile(0, 2, [0])
        assert virtual_check([Job(0, 0, 1)], prof, 0) is None
        prof.consume(0)
        assert virtual_check([Job(1, 0, 1)], prof, 0) == 1

    def test_consume_guard(self):
        with pytest.raises(ValueError):
            CapacityProfile(0, 1).consume(0)


def test_assignment_exists_symmetry_skip_is_exact():
    # equal windows placed at non-decreasing times must not lose solutions
    assert assignment_exists([0, 0, 0], [3, 3, 3], [1, 1, 1])
    assert not assignment_exists([0, 0, 0], [3, 3, 3], [1, 0, 1])
    assert assignment_exists([0, 0, 1], [2, 2, 3], [1, 1, 1])
