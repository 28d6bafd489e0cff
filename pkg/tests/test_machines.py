import math
from fractions import Fraction

import pytest

from calsched.core import ContractViolation, Job
from calsched.machines import (E_LOWER, E_UPPER, CertifiedCeilingError, MachineMinController, ceil_e,
                               density, machine_min_step, max_density, opt_machines)
from calsched.oracle import min_machines_exhaustive
from helpers import jobs_of

TRIPLE = jobs_of((0, 2), (0, 2), (1, 2))


def brute_max_density(jobs):
    best = Fraction(0)
    hi = max(j.deadline for j in jobs)
    for r in range(hi):
        for d in range(r + 1, hi + 1):
            best = max(best, Fraction(sum(r <= j.release and j.deadline <= d for j in jobs), d - r))
    return best


class TestDensity:
    def test_unit(self):
        assert density(jobs_of((0, 1)), 0, 1) == 1

    def test_triple_full_span(self):
        assert density(TRIPLE, 0, 2) == Fraction(3, 2)

    def test_triple_right_half(self):
        assert density(TRIPLE, 1, 2) == 1

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            density(TRIPLE, 2, 2)


class TestMaxDensity:
    def test_triple(self):
        assert max_density(TRIPLE) == (Fraction(3, 2), (0, 2))
        assert brute_max_density(TRIPLE) == Fraction(3, 2)

    def test_single(self):
        assert max_density(jobs_of((0, 1))) == (1, (0, 1))

    def test_five_wide(self):
        assert max_density(jobs_of(*[(0, 10)] * 5)) == (Fraction(1, 2), (0, 10))

    def test_candidates_suffice(self, rng):
        for _ in range(300):
            jobs = []
            for i in range(rng.randint(1, 7)):
                r = rng.randint(0, 8)
                jobs.append(Job(i, r, r + rng.randint(1, 5)))
            assert max_density(jobs)[0] == brute_max_density(jobs)


class TestOptMachines:
    def test_triple(self):
        assert opt_machines(TRIPLE) == 2 == min_machines_exhaustive(TRIPLE, 2)

    def test_single(self):
        assert opt_machines(jobs_of((0, 1))) == 1

    def test_ten_wide(self):
        assert opt_machines(jobs_of(*[(0, 10)] * 10)) == 1


class TestCeilE:
    def test_certified(self):
        assert ceil_e(1) == 3 and ceil_e(Fraction(1, 3)) == 1
        assert E_LOWER < Fraction(math.e) + Fraction(1, 10**15) and E_UPPER > E_LOWER

    def test_ambiguous_rejected(self):
        # x chosen so that e*x sits between the two bounds' products around an integer
        x = Fraction(10**15, 2718281828459045)
        with pytest.raises(CertifiedCeilingError):
            ceil_e(x)


class TestController:
    def test_loose_job(self):
        c = MachineMinController()
        assert machine_min_step(c, 0, jobs_of((0, 3))) == (1, [(0, 0, 0)])

    def test_tight_job_opens_three(self):
        c = MachineMinController()
        opened, ex = machine_min_step(c, 0, jobs_of((0, 1)))
        assert opened == 3 and len(ex) == 1

    def test_nothing_released(self):
        assert machine_min_step(MachineMinController(), 0, []) == (0, [])

    def test_time_must_advance(self):
        c = MachineMinController()
        c.step(0, [])
        with pytest.raises(ContractViolation):
            c.step(0, [])

    def test_release_mismatch(self):
        with pytest.raises(ContractViolation):
            MachineMinController().step(1, jobs_of((0, 3)))

    def test_never_misses(self, rng):
        for _ in range(200):
            jobs = []
            for i in range(rng.randint(1, 12)):
                r = rng.randint(0, 6)
                jobs.append(Job(i, r, r + rng.randint(1, 4)))
            c = MachineMinController()
            done = {}
            for t in range(12):
                rel = [j for j in jobs if j.release == t]
                if rel or c.has_pending():
                    for jid, m, tau in c.step(t, rel)[1]:
                        done[jid] = tau
            assert len(done) == len(jobs)
            by_id = {j.id: j for j in jobs}
            assert all(by_id[i].release <= tau < by_id[i].deadline for i, tau in done.items())
