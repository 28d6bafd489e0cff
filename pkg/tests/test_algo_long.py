from fractions import Fraction

import pytest

from calsched.algo_long import LongController, long_run, long_step
from calsched.core import ContractViolation, Instance, validate_schedule
from calsched.edf import CapacityProfile, virtual_check
from calsched.oracle import min_calibrations
from helpers import jobs_of

THIRD = Fraction(1, 3)


def test_single_job_one_round():
    c = LongController(THIRD, 1, 9)
    res = long_step(c, 0, jobs_of((0, 4)))
    assert sorted(res.starts) == [0, 0, 0, 9]
    assert c.rounds == 1
    assert c.has_pending()  # nothing is usable before t=1
    res = long_step(c, 1, [])
    assert [(a.job_id, a.time) for a in res.assignments] == [(0, 1)]


def test_quiet_steps():
    c = LongController(THIRD, 1, 9)
    for t in range(5):
        res = c.step(t, [])
        assert res.starts == [] and res.assignments == []


def test_ten_copies_need_two_rounds():
    c = LongController(THIRD, 1, 9)
    res = c.step(0, jobs_of(*[(0, 4)] * 10))
    assert sorted(res.starts) == [0] * 6 + [9] * 2
    assert c.rounds == 2
    # the reason: slots 1..3 give 3*3 = 9 < 10 after one round
    one = CapacityProfile(1, 9, [0, 0, 0, 9])
    assert sum(one.remaining(t) for t in (1, 2, 3)) == 9
    assert virtual_check(jobs_of(*[(0, 4)] * 10), one, 0) is not None


def test_run_single_and_empty(single_long):
    sched, rounds = long_run(single_long, THIRD)
    assert rounds == 1 and sched.cost == 4
    sched, rounds = long_run(Instance(1, 9, ()), THIRD)
    assert rounds == 0 and sched.cost == 0


def test_rejects_short_job():
    with pytest.raises(ContractViolation):
        LongController(THIRD, 1, 9).step(0, jobs_of((0, 3)))


def test_rounds_within_opt(rng):
    from calsched.adversary import RandomParams, random_instance

    for seed in range(60):
        a = rng.choice([Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)])
        inst = random_instance(seed, RandomParams(n=rng.randint(1, 6), T=rng.randint(2, 6), lam=rng.randint(0, 2),
                                                  horizon=8, short_fraction=0, alpha=a))
        sched, rounds = long_run(inst, a)
        assert validate_schedule(inst, sched).ok
        assert rounds <= min_calibrations(inst).count
