import json

import pytest

from calsched.adversary import RandomParams, random_instance
from calsched.algo_integrated import make_controller
from calsched.core import Assignment, Calibration, Instance, Schedule, validate_schedule
from calsched.io import (FormatError, instance_from_json, instance_to_json, read_instance, read_schedule,
                         read_trace, schedule_from_json, schedule_to_json, write_instance, write_schedule,
                         write_trace)
from calsched.simulator import run


def test_instance_round_trip_bytes(tmp_path):
    inst = random_instance(3, RandomParams(n=12, T=9, lam=2, horizon=20))
    a = tmp_path / "a.json"
    write_instance(inst, a)
    again = read_instance(a)
    assert again == inst
    b = tmp_path / "b.json"
    write_instance(again, b)
    assert a.read_bytes() == b.read_bytes()


def test_key_order():
    text = instance_to_json(Instance(1, 3, ()))
    assert list(json.loads(text)) == ["version", "lambda", "T", "jobs"]


def test_schedule_round_trip(tmp_path):
    s = Schedule([Calibration(0), Calibration(4)], [Assignment(0, 1, 5), Assignment(1, 0, 1)])
    p = tmp_path / "s.json"
    write_schedule(s, p)
    assert read_schedule(p) == s
    assert schedule_to_json(read_schedule(p)) == p.read_text()


def test_parse_is_not_validation():
    inst = Instance(1, 3, [])
    text = '{"calibrations": [{"start": 0}], "assignments": [{"job": 0, "calibration": 0, "t": 0}]}'
    s = schedule_from_json(text)
    inst = instance_from_json('{"lambda": 1, "T": 3, "jobs": [{"id": 0, "r": 0, "d": 2}]}')
    assert not validate_schedule(inst, s).ok


@pytest.mark.parametrize("text,field", [
    ('{"T": 3, "jobs": []}', "lambda"),
    ('{"lambda": 1, "T": 3, "jobs": [{"id": 0, "r": 0}]}', "jobs[0].d"),
    ('{"lambda": 1, "T": 3, "jobs": [{"id": 0, "r": -1, "d": 3}]}', "jobs[0].r"),
    ('{"lambda": 1.5, "T": 3, "jobs": []}', "lambda"),
    ('{"lambda": true, "T": 3, "jobs": []}', "lambda"),
    ('{"version": 2, "lambda": 1, "T": 3, "jobs": []}', "version"),
    ('{"lambda": 1, "T": 3, "jobs": {}}', "jobs"),
])
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(FormatError) as info:
        instance_from_json(text)
    assert info.value.field == field
    assert field in str(info.value)


def test_syntax_error_has_line():
    with pytest.raises(FormatError, match="line 2"):
        instance_from_json('{\n  "lambda": ,\n}')


def test_trace_round_trip(tmp_path):
    inst = random_instance(5, RandomParams(n=10, T=9, lam=1, horizon=15))
    trace = run(inst, make_controller("integrated", "1/3", inst.lam, inst.T))
    p = tmp_path / "t.json"
    write_trace(trace, p)
    back = read_trace(p)
    assert back.steps == trace.steps
    assert back.schedule == trace.schedule
