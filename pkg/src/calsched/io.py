"""JSON file formats for instances, schedules and traces.

Output is byte-stable: fixed key order, one job / calibration / assignment
per line, trailing newline. Parsing checks shape and types only; semantic
checks belong to :func:`calsched.core.validate_schedule`.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import Assignment, Calibration, Instance, Job, Schedule

FORMAT_VERSION = 1

PathLike = Union[str, Path]


class FormatError(ValueError):
    """Malformed file; ``field`` is a path such as ``jobs[2].d``."""

    def __init__(self, field: str, message: str, source: str = ""):
        where = f"{source}: " if source else ""
        super().__init__(f"{where}{field}: {message}" if field else f"{where}{message}")
        self.field = field


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("", f"line {exc.lineno} column {exc.colno}: {exc.msg}", source) from None


def _int(obj: dict, key: str, path: str, source: str, minimum: int = 0) -> int:
    where = f"{path}.{key}" if path else key
    if key not in obj:
        raise FormatError(where, "missing field", source)
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(where, f"expected integer, got {v!r}", source)
    if v < minimum:
        raise FormatError(where, f"must be >= {minimum}, got {v}", source)
    return v


def _list(obj: dict, key: str, source: str) -> list:
    if key not in obj:
        raise FormatError(key, "missing field", source)
    v = obj[key]
    if not isinstance(v, list):
        raise FormatError(key, "expected a list", source)
    for i, item in enumerate(v):
        if not isinstance(item, dict):
            raise FormatError(f"{key}[{i}]", "expected an object", source)
    return v


def _check_version(doc: dict, source: str) -> None:
    if "version" in doc and doc["version"] != FORMAT_VERSION:
        raise FormatError("version", f"unsupported version {doc['version']!r} (expected {FORMAT_VERSION})", source)


def _root(text: str, source: str) -> dict:
    doc = _loads(text, source)
    if not isinstance(doc, dict):
        raise FormatError("", "top level must be an object", source)
    _check_version(doc, source)
    return doc


def instance_from_json(text: str, source: str = "") -> Instance:
    doc = _root(text, source)
    lam = _int(doc, "lambda", "", source)
    T = _int(doc, "T", "", source, minimum=1)
    jobs = []
    for i, item in enumerate(_list(doc, "jobs", source)):
        p = f"jobs[{i}]"
        jobs.append(Job(_int(item, "id", p, source), _int(item, "r", p, source), _int(item, "d", p, source)))
    return Instance(lam, T, jobs)


def schedule_from_json(text: str, source: str = "") -> Schedule:
    doc = _root(text, source)
    cals = [Calibration(_int(c, "start", f"calibrations[{i}]", source))
            for i, c in enumerate(_list(doc, "calibrations", source))]
    assigns = []
    for i, a in enumerate(_list(doc, "assignments", source)):
        p = f"assignments[{i}]"
        assigns.append(Assignment(_int(a, "job", p, source), _int(a, "calibration", p, source),
                                  _int(a, "t", p, source)))
    return Schedule(cals, assigns)


def _rows(items) -> str:
    if not items:
        return "[]"
    return "[\n" + ",\n".join("    " + json.dumps(x) for x in items) + "\n  ]"


def instance_to_json(instance: Instance) -> str:
    jobs = [{"id": j.id, "r": j.release, "d": j.deadline} for j in instance.jobs]
    return (f'{{\n  "version": {FORMAT_VERSION},\n  "lambda": {instance.lam},\n  "T": {instance.T},\n'
            f'  "jobs": {_rows(jobs)}\n}}\n')


def _assignment_dict(a: Assignment) -> dict:
    return {"job": a.job_id, "calibration": a.calibration_index, "t": a.time}


def schedule_to_json(schedule: Schedule) -> str:
    cals = [{"start": c.start} for c in schedule.calibrations]
    assigns = [_assignment_dict(a) for a in schedule.assignments]
    return (f'{{\n  "version": {FORMAT_VERSION},\n  "calibrations": {_rows(cals)},\n'
            f'  "assignments": {_rows(assigns)}\n}}\n')


def trace_to_json(trace) -> str:
    steps = [{"t": s.t, "released": list(s.released), "starts": list(s.starts),
              "assignments": [_assignment_dict(a) for a in s.assignments]} for s in trace.steps]
    return (f'{{\n  "version": {FORMAT_VERSION},\n  "lambda": {trace.lam},\n  "T": {trace.T},\n'
            f'  "steps": {_rows(steps)}\n}}\n')


def trace_from_json(text: str, source: str = ""):
    from .simulator import SimulationTrace, StepRecord

    doc = _root(text, source)
    trace = SimulationTrace(_int(doc, "lambda", "", source), _int(doc, "T", "", source, minimum=1))
    starts, order = [], []
    for i, s in enumerate(_list(doc, "steps", source)):
        p = f"steps[{i}]"
        assigns = tuple(Assignment(_int(a, "job", p, source), _int(a, "calibration", p, source),
                                   _int(a, "t", p, source)) for a in s.get("assignments", []))
        rec = StepRecord(_int(s, "t", p, source), tuple(s.get("released", [])), tuple(s.get("starts", [])), assigns)
        trace.steps.append(rec)
        starts.extend(rec.starts)
        order.extend(assigns)
    trace.schedule = Schedule([Calibration(x) for x in starts], order)
    return trace


def read_instance(path: PathLike) -> Instance:
    return instance_from_json(Path(path).read_text(encoding="utf-8"), str(path))


def write_instance(instance: Instance, path: PathLike) -> None:
    Path(path).write_text(instance_to_json(instance), encoding="utf-8")


def read_schedule(path: PathLike) -> Schedule:
    return schedule_from_json(Path(path).read_text(encoding="utf-8"), str(path))


def write_schedule(schedule: Schedule, path: PathLike) -> None:
    Path(path).write_text(schedule_to_json(schedule), encoding="utf-8")


def write_trace(trace, path: PathLike) -> None:
    Path(path).write_text(trace_to_json(trace), encoding="utf-8")


def read_trace(path: PathLike):
    return trace_from_json(Path(path).read_text(encoding="utf-8"), str(path))
