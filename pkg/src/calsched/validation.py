"""Input coercion shared by the estimator layer and the command line."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .core import ConfigurationError, Instance, Job, check_alpha

_ALPHA = re.compile(r"\s*(\d+)\s*/\s*(\d+)\s*$")


def parse_alpha(value) -> Fraction:
    """Exact alpha from a Fraction, an int pair or a ``"p/q"`` string.

    Floats and decimal strings are refused so no rounding sneaks in.

    >>> parse_alpha("1/3")
    Fraction(1, 3)
    """
    if isinstance(value, float):
        raise ConfigurationError(f"alpha must be exact, got float {value!r}; write it as 'p/q'")
    if isinstance(value, str):
        m = _ALPHA.match(value)
        if not m:
            raise ConfigurationError(f"alpha must look like 'p/q', got {value!r}")
        if int(m.group(2)) == 0:
            raise ConfigurationError("alpha denominator is zero")
        value = Fraction(int(m.group(1)), int(m.group(2)))
    elif isinstance(value, tuple):
        value = Fraction(*value)
    return check_alpha(value)


def check_instance(X) -> Instance:
    """Accept an Instance, a mapping in file layout, a path, or
    ``(lam, T, jobs)`` where jobs are ``(r, d)`` or ``(id, r, d)`` tuples."""
    from .io import instance_from_json, read_instance

    if isinstance(X, Instance):
        return X
    if isinstance(X, (str, Path)):
        return read_instance(X)
    if isinstance(X, dict):
        return instance_from_json(json.dumps(X))
    if isinstance(X, (tuple, list)) and len(X) == 3:
        lam, T, raw = X
        jobs = []
        for i, j in enumerate(raw):
            if isinstance(j, Job):
                jobs.append(j)
            elif len(j) == 2:
                jobs.append(Job(i, int(j[0]), int(j[1])))
            else:
                jobs.append(Job(int(j[0]), int(j[1]), int(j[2])))
        return Instance(int(lam), int(T), jobs)
    raise ConfigurationError(f"cannot interpret {type(X).__name__} as an instance")
