"""Competitive-ratio rows: one controller run against the oracle optimum."""
from __future__ import annotations

import csv
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .algo_integrated import applicable, make_controller
from .bounds import EBound, long_bound, ratio_bound, short_bound
from .core import Instance
from .oracle import BudgetExceeded, OracleConfig, min_calibrations
from .simulator import run

log = logging.getLogger(__name__)

COLUMNS = ("seed", "algorithm", "alpha", "lambda", "T", "n", "alg_cost", "opt", "opt_kind", "ratio", "bound", "pass")
EXACT = "exact"
LOWER_BOUND = "lower_bound"


def bound_for(algorithm: str, alpha, lam: int) -> EBound:
    if algorithm == "long":
        return long_bound(alpha)
    if algorithm == "short":
        return short_bound(alpha, lam)
    return ratio_bound(alpha, lam)


@dataclass(frozen=True)
class RatioReportRow:
    seed: str
    algorithm: str
    alpha: Fraction
    lam: int
    T: int
    n: int
    alg_cost: int
    opt: int
    opt_kind: str
    bound: EBound

    @property
    def ratio(self) -> Optional[Fraction]:
        return Fraction(self.alg_cost, self.opt) if self.opt else None

    @property
    def passed(self) -> Optional[bool]:
        """None for rows measured against a lower bound only."""
        if self.opt_kind != EXACT:
            return None
        return self.bound.admits(self.alg_cost, self.opt)

    def as_csv(self) -> list:
        verdict = {True: "pass", False: "fail", None: "n/a"}[self.passed]
        ratio = "" if self.ratio is None else str(self.ratio)
        return [self.seed, self.algorithm, str(self.alpha), self.lam, self.T, self.n, self.alg_cost,
                self.opt, self.opt_kind, ratio, str(self.bound), verdict]


def evaluate(instance: Instance, seed: str, algorithm: str, alpha, node_budget: Optional[int] = None) -> RatioReportRow:
    trace = run(instance, make_controller(algorithm, alpha, instance.lam, instance.T))
    config = OracleConfig(produce_witness=False) if node_budget is None else \
        OracleConfig(node_budget=node_budget, produce_witness=False)
    try:
        opt, kind = min_calibrations(instance, config).count, EXACT
    except BudgetExceeded as exc:
        opt, kind = exc.floor, LOWER_BOUND
    return RatioReportRow(seed, algorithm, Fraction(alpha), instance.lam, instance.T, len(instance.jobs),
                          trace.calibration_count, opt, kind, bound_for(algorithm, alpha, instance.lam))


def seed_of(path: Path) -> str:
    """File stem, keyed numerically when it ends in digits (``seed_0042`` -> ``42``)."""
    m = re.search(r"(\d+)$", path.stem)
    return str(int(m.group(1))) if m else path.stem


def _sort_key(row: RatioReportRow):
    return (0, int(row.seed), "") if row.seed.isdigit() else (1, 0, row.seed)


def _task(args):
    return evaluate(*args)


def ratio_report(instances: list, algorithms: list, alpha, node_budget: Optional[int] = None,
                 workers: int = 1) -> list:
    """Rows for every applicable (instance, algorithm) pair, sorted by seed.

    ``instances`` holds ``(seed, Instance)`` pairs.
    """
    tasks = []
    for seed, inst in instances:
        for alg in algorithms:
            if applicable(alg, inst, alpha):
                tasks.append((inst, seed, alg, alpha, node_budget))
            else:
                log.warning("skipping %s on %s: job classes do not fit", alg, seed)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_task, tasks, chunksize=4))
    else:
        rows = [_task(t) for t in tasks]
    order = {a: i for i, a in enumerate(algorithms)}
    rows.sort(key=lambda r: (_sort_key(r), order[r.algorithm]))
    return rows


def write_csv(rows, handle) -> None:
    w = csv.writer(handle, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(r.as_csv())
