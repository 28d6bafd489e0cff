from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .algo_integrated import make_controller
from .oracle import EXHAUSTIVE, OracleConfig, min_calibrations
from .simulator import run
from .validation import check_instance, parse_alpha


class CalibrationScheduler(BaseEstimator):
    """Online controller wrapped as an estimator, so it can sit in parameter
    sweeps. ``fit`` plays one instance online; ``predict`` returns the
    resulting schedule."""

    def __init__(self, algorithm="integrated", alpha="1/3"):
        self.algorithm = algorithm
        self.alpha = alpha

    def fit(self, X, y=None):
        inst = check_instance(X)
        self.instance_ = inst
        self.controller_ = make_controller(self.algorithm, parse_alpha(self.alpha), inst.lam, inst.T)
        self.trace_ = run(inst, self.controller_)
        self.schedule_ = self.trace_.schedule
        self.n_calibrations_ = self.trace_.calibration_count
        return self

    def predict(self, X):
        return self.fit(X).schedule_

    def score(self, X, y=None):
        # negated cost so that larger is better, as sklearn expects
        return -self.fit(X).n_calibrations_

    def check_fitted(self):
        if not hasattr(self, "schedule_"):
            raise NotFittedError("call fit first")


class OfflineOptimum(BaseEstimator):
    def __init__(self, candidate_mode=EXHAUSTIVE, node_budget=None):
        self.candidate_mode = candidate_mode
        self.node_budget = node_budget

    def fit(self, X, y=None):
        cfg = OracleConfig(self.candidate_mode) if self.node_budget is None else \
            OracleConfig(self.candidate_mode, self.node_budget)
        res = min_calibrations(check_instance(X), cfg)
        self.result_ = res
        self.schedule_ = res.schedule
        self.n_calibrations_ = res.count
        return self

    def predict(self, X):
        return self.fit(X).schedule_
