"""Online scheduling of unit jobs on machines that need calibrating."""
from .core import (Assignment, Calibration, ConfigurationError, ContractViolation, Instance, Job, Schedule,
                   StepResult, ValidationReport, validate_instance, validate_schedule)
from .edf import edf_feasible, edf_schedule, virtual_check
from .machines import MachineMinController, max_density, opt_machines
from .algo_long import LongController
from .algo_short import ShortController
from .algo_integrated import IntegratedController, make_controller
from .bounds import ratio_bound
from .oracle import BudgetExceeded, OracleConfig, min_calibrations, opt_lower_bound
from .simulator import run, run_reactive, prefix_consistency_check
from .adversary import EAdversary, LambdaAdversary, random_instance

__version__ = "0.1.0"

__all__ = [
    "Assignment", "Calibration", "ConfigurationError", "ContractViolation", "Instance", "Job", "Schedule",
    "StepResult", "ValidationReport", "validate_instance", "validate_schedule", "edf_feasible",
    "edf_schedule", "virtual_check", "MachineMinController", "max_density", "opt_machines",
    "LongController", "ShortController", "IntegratedController", "make_controller", "ratio_bound",
    "BudgetExceeded", "OracleConfig", "min_calibrations", "opt_lower_bound", "run", "run_reactive",
    "prefix_consistency_check", "EAdversary", "LambdaAdversary", "random_instance",
]
