"""Complementary Gauss-Jordan pivoting solver for LPs in symmetric form."""
from .certify import CertificateReport, Solution, check_certificate, extract_solution, objective_value
from .eq_builder import EqSystem, build_eq, initialize
from .lp_model import (
    InstanceError,
    LpInstance,
    encode_equalities,
    klee_minty,
    load_instance,
    random_instance,
    validate,
)
from .solver import Outcome, SolverConfig, Trace, solve
from .tableau import ArithmeticMode, Tableau

__version__ = "0.1.0"

__all__ = [
    "ArithmeticMode",
    "CertificateReport",
    "EqSystem",
    "InstanceError",
    "LpInstance",
    "Outcome",
    "Solution",
    "SolverConfig",
    "Tableau",
    "Trace",
    "build_eq",
    "check_certificate",
    "encode_equalities",
    "extract_solution",
    "initialize",
    "klee_minty",
    "load_instance",
    "objective_value",
    "random_instance",
    "solve",
    "validate",
]
