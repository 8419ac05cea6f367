"""Executable models and law checks for guarded fixpoint operators."""

from .core import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    REPORT_ONLY,
    GuardedCategory,
    LawReport,
    LawVerdict,
    Later,
    Prod,
    Unit,
    WithDagger,
    check_guarded_square,
    enumerate_solutions,
)
from .citm import TreeCategory, parse_system, solve
from .cms import UltrametricCategory
from .cpolift import LiftCategory, PointedIdCategory, two_chain_instance
from .finset import group_witness
from .kernels import BACKEND
from .laws import GROUPS, LAWS, Model, run_law, run_suite
from .models import build_models
from .presheaf import PresheafCategory, load_presheaf, omega_truncation
from .search import search_counterexample

__version__ = "0.1.0"

__all__ = [
    "FAIL", "NOT_APPLICABLE", "PASS", "REPORT_ONLY", "GuardedCategory", "LawReport",
    "LawVerdict", "Later", "Prod", "Unit", "WithDagger", "check_guarded_square",
    "enumerate_solutions", "TreeCategory", "parse_system", "solve", "UltrametricCategory",
    "LiftCategory", "PointedIdCategory", "two_chain_instance", "group_witness", "BACKEND",
    "GROUPS", "LAWS", "Model", "run_law", "run_suite", "build_models", "PresheafCategory",
    "load_presheaf", "omega_truncation", "search_counterexample",
]
