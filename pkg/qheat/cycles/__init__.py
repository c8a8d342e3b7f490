"""Cycles quantiques à quatre temps et classification des modes."""

from qheat.cycles.carnot import carnot_partition_constraint, run_carnot
from qheat.cycles.modes import OperationMode, classify_mode
from qheat.cycles.otto import run_otto
from qheat.cycles.report import CycleKind, CycleReport, figure_of_merit
from qheat.cycles.runner import run_cycle
from qheat.cycles.stirling import run_stirling, stirling_closed_form_work

__all__ = [
    "CycleKind",
    "CycleReport",
    "OperationMode",
    "carnot_partition_constraint",
    "classify_mode",
    "figure_of_merit",
    "run_carnot",
    "run_cycle",
    "run_otto",
    "run_stirling",
    "stirling_closed_form_work",
]
