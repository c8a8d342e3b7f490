"""Transformations quantiques quasi statiques."""

from qheat.strokes.adiabat_solver import (
    AdiabatSolution,
    adiabatic_endpoint,
    population_drift,
    solve_adiabat,
    uniform_scaling_factor,
)
from qheat.strokes.ledger import StrokeEndpoint, StrokeKind, StrokeLedger
from qheat.strokes.processes import adiabatic_ledger, adiabatic_stroke, isochoric_stroke, isothermal_stroke

__all__ = [
    "AdiabatSolution",
    "StrokeEndpoint",
    "StrokeKind",
    "StrokeLedger",
    "adiabatic_endpoint",
    "adiabatic_ledger",
    "adiabatic_stroke",
    "isochoric_stroke",
    "isothermal_stroke",
    "population_drift",
    "solve_adiabat",
    "uniform_scaling_factor",
]
