"""Bilans des transformations isotherme, isochore et adiabatique."""

import logging
from typing import Dict, Optional

from qheat.errors import require_positive_temperature
from qheat.gibbs.thermal_state import ThermalState, thermal_state
from qheat.spectra.models import Spectrum
from qheat.strokes.adiabat_solver import population_drift, solve_adiabat
from qheat.strokes.ledger import Diagnostic, StrokeEndpoint, StrokeKind, StrokeLedger

logger = logging.getLogger(__name__)


def _magnitude(*states: ThermalState) -> float:
    """Plus grande des valeurs |U|, |F| et T·S dont un bilan fait la différence."""
    return max(max(abs(state.U), abs(state.F), state.T * state.S) for state in states)


def isothermal_stroke(spec_A: Spectrum, spec_B: Spectrum, T: float) -> StrokeLedger:
    """
    Transformation isotherme A → B au contact d'un bain à T.

    Q = T (S_B - S_A) et W = F_B - F_A = -T ln(Z_B/Z_A) ; le bilan se décompose
    en Q = dU - W, termes exposés dans les diagnostics.
    """
    T = require_positive_temperature(T)
    state_A = thermal_state(spec_A, T)
    state_B = thermal_state(spec_B, T)

    Q = T * (state_B.S - state_A.S)
    W = state_B.F - state_A.F
    dU = state_B.U - state_A.U
    return StrokeLedger(
        kind=StrokeKind.ISOTHERMAL,
        start=StrokeEndpoint(spectrum=spec_A, T=T),
        end=StrokeEndpoint(spectrum=spec_B, T=T),
        Q=Q,
        W=W,
        dU=dU,
        magnitude=_magnitude(state_A, state_B),
        diagnostics={
            "dU_term": dU,
            "W_term": W,
            "log_Z_ratio": state_B.log_Z - state_A.log_Z,
            "population_drift": population_drift(spec_A, T, spec_B, T)
        }
    )


def isochoric_stroke(spec: Spectrum, T1: float, T2: float) -> StrokeLedger:
    """Transformation isochore : spectre fixe, Q = dU = U(T2) - U(T1), W = 0."""
    T1 = require_positive_temperature(T1, "T1")
    T2 = require_positive_temperature(T2, "T2")
    start = thermal_state(spec, T1)
    end = thermal_state(spec, T2)
    dU = end.U - start.U
    return StrokeLedger(
        kind=StrokeKind.ISOCHORIC,
        start=StrokeEndpoint(spectrum=spec, T=T1),
        end=StrokeEndpoint(spectrum=spec, T=T2),
        Q=dU,
        W=0.0,
        dU=dU,
        magnitude=_magnitude(start, end),
        diagnostics={"population_drift": population_drift(spec, T1, spec, T2)}
    )


def adiabatic_stroke(
    spec_A: Spectrum,
    T1: float,
    spec_B: Spectrum,
    use_fast_path: bool = True
) -> StrokeLedger:
    """Transformation adiabatique : Q = 0, W = dU = U(B, T2) - U(A, T1)."""
    solution = solve_adiabat(spec_A, T1, spec_B, use_fast_path)
    diagnostics = {
        "method": solution.method,
        "iterations": solution.iterations
    }
    if solution.kappa is not None:
        diagnostics["kappa"] = solution.kappa
    if solution.population_drift > 0.0:
        logger.debug("Adiabatique avec dérive de populations", extra={"population_drift": solution.population_drift})
    return adiabatic_ledger(spec_A, T1, spec_B, solution.T_end, diagnostics)


def adiabatic_ledger(
    spec_A: Spectrum,
    T1: float,
    spec_B: Spectrum,
    T2: float,
    diagnostics: Optional[Dict[str, Diagnostic]] = None
) -> StrokeLedger:
    """Bilan adiabatique entre deux extrémités déjà résolues."""
    T1 = require_positive_temperature(T1, "T1")
    T2 = require_positive_temperature(T2, "T2")
    start = thermal_state(spec_A, T1)
    end = thermal_state(spec_B, T2)
    dU = end.U - start.U
    return StrokeLedger(
        kind=StrokeKind.ADIABATIC,
        start=StrokeEndpoint(spectrum=spec_A, T=T1),
        end=StrokeEndpoint(spectrum=spec_B, T=T2),
        Q=0.0,
        W=dU,
        dU=dU,
        magnitude=_magnitude(start, end),
        diagnostics={
            **(diagnostics or {}),
            "entropy_residual": end.S - start.S,
            "population_drift": population_drift(spec_A, T1, spec_B, T2)
        }
    )
