"""Cycle d'Otto quantique : deux isochores et deux adiabatiques."""

import logging
from typing import Optional

from qheat.cycles.report import CycleKind, CycleReport, assemble_report, check_bath_temperatures
from qheat.errors import CycleClosureError
from qheat.gibbs.thermal_state import entropy, heat_capacity
from qheat.spectra.models import Spectrum
from qheat.strokes.adiabat_solver import ENTROPY_TOL, adiabatic_endpoint
from qheat.strokes.processes import adiabatic_ledger, isochoric_stroke

logger = logging.getLogger(__name__)

MAX_FIXED_POINT_ITERATIONS = 100


def _newton_step(spectrum: Spectrum, T: float, residual: float) -> float:
    """Corrige T d'un pas de Newton sur S(T), avec dS/dT = C/T."""
    C = heat_capacity(spectrum, T)
    if C <= 0.0:
        return T
    corrected = T - residual * T / C
    return corrected if corrected > 0.0 else 0.5 * T


def run_otto(
    spec_A: Spectrum,
    spec_B: Spectrum,
    T_H: float,
    T_C: float,
    epsilon_scale: Optional[float] = None,
    max_iterations: int = MAX_FIXED_POINT_ITERATIONS
) -> CycleReport:
    """
    Isochore chaude sur B (T_1 → T_H), adiabatique B → A (T_3), isochore froide
    sur A (T_3 → T_C), adiabatique A → B qui referme le cycle en T_1.

    Pour des spectres homothétiques, η = 1 - Δ_A/Δ_B quelles que soient les
    températures des bains.
    """
    T_H, T_C = check_bath_temperatures(T_H, T_C)
    T_3 = adiabatic_endpoint(spec_B, T_H, spec_A)
    T_1 = adiabatic_endpoint(spec_A, T_C, spec_B)

    S_hot = entropy(spec_B, T_H)
    S_cold = entropy(spec_A, T_C)
    tolerance = ENTROPY_TOL * max(1.0, S_hot, S_cold)
    residual_3 = entropy(spec_A, T_3) - S_hot
    residual_1 = entropy(spec_B, T_1) - S_cold
    iteration = 0
    while max(abs(residual_1), abs(residual_3)) > tolerance:
        iteration += 1
        if iteration > max_iterations:
            raise CycleClosureError(
                f"Le cycle d'Otto ne se referme pas en {max_iterations} itérations",
                "otto_not_converged",
                {"entropy_residual_1": residual_1, "entropy_residual_3": residual_3}
            )
        T_3 = _newton_step(spec_A, T_3, residual_3)
        T_1 = _newton_step(spec_B, T_1, residual_1)
        residual_3 = entropy(spec_A, T_3) - S_hot
        residual_1 = entropy(spec_B, T_1) - S_cold

    strokes = [
        isochoric_stroke(spec_B, T_1, T_H),
        adiabatic_ledger(spec_B, T_H, spec_A, T_3),
        isochoric_stroke(spec_A, T_3, T_C),
        adiabatic_ledger(spec_A, T_C, spec_B, T_1),
    ]
    logger.debug("Cycle d'Otto refermé", extra={"T_1": T_1, "T_3": T_3, "iterations": iteration})
    return assemble_report(
        CycleKind.OTTO,
        strokes,
        hot_strokes=(0,),
        cold_strokes=(2,),
        T_H=T_H,
        T_C=T_C,
        intermediates={"T_1": T_1, "T_3": T_3, "fixed_point_iterations": float(iteration)},
        epsilon_scale=epsilon_scale
    )
