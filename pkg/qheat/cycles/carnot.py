"""
Cycle de Carnot quantique : deux isothermes et deux adiabatiques.

L'isotherme chaude A → B est imposée ; les spectres C et D qui referment le
cycle à T_C sont résolus. Fermeture « spectrum » : C et D sont B et A dilatés
d'un facteur T_C/T_H autour de leur moyenne. Fermeture « parameter » : C et D
appartiennent à la famille de modèles de B et A, un seul paramètre (J ou b)
variant, et ne sont acceptés que s'ils conservent les populations.
"""

import logging
import math
from typing import Dict, Literal, Optional, Tuple

import numpy as np
from scipy import optimize

from config.config_manager import config_manager
from qheat.cycles.report import CycleKind, CycleReport, assemble_report, check_bath_temperatures
from qheat.errors import CycleClosureError, InvalidInputError
from qheat.gibbs.thermal_state import entropy, log_partition_function
from qheat.spectra.builder import build_spectrum
from qheat.spectra.models import ModelSpec, Spectrum
from qheat.strokes.adiabat_solver import ENTROPY_TOL, population_drift
from qheat.strokes.processes import adiabatic_ledger, isothermal_stroke

logger = logging.getLogger(__name__)

ClosureStrategy = Literal["spectrum", "parameter"]
ClosureParameter = Literal["J", "b"]

POPULATION_TOL = 1e-9
_SCAN_DECADES = 3
_SCAN_POINTS_PER_DECADE = 20


def _scan_grid(reference: float, kappa: float) -> np.ndarray:
    """Grille géométrique de valeurs candidates autour de reference·κ."""
    exponents = np.arange(-_SCAN_DECADES * _SCAN_POINTS_PER_DECADE, _SCAN_DECADES * _SCAN_POINTS_PER_DECADE + 1)
    magnitudes = (abs(reference) * kappa if reference != 0.0 else 1.0) * 10.0 ** (exponents / _SCAN_POINTS_PER_DECADE)
    if reference > 0.0:
        return magnitudes
    if reference < 0.0:
        return -magnitudes[::-1]
    return np.concatenate([-magnitudes[::-1], magnitudes])


def _solve_family_member(
    model: ModelSpec,
    parameter: ClosureParameter,
    target_entropy: float,
    T: float,
    kappa: float
) -> Tuple[Spectrum, float]:
    """Membre de la famille de `model` d'entropie target_entropy à T."""

    def member(value: float) -> Spectrum:
        return build_spectrum(model.model_copy(update={parameter: float(value)}))

    def objective(value: float) -> float:
        return entropy(member(value), T) - target_entropy

    reference = float(getattr(model, parameter))
    guess = reference * kappa
    grid = _scan_grid(reference, kappa)
    values = np.array([objective(v) for v in grid])

    brackets = [
        k for k in range(len(grid) - 1)
        if values[k] == 0.0 or np.sign(values[k]) != np.sign(values[k + 1])
    ]
    if not brackets:
        best = int(np.argmin(np.abs(values)))
        raise CycleClosureError(
            f"Aucune valeur de {parameter} ne referme l'adiabatique",
            "closure_not_found",
            {"parameter": parameter, "best_value": float(grid[best]), "best_entropy_residual": float(values[best])}
        )

    k = min(brackets, key=lambda idx: abs(grid[idx] - guess))
    if values[k] == 0.0:
        value = float(grid[k])
    else:
        value = optimize.bisect(objective, grid[k], grid[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return member(value), value


def _parameter_closure(
    spec_A: Spectrum,
    spec_B: Spectrum,
    T_H: float,
    T_C: float,
    parameter: ClosureParameter
) -> Tuple[Spectrum, Spectrum, Dict[str, float]]:
    if spec_A.source is None or spec_B.source is None:
        raise InvalidInputError(
            "La fermeture par paramètre exige des spectres issus d'un ModelSpec",
            "missing_model_source"
        )
    kappa = T_C / T_H
    spec_C, value_C = _solve_family_member(spec_B.source, parameter, entropy(spec_B, T_H), T_C, kappa)
    spec_D, value_D = _solve_family_member(spec_A.source, parameter, entropy(spec_A, T_H), T_C, kappa)

    drift_BC = population_drift(spec_B, T_H, spec_C, T_C)
    drift_DA = population_drift(spec_D, T_C, spec_A, T_H)
    if max(drift_BC, drift_DA) > POPULATION_TOL:
        raise CycleClosureError(
            "Les adiabatiques résolues ne conservent pas les populations : "
            "la famille n'est pas une dilatation uniforme",
            "closure_not_population_preserving",
            {
                "parameter": parameter,
                "entropy_residual_C": entropy(spec_C, T_C) - entropy(spec_B, T_H),
                "entropy_residual_D": entropy(spec_D, T_C) - entropy(spec_A, T_H),
                "population_drift_C": drift_BC,
                "population_drift_D": drift_DA
            }
        )
    return spec_C, spec_D, {f"{parameter}_C": value_C, f"{parameter}_D": value_D}


def _check_isentropic(spec_from: Spectrum, T_from: float, spec_to: Spectrum, T_to: float, label: str) -> float:
    start = entropy(spec_from, T_from)
    residual = entropy(spec_to, T_to) - start
    if abs(residual) > ENTROPY_TOL * max(1.0, start):
        raise CycleClosureError(
            f"L'adiabatique {label} n'est pas isentropique (résidu {residual:.3e})",
            "closure_not_isentropic",
            {"stroke": label, "entropy_residual": residual}
        )
    return residual


def run_carnot(
    spec_A: Spectrum,
    spec_B: Spectrum,
    T_H: float,
    T_C: float,
    closure: Optional[ClosureStrategy] = None,
    parameter: Optional[ClosureParameter] = None,
    epsilon_scale: Optional[float] = None
) -> CycleReport:
    """Isotherme A→B à T_H, adiabatique B→C, isotherme C→D à T_C, adiabatique D→A."""
    T_H, T_C = check_bath_temperatures(T_H, T_C)
    closure = closure or config_manager.get("cycles.carnot_closure", "spectrum")
    parameter = parameter or config_manager.get("cycles.carnot_parameter", "J")
    kappa = T_C / T_H

    if closure == "spectrum":
        spec_C = spec_B.scaled(kappa)
        spec_D = spec_A.scaled(kappa)
        intermediates = {"kappa": kappa}
    elif closure == "parameter":
        if parameter not in ("J", "b"):
            raise InvalidInputError(f"Paramètre de fermeture inconnu : {parameter}", "invalid_closure_parameter")
        spec_C, spec_D, intermediates = _parameter_closure(spec_A, spec_B, T_H, T_C, parameter)
    else:
        raise InvalidInputError(f"Stratégie de fermeture inconnue : {closure}", "invalid_closure_strategy")

    residual_BC = _check_isentropic(spec_B, T_H, spec_C, T_C, "B→C")
    residual_DA = _check_isentropic(spec_D, T_C, spec_A, T_H, "D→A")

    strokes = [
        isothermal_stroke(spec_A, spec_B, T_H),
        adiabatic_ledger(spec_B, T_H, spec_C, T_C, {"method": closure}),
        isothermal_stroke(spec_C, spec_D, T_C),
        adiabatic_ledger(spec_D, T_C, spec_A, T_H, {"method": closure}),
    ]
    logger.debug(
        "Cycle de Carnot refermé",
        extra={"closure": closure, "entropy_residual_BC": residual_BC, "entropy_residual_DA": residual_DA}
    )
    return assemble_report(
        CycleKind.CARNOT,
        strokes,
        hot_strokes=(0,),
        cold_strokes=(2,),
        T_H=T_H,
        T_C=T_C,
        intermediates=intermediates,
        epsilon_scale=epsilon_scale
    )


def carnot_partition_constraint(report: CycleReport) -> Tuple[float, float]:
    """
    Rapports Z_B(T_H)/Z_A(T_H) et Z_C(T_C)/Z_D(T_C) d'un cycle de Carnot.

    Leur égalité redonne le rendement classique ; elle est exacte pour les
    familles homothétiques de trace fixe (dimère sans champ).
    """
    hot, _, cold, _ = report.strokes
    hot_ratio = log_partition_function(hot.end.spectrum, report.T_H) - log_partition_function(hot.start.spectrum, report.T_H)
    cold_ratio = log_partition_function(cold.start.spectrum, report.T_C) - log_partition_function(cold.end.spectrum, report.T_C)
    return math.exp(hot_ratio), math.exp(cold_ratio)
