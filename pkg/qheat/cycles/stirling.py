"""Cycle de Stirling quantique : deux isothermes et deux isochores."""

from typing import Optional

from qheat.cycles.report import CycleKind, CycleReport, assemble_report, check_bath_temperatures
from qheat.gibbs.thermal_state import log_partition_function
from qheat.spectra.models import Spectrum
from qheat.strokes.processes import isochoric_stroke, isothermal_stroke


def stirling_closed_form_work(spec_A: Spectrum, spec_B: Spectrum, T_H: float, T_C: float) -> float:
    """W_net = -T_H ln(Z_B/Z_A)|_{T_H} - T_C ln(Z_A/Z_B)|_{T_C}, travail reçu."""
    hot = log_partition_function(spec_B, T_H) - log_partition_function(spec_A, T_H)
    cold = log_partition_function(spec_A, T_C) - log_partition_function(spec_B, T_C)
    return -T_H * hot - T_C * cold


def run_stirling(
    spec_A: Spectrum,
    spec_B: Spectrum,
    T_H: float,
    T_C: float,
    epsilon_scale: Optional[float] = None
) -> CycleReport:
    """
    Cycle isotherme A→B à T_H, isochore B de T_H à T_C, isotherme B→A à T_C,
    isochore A de T_C à T_H.

    Q_in regroupe l'isotherme chaude et l'isochore de chauffage, Q_out
    l'isotherme froide et l'isochore de refroidissement.
    """
    T_H, T_C = check_bath_temperatures(T_H, T_C)
    strokes = [
        isothermal_stroke(spec_A, spec_B, T_H),
        isochoric_stroke(spec_B, T_H, T_C),
        isothermal_stroke(spec_B, spec_A, T_C),
        isochoric_stroke(spec_A, T_C, T_H),
    ]
    return assemble_report(
        CycleKind.STIRLING,
        strokes,
        hot_strokes=(0, 3),
        cold_strokes=(1, 2),
        T_H=T_H,
        T_C=T_C,
        epsilon_scale=epsilon_scale
    )
