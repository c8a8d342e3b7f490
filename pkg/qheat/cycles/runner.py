"""Point d'entrée unique pour l'évaluation d'un cycle."""

from typing import Any, Union

from qheat.cycles.carnot import run_carnot
from qheat.cycles.otto import run_otto
from qheat.cycles.report import CycleKind, CycleReport
from qheat.cycles.stirling import run_stirling
from qheat.errors import InvalidInputError
from qheat.spectra.models import Spectrum

_RUNNERS = {
    CycleKind.CARNOT: run_carnot,
    CycleKind.STIRLING: run_stirling,
    CycleKind.OTTO: run_otto,
}


def run_cycle(
    kind: Union[CycleKind, str],
    spec_A: Spectrum,
    spec_B: Spectrum,
    T_H: float,
    T_C: float,
    **options: Any
) -> CycleReport:
    """Évalue le cycle `kind` ; les options sont transmises au cycle choisi."""
    try:
        kind = CycleKind(kind)
    except ValueError as exc:
        raise InvalidInputError(f"Cycle inconnu : {kind}", "unknown_cycle", {"kind": str(kind)}) from exc
    return _RUNNERS[kind](spec_A, spec_B, T_H, T_C, **options)
