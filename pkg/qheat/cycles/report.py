"""Rapport de cycle : bilans, figure de mérite et mode de fonctionnement."""

import logging
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from config.config_manager import config_manager
from qheat.cycles.modes import OperationMode, classify_mode
from qheat.errors import CycleClosureError, InvalidInputError, NotApplicableError, require_positive_temperature
from qheat.strokes.ledger import StrokeLedger

logger = logging.getLogger(__name__)

CLOSURE_RTOL = 1e-9


class CycleKind(str, Enum):
    """Cycles à quatre temps supportés."""
    CARNOT = "carnot"
    STIRLING = "stirling"
    OTTO = "otto"


class CycleReport(BaseModel):
    """
    Bilan complet d'un cycle.

    Q_in et Q_out sont les chaleurs signées échangées avec le bain chaud et le
    bain froid ; heat_absorbed (≥ 0) et heat_released (≤ 0) regroupent les
    chaleurs des temps par signe. W_net suit la convention « travail reçu ».
    """
    model_config = ConfigDict(frozen=True)

    kind: CycleKind
    strokes: Tuple[StrokeLedger, StrokeLedger, StrokeLedger, StrokeLedger]
    T_H: float = Field(gt=0.0)
    T_C: float = Field(gt=0.0)
    W_net: float
    Q_in: float
    Q_out: float
    heat_absorbed: float = Field(ge=0.0)
    heat_released: float = Field(le=0.0)
    first_law_residual: float
    epsilon: float = Field(ge=0.0)
    mode: OperationMode
    figure_of_merit: Optional[float] = None
    hot_bath_efficiency: Optional[float] = None
    carnot_bound: float
    intermediates: Dict[str, float] = Field(default_factory=dict)

    def to_summary(self) -> Dict[str, Any]:
        """Vue plate et sérialisable du rapport."""
        return {
            "kind": self.kind.value,
            "T_H": self.T_H,
            "T_C": self.T_C,
            "mode": self.mode.value,
            "W_net": self.W_net,
            "Q_in": self.Q_in,
            "Q_out": self.Q_out,
            "heat_absorbed": self.heat_absorbed,
            "heat_released": self.heat_released,
            "first_law_residual": self.first_law_residual,
            "figure_of_merit": self.figure_of_merit,
            "hot_bath_efficiency": self.hot_bath_efficiency,
            "carnot_bound": self.carnot_bound,
            "intermediates": dict(self.intermediates),
            "strokes": [
                {
                    "kind": stroke.kind.value,
                    "T_start": stroke.start.T,
                    "T_end": stroke.end.T,
                    "Q": stroke.Q,
                    "W": stroke.W,
                    "dU": stroke.dU
                }
                for stroke in self.strokes
            ]
        }


def check_bath_temperatures(T_H: float, T_C: float) -> Tuple[float, float]:
    """Vérifie T_H > T_C > 0."""
    T_H = require_positive_temperature(T_H, "T_H")
    T_C = require_positive_temperature(T_C, "T_C")
    if not T_H > T_C:
        raise InvalidInputError(
            f"Le bain chaud doit être plus chaud que le bain froid (T_H = {T_H}, T_C = {T_C})",
            "temperature_ordering",
            {"T_H": T_H, "T_C": T_C}
        )
    return T_H, T_C


def figure_of_merit(report: CycleReport) -> float:
    """
    Rendement |W_net|/Q_in d'un moteur ou COP Q_out/|W_net| d'un réfrigérateur.

    Les modules rendent les deux conventions de signe de η équivalentes.
    """
    if report.mode == OperationMode.HEAT_ENGINE:
        return abs(report.W_net) / report.Q_in
    if report.mode == OperationMode.REFRIGERATOR:
        return report.Q_out / abs(report.W_net)
    raise NotApplicableError(
        f"Pas de figure de mérite pour le mode {report.mode.value}",
        "figure_of_merit_not_applicable",
        {"mode": report.mode.value}
    )


def assemble_report(
    kind: CycleKind,
    strokes: Sequence[StrokeLedger],
    hot_strokes: Sequence[int],
    cold_strokes: Sequence[int],
    T_H: float,
    T_C: float,
    intermediates: Optional[Dict[str, float]] = None,
    epsilon_scale: Optional[float] = None
) -> CycleReport:
    """Agrège quatre temps en rapport de cycle et vérifie le premier principe."""
    if epsilon_scale is None:
        epsilon_scale = float(config_manager.get("numerics.mode_epsilon_scale", 1e-12))

    W_net = sum(stroke.W for stroke in strokes)
    Q_in = sum(strokes[i].Q for i in hot_strokes)
    Q_out = sum(strokes[i].Q for i in cold_strokes)
    heat_absorbed = sum(stroke.Q for stroke in strokes if stroke.Q > 0.0)
    heat_released = sum(stroke.Q for stroke in strokes if stroke.Q < 0.0)

    residual = W_net + Q_in + Q_out
    magnitude = sum(stroke.magnitude for stroke in strokes)
    if abs(residual) > CLOSURE_RTOL * max(1.0, abs(W_net), magnitude):
        raise CycleClosureError(
            f"Premier principe violé sur le cycle {kind.value} (résidu {residual:.3e})",
            "first_law_violation",
            {"kind": kind.value, "residual": residual, "W_net": W_net, "magnitude": magnitude}
        )

    epsilon = epsilon_scale * (heat_absorbed - heat_released)
    mode = classify_mode(W_net, Q_in, Q_out, epsilon)
    report = CycleReport(
        kind=kind,
        strokes=tuple(strokes),
        T_H=T_H,
        T_C=T_C,
        W_net=W_net,
        Q_in=Q_in,
        Q_out=Q_out,
        heat_absorbed=heat_absorbed,
        heat_released=heat_released,
        first_law_residual=residual,
        epsilon=epsilon,
        mode=mode,
        hot_bath_efficiency=abs(W_net) / abs(Q_in) if Q_in != 0.0 else None,
        carnot_bound=1.0 - T_C / T_H,
        intermediates=intermediates or {}
    )
    if mode in (OperationMode.HEAT_ENGINE, OperationMode.REFRIGERATOR):
        report = report.model_copy(update={"figure_of_merit": figure_of_merit(report)})

    logger.debug(
        "Cycle évalué",
        extra={"cycle": kind.value, "mode": mode.value, "W_net": W_net, "residual": residual}
    )
    return report
