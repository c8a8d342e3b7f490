"""Modes de fonctionnement d'une machine thermique à deux bains."""

from enum import Enum


class OperationMode(str, Enum):
    """Modes permis par le second principe, plus le cas dégénéré."""
    HEAT_ENGINE = "HeatEngine"
    REFRIGERATOR = "Refrigerator"
    ACCELERATOR = "Accelerator"
    HEATER = "Heater"
    DEGENERATE = "Degenerate"


_SIGN_TABLE = {
    (-1, 1, -1): OperationMode.HEAT_ENGINE,
    (1, -1, 1): OperationMode.REFRIGERATOR,
    (1, 1, -1): OperationMode.ACCELERATOR,
    (1, -1, -1): OperationMode.HEATER,
}


def _sign(value: float, epsilon: float) -> int:
    if abs(value) <= epsilon:
        return 0
    return 1 if value > 0 else -1


def classify_mode(W_net: float, Q_in: float, Q_out: float, epsilon: float = 0.0) -> OperationMode:
    """
    Classe un cycle d'après les signes de (W_net, Q_in, Q_out).

    Q_in et Q_out sont les chaleurs signées échangées avec le bain chaud et le
    bain froid ; toute valeur de module ≤ epsilon compte comme nulle. Toute
    combinaison nulle ou hors table donne Degenerate.
    """
    epsilon = abs(epsilon)
    signs = (_sign(W_net, epsilon), _sign(Q_in, epsilon), _sign(Q_out, epsilon))
    return _SIGN_TABLE.get(signs, OperationMode.DEGENERATE)
