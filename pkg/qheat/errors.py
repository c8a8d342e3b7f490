"""Hiérarchie d'erreurs du moteur qheat."""

from datetime import datetime, timezone
from typing import Any, Dict

UTC = timezone.utc


class QheatError(Exception):
    """Erreur de base portant un code stable et un contexte exploitable."""

    def __init__(self, message: str, error_type: str, context: Dict[str, Any] | None = None):
        super().__init__(message)
        self.error_type = error_type
        self.context = context or {}
        self.timestamp = datetime.now(UTC)


class InvalidInputError(QheatError, ValueError):
    """Précondition violée par l'appelant (température, modèle, configuration)."""


class SpectrumError(InvalidInputError):
    """Modèle ou matrice impossible à diagonaliser."""


class InvalidDensityMatrixError(InvalidInputError):
    """Matrice densité non hermitienne, de trace non unitaire ou non positive."""


class SweepSpecError(InvalidInputError):
    """Spécification de balayage invalide."""


class NumericalError(QheatError, ArithmeticError):
    """Échec numérique : solveur, convergence ou fermeture de cycle."""


class AdiabaticEndpointError(NumericalError):
    """Aucune température finale ne conserve l'entropie de départ."""


class CycleClosureError(NumericalError):
    """Le cycle ne se referme pas (Carnot hors famille d'échelle uniforme, Otto non convergent)."""


class NotApplicableError(QheatError):
    """Grandeur non définie pour le mode de fonctionnement obtenu."""


def require_positive_temperature(T: float, name: str = "T") -> float:
    """Vérifie qu'une température est finie et strictement positive."""
    value = float(T)
    if not (value > 0.0) or value == float("inf"):
        raise InvalidInputError(
            f"La température {name} doit être finie et strictement positive (reçu {T})",
            "non_positive_temperature",
            {"name": name, "value": value}
        )
    return value
