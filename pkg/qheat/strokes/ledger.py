"""Registre énergétique d'une transformation (un temps de cycle)."""

from enum import Enum
from typing import Dict, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from qheat.errors import NumericalError
from qheat.spectra.models import Spectrum

FIRST_LAW_RTOL = 1e-10

Diagnostic = Union[int, float, str]


class StrokeKind(str, Enum):
    """Les trois transformations quantiques quasi statiques."""
    ADIABATIC = "adiabatic"
    ISOCHORIC = "isochoric"
    ISOTHERMAL = "isothermal"


class StrokeEndpoint(BaseModel):
    """Extrémité d'une transformation : un spectre à l'équilibre à T."""
    model_config = ConfigDict(frozen=True)

    spectrum: Spectrum
    T: float = Field(gt=0.0)


class StrokeLedger(BaseModel):
    """
    Bilan d'une transformation.

    Q > 0 : chaleur absorbée par la substance ; W > 0 : travail reçu par la
    substance. Le premier principe dU = Q + W est vérifié à la construction.

    `magnitude` borne les valeurs absolues (U, F, T·S) dont Q, W et dU sont
    les différences ; l'arrondi du résidu croît avec elle.
    """
    model_config = ConfigDict(frozen=True)

    kind: StrokeKind
    start: StrokeEndpoint
    end: StrokeEndpoint
    Q: float
    W: float
    dU: float
    magnitude: float = Field(default=0.0, ge=0.0)
    diagnostics: Dict[str, Diagnostic] = Field(default_factory=dict)

    @property
    def first_law_residual(self) -> float:
        return self.dU - self.Q - self.W

    @property
    def first_law_tolerance(self) -> float:
        """Tolérance relative à la plus grande des grandeurs combinées (|dU| ou `magnitude`)."""
        return FIRST_LAW_RTOL * max(1.0, abs(self.dU), self.magnitude)

    @model_validator(mode="after")
    def _check_ledger(self) -> "StrokeLedger":
        if self.kind == StrokeKind.ADIABATIC and self.Q != 0.0:
            raise ValueError("Une transformation adiabatique n'échange pas de chaleur")
        if self.kind == StrokeKind.ISOCHORIC and self.W != 0.0:
            raise ValueError("Une transformation isochore ne produit pas de travail")

        residual = self.first_law_residual
        if abs(residual) > self.first_law_tolerance:
            raise NumericalError(
                f"Premier principe violé sur une transformation {self.kind.value} (résidu {residual:.3e})",
                "first_law_violation",
                {"kind": self.kind.value, "residual": residual, "dU": self.dU, "magnitude": self.magnitude}
            )
        return self
