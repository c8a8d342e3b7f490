"""Courbes entropie-température et variation isotherme d'entropie."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from qheat.errors import InvalidInputError, NumericalError
from qheat.gibbs.thermal_state import entropy
from qheat.spectra.builder import build_spectrum
from qheat.spectra.models import ModelSpec
from sweeps.sweep_spec import Axis

logger = logging.getLogger(__name__)

MONOTONICITY_TOL = 1e-12


class Series(BaseModel):
    """Série (x, y) étiquetée, x strictement croissant, valeurs finies."""
    model_config = ConfigDict(frozen=True)

    label: str
    x: Tuple[float, ...]
    y: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_series(self) -> "Series":
        if len(self.x) != len(self.y):
            raise ValueError("x et y doivent avoir la même longueur")
        if not all(np.isfinite(self.x)) or not all(np.isfinite(self.y)):
            raise ValueError("Une série ne contient que des valeurs finies")
        if any(b <= a for a, b in zip(self.x, self.x[1:])):
            raise ValueError("x doit être strictement croissant")
        return self


class CurveSet(BaseModel):
    """Famille de séries partageant leurs unités."""
    model_config = ConfigDict(frozen=True)

    kind: str
    x_label: str = "T (K)"
    y_label: str
    series: Tuple[Series, ...] = Field(min_length=1)
    peak_temperature: Optional[float] = None
    peak_value: Optional[float] = None


def model_label(model: ModelSpec) -> str:
    """Étiquette lisible d'un modèle."""
    if model.levels is not None:
        return "levels=" + ",".join(f"{e:g}" for e in model.levels)
    return f"{model.kind.value} J={model.J:g} b={model.b:g}"


def _temperatures(T_range: Axis) -> np.ndarray:
    temperatures = T_range.values()
    if temperatures[0] <= 0.0:
        raise InvalidInputError("L'axe de température doit être strictement positif", "non_positive_temperature")
    return temperatures


def st_diagram(models: Sequence[ModelSpec], T_range: Axis) -> CurveSet:
    """Une courbe S(T) par modèle ; chaque courbe est vérifiée croissante (C ≥ 0)."""
    if not models:
        raise InvalidInputError("La liste de modèles est vide", "empty_model_list")
    temperatures = _temperatures(T_range)

    series: List[Series] = []
    for model in models:
        spectrum = build_spectrum(model)
        values = np.array([entropy(spectrum, T) for T in temperatures])
        drops = np.diff(values)
        if np.any(drops < -MONOTONICITY_TOL * max(1.0, float(np.max(values)))):
            raise NumericalError(
                f"S(T) non monotone pour {model_label(model)}",
                "non_monotone_entropy",
                {"model": model_label(model)}
            )
        series.append(Series(label=model_label(model), x=tuple(temperatures.tolist()), y=tuple(values.tolist())))

    return CurveSet(kind="st_diagram", y_label="S (k_B)", series=tuple(series))


def delta_s_iso(model_A: ModelSpec, model_B: ModelSpec, T_range: Axis) -> CurveSet:
    """ΔS_iso(T) = S(B, T) - S(A, T), avec le point de plus grand |ΔS_iso|."""
    spec_A = build_spectrum(model_A)
    spec_B = build_spectrum(model_B)
    if spec_A.dimension != spec_B.dimension:
        raise InvalidInputError(
            f"Dimensions incompatibles ({spec_A.dimension} et {spec_B.dimension})",
            "dimension_mismatch"
        )
    temperatures = _temperatures(T_range)
    values = np.array([entropy(spec_B, T) - entropy(spec_A, T) for T in temperatures])
    peak = int(np.argmax(np.abs(values)))
    logger.debug("ΔS_iso calculée", extra={"peak_temperature": float(temperatures[peak])})

    return CurveSet(
        kind="delta_s_iso",
        y_label="ΔS_iso (k_B)",
        series=(Series(
            label=f"{model_label(model_A)} -> {model_label(model_B)}",
            x=tuple(temperatures.tolist()),
            y=tuple(values.tolist())
        ),),
        peak_temperature=float(temperatures[peak]),
        peak_value=float(values[peak])
    )
