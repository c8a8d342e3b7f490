"""Spécification des balayages de paramètres."""

import itertools
from typing import Any, Dict, Iterator, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from qheat.cycles.report import CycleKind
from qheat.errors import SweepSpecError
from qheat.spectra.models import ModelKind, ModelSpec

MAX_GRID_POINTS = 10 ** 7

SweepParameter = Literal["J_a", "J_b", "b_a", "b_b", "t_hot", "t_cold"]
AxisScale = Literal["linear", "log"]

_MODEL_PARAMETERS = {"J_a", "J_b", "b_a", "b_b"}


class Axis(BaseModel):
    """Axe de balayage {min, max, steps, scale}."""
    model_config = ConfigDict(frozen=True)

    min: float
    max: float
    steps: int = Field(ge=1)
    scale: AxisScale = "linear"

    @model_validator(mode="after")
    def _check_range(self) -> "Axis":
        if not np.isfinite(self.min) or not np.isfinite(self.max):
            raise ValueError("Les bornes d'un axe doivent être finies")
        if not self.min < self.max:
            raise ValueError(f"min doit être strictement inférieur à max ({self.min} ≥ {self.max})")
        if self.scale == "log" and self.min <= 0.0:
            raise ValueError("Un axe logarithmique exige min > 0")
        return self

    def values(self) -> np.ndarray:
        """Points de l'axe ; un seul pas donne [min]."""
        if self.steps == 1:
            return np.array([self.min])
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.steps)
        return np.linspace(self.min, self.max, self.steps)


class SweptAxis(Axis):
    """Axe associé à un paramètre balayé."""
    parameter: SweepParameter


class GridPoint(BaseModel):
    """Point de grille résolu en substances et bains."""
    model_config = ConfigDict(frozen=True)

    index: int
    coordinates: Dict[str, float]
    model_A: ModelSpec
    model_B: ModelSpec
    T_H: float
    T_C: float


class SweepSpec(BaseModel):
    """
    Balayage d'un cycle sur au plus deux paramètres.

    Le modèle gabarit fixe la famille (dimère, amas, ...) ; J_a/b_a et J_b/b_b
    définissent les substances A et B, remplacés par les axes balayés. Deux
    spectres explicites sont donnés par model_template (A) et model_template_b (B).
    """
    model_config = ConfigDict(frozen=True)

    cycle: CycleKind
    model_template: ModelSpec
    model_template_b: Optional[ModelSpec] = None
    J_a: float = 0.0
    J_b: float = 0.0
    b_a: float = 0.0
    b_b: float = 0.0
    t_hot: float = 40.0
    t_cold: float = 20.0
    axes: Tuple[SweptAxis, ...] = Field(min_length=1, max_length=2)
    carnot_closure: Optional[Literal["spectrum", "parameter"]] = None
    carnot_parameter: Optional[Literal["J", "b"]] = None
    epsilon_scale: Optional[float] = Field(default=None, ge=0.0)

    @model_validator(mode="after")
    def _check_axes(self) -> "SweepSpec":
        names = [axis.parameter for axis in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"Paramètre balayé deux fois : {names}")
        if self.model_template.kind == ModelKind.EXPLICIT_LEVELS and _MODEL_PARAMETERS & set(names):
            raise ValueError("Un spectre explicite n'a ni J ni b à balayer")
        if self.model_template_b is not None and not (
            self.model_template.kind == ModelKind.EXPLICIT_LEVELS
            and self.model_template_b.kind == ModelKind.EXPLICIT_LEVELS
        ):
            raise ValueError("model_template_b n'est accepté que pour deux spectres explicites")
        if self.grid_size > MAX_GRID_POINTS:
            raise ValueError(f"Grille de {self.grid_size} points, maximum {MAX_GRID_POINTS}")
        return self

    @property
    def grid_size(self) -> int:
        size = 1
        for axis in self.axes:
            size *= axis.steps
        return size

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(axis.steps for axis in self.axes)

    def _model(self, J: float, b: float, template: ModelSpec) -> ModelSpec:
        if template.kind == ModelKind.EXPLICIT_LEVELS:
            return template
        update = {"J": J}
        if template.site_fields is None:
            update["b"] = b
        return template.model_copy(update=update)

    def points(self) -> Iterator[GridPoint]:
        """Points de grille dans l'ordre ligne par ligne (dernier axe le plus rapide)."""
        names = [axis.parameter for axis in self.axes]
        for index, values in enumerate(itertools.product(*(axis.values() for axis in self.axes))):
            coordinates = dict(zip(names, (float(v) for v in values)))
            params = {
                "J_a": self.J_a, "J_b": self.J_b, "b_a": self.b_a, "b_b": self.b_b,
                "t_hot": self.t_hot, "t_cold": self.t_cold,
                **coordinates
            }
            yield GridPoint(
                index=index,
                coordinates=coordinates,
                model_A=self._model(params["J_a"], params["b_a"], self.model_template),
                model_B=self._model(params["J_b"], params["b_b"], self.model_template_b or self.model_template),
                T_H=params["t_hot"],
                T_C=params["t_cold"]
            )

    def cycle_options(self) -> Dict[str, Any]:
        """Options transmises à run_cycle."""
        options: Dict[str, Any] = {"epsilon_scale": self.epsilon_scale}
        if self.cycle == CycleKind.CARNOT:
            options["closure"] = self.carnot_closure
            options["parameter"] = self.carnot_parameter
        return options


def parse_sweep_spec(data: Dict[str, Any]) -> SweepSpec:
    """Valide une spécification de balayage, erreurs converties en SweepSpecError."""
    try:
        return SweepSpec.model_validate(data)
    except ValidationError as exc:
        messages: List[str] = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()]
        raise SweepSpecError(
            "Spécification de balayage invalide : " + "; ".join(messages),
            "invalid_sweep_spec",
            {"errors": messages}
        ) from exc
