"""
Fonctions d'état de l'équilibre thermique (état de Gibbs).

Toutes les sommes sont faites sur les énergies décalées du fondamental :
g = ln Σ exp(-(E_n - E_0)/T), ln Z = -E_0/T + g. Z n'est jamais matérialisé.
"""

import math
from typing import Callable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import entr, logsumexp

from qheat.errors import SpectrumError, require_positive_temperature
from qheat.spectra.models import Spectrum

FINITE_DIFFERENCE_STEP = 1e-5


class ThermalState(BaseModel):
    """État de Gibbs d'un spectre à la température T (k_B = 1)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spectrum: Spectrum
    T: float = Field(gt=0.0)
    log_Z: float
    populations: Tuple[float, ...]
    U: float
    S: float = Field(ge=0.0)
    F: float
    C: float = Field(ge=0.0)

    @property
    def probabilities(self) -> np.ndarray:
        return np.asarray(self.populations, dtype=float)


def _levels(spectrum: Spectrum) -> np.ndarray:
    levels = spectrum.levels
    if levels.size == 0:
        raise SpectrumError("Le spectre est vide", "empty_spectrum")
    return levels


def _shifted_exponents(spectrum: Spectrum, T: float) -> Tuple[np.ndarray, float, float]:
    """Retourne (gaps, g, E_0) avec gaps = E_n - E_0 et g = ln Σ exp(-gaps/T)."""
    T = require_positive_temperature(T)
    levels = _levels(spectrum)
    ground = float(levels[0])
    gaps = levels - ground
    return gaps, float(logsumexp(-gaps / T)), ground


def log_partition_function(spectrum: Spectrum, T: float) -> float:
    """ln Z par sommation décalée du maximum de l'exposant."""
    _, g, ground = _shifted_exponents(spectrum, T)
    return -ground / T + g


def populations(spectrum: Spectrum, T: float) -> np.ndarray:
    """Populations de Gibbs p_n = exp(-E_n/T)/Z, dans l'ordre du spectre."""
    gaps, g, _ = _shifted_exponents(spectrum, T)
    weights = np.exp(-gaps / T - g)
    return weights / weights.sum()


def internal_energy(spectrum: Spectrum, T: float) -> float:
    """U = Σ p_n E_n."""
    gaps, _, ground = _shifted_exponents(spectrum, T)
    return ground + float(populations(spectrum, T) @ gaps)


def internal_energy_from_partition(spectrum: Spectrum, T: float) -> float:
    """
    U = T² ∂ln Z/∂T par différence centrée de pas h = T·1e-5.

    La dérivée porte sur g(T) seul, le terme -E_0/T étant dérivé exactement.
    """
    T = require_positive_temperature(T)
    levels = _levels(spectrum)
    ground = float(levels[0])
    gaps = levels - ground
    h = T * FINITE_DIFFERENCE_STEP
    g_plus = float(logsumexp(-gaps / (T + h)))
    g_minus = float(logsumexp(-gaps / (T - h)))
    return ground + T * T * (g_plus - g_minus) / (2.0 * h)


def entropy(spectrum: Spectrum, T: float) -> float:
    """Entropie de Shannon S = -Σ p_n ln p_n (signe usuel, k_B = 1)."""
    return float(entr(populations(spectrum, T)).sum())


def entropy_curve(spectrum: Spectrum) -> Callable[[float], float]:
    """
    S(T) d'un spectre fixe, écarts au fondamental calculés une seule fois.

    S = g + Σ p_n x_n avec x_n = (E_n - E_0)/T ; réservé aux boucles de
    résolution qui évaluent S un grand nombre de fois sur le même spectre.
    """
    levels = _levels(spectrum)
    gaps = levels - float(levels[0])

    def curve(T: float) -> float:
        with np.errstate(over="ignore"):
            x = gaps / T
        weights = np.exp(-x)
        occupied = weights > 0.0
        total = float(weights.sum())
        return math.log(total) + float(weights[occupied] @ x[occupied]) / total

    return curve


def free_energy(spectrum: Spectrum, T: float) -> float:
    """F = -T ln Z."""
    _, g, ground = _shifted_exponents(spectrum, T)
    return ground - T * g


def heat_capacity(spectrum: Spectrum, T: float) -> float:
    """C = (⟨E²⟩ - ⟨E⟩²)/T²."""
    gaps, _, _ = _shifted_exponents(spectrum, T)
    p = populations(spectrum, T)
    deviation = gaps - float(p @ gaps)
    return float(p @ (deviation * deviation)) / (T * T)


def thermal_state(spectrum: Spectrum, T: float) -> ThermalState:
    """Regroupe toutes les fonctions d'état à la température T."""
    gaps, g, ground = _shifted_exponents(spectrum, T)
    weights = np.exp(-gaps / T - g)
    p = weights / weights.sum()
    mean_gap = float(p @ gaps)
    deviation = gaps - mean_gap
    return ThermalState(
        spectrum=spectrum,
        T=T,
        log_Z=-ground / T + g,
        populations=tuple(p.tolist()),
        U=ground + mean_gap,
        S=float(entr(p).sum()),
        F=ground - T * g,
        C=float(p @ (deviation * deviation)) / (T * T)
    )
