"""Fonctions d'état de l'équilibre thermique."""

from qheat.gibbs.thermal_state import (
    ThermalState,
    entropy,
    entropy_curve,
    free_energy,
    heat_capacity,
    internal_energy,
    internal_energy_from_partition,
    log_partition_function,
    populations,
    thermal_state,
)

__all__ = [
    "ThermalState",
    "entropy",
    "entropy_curve",
    "free_energy",
    "heat_capacity",
    "internal_energy",
    "internal_energy_from_partition",
    "log_partition_function",
    "populations",
    "thermal_state",
]
