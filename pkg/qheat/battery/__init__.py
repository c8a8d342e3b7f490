"""Batterie quantique : ergotropie et états passifs."""

from qheat.battery.ergotropy import (
    ErgotropyReport,
    QuantumState,
    battery_charge_curve,
    ergotropy,
    ergotropy_bruteforce,
    gibbs_battery_state,
    passive_energy_bruteforce,
    reference_energy,
)

__all__ = [
    "ErgotropyReport",
    "QuantumState",
    "battery_charge_curve",
    "ergotropy",
    "ergotropy_bruteforce",
    "gibbs_battery_state",
    "passive_energy_bruteforce",
    "reference_energy",
]
