"""Moteur exact de thermodynamique quantique pour petits amas de spins 1/2."""

__version__ = "1.0.0"
