"""Balayages de paramètres, courbes S(T) et sorties fichier."""

from sweeps.curves import CurveSet, Series, delta_s_iso, st_diagram
from sweeps.sweep_runner import SweepRow, run_sweep
from sweeps.sweep_spec import Axis, SweepSpec, SweptAxis, parse_sweep_spec

__all__ = [
    "Axis",
    "CurveSet",
    "Series",
    "SweepRow",
    "SweepSpec",
    "SweptAxis",
    "delta_s_iso",
    "parse_sweep_spec",
    "run_sweep",
    "st_diagram",
]
