"""Substances de travail et spectres exacts."""

from qheat.spectra.builder import build_spectrum, hamiltonian_matrix
from qheat.spectra.eigensolver import diagonalize_dense
from qheat.spectra.models import MAX_DIMENSION, MAX_SITES, Bond, ModelKind, ModelSpec, Spectrum

__all__ = [
    "MAX_DIMENSION",
    "MAX_SITES",
    "Bond",
    "ModelKind",
    "ModelSpec",
    "Spectrum",
    "build_spectrum",
    "diagonalize_dense",
    "hamiltonian_matrix",
]
