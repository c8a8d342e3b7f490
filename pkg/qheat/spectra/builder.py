"""Construction des hamiltoniens de spins 1/2 et de leurs spectres exacts."""

import logging
import math

import numpy as np
from pydantic import ValidationError

from qheat.errors import SpectrumError
from qheat.spectra.eigensolver import diagonalize_dense
from qheat.spectra.models import MAX_DIMENSION, MAX_SITES, ModelKind, ModelSpec, Spectrum

logger = logging.getLogger(__name__)

_SQRT_HALF = math.sqrt(0.5)

# Base produit |s_0 s_1 ... s_{n-1}>, site k porté par le bit n-1-k, bit 0 = spin haut.
_DIMER_BASIS = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, _SQRT_HALF, 0.0, _SQRT_HALF],
    [0.0, _SQRT_HALF, 0.0, -_SQRT_HALF],
    [0.0, 0.0, 1.0, 0.0],
])  # colonnes : T+, T0, T-, singulet


def _revalidate(model: ModelSpec) -> None:
    """Revalide un modèle qui aurait contourné pydantic (model_construct)."""
    if model.kind == ModelKind.EXPLICIT_LEVELS:
        if not model.levels:
            raise SpectrumError("Liste de niveaux vide", "empty_levels")
        if len(model.levels) > MAX_DIMENSION:
            raise SpectrumError(
                f"Au plus {MAX_DIMENSION} niveaux sont acceptés",
                "dimension_overflow",
                {"dimension": len(model.levels)}
            )
    elif model.n_sites > MAX_SITES:
        raise SpectrumError(
            f"n_sites = {model.n_sites} dépasse le maximum de {MAX_SITES} sites",
            "dimension_overflow",
            {"n_sites": model.n_sites}
        )
    try:
        ModelSpec.model_validate(model.model_dump())
    except ValidationError as exc:
        code = "non_finite_parameter" if "fini" in str(exc) else "invalid_model"
        raise SpectrumError(f"Modèle invalide : {exc.errors()[0]['msg']}", code) from exc


def hamiltonian_matrix(model: ModelSpec) -> np.ndarray:
    """Matrice dense réelle symétrique de H = -Σ J_ij S_i·S_j + Σ b_i S_i^z."""
    if model.kind == ModelKind.EXPLICIT_LEVELS:
        return np.diag(np.asarray(model.levels, dtype=float))

    n = model.n_sites
    d = 2 ** n
    states = np.arange(d)
    shifts = n - 1 - np.arange(n)
    bits = (states[:, None] >> shifts[None, :]) & 1
    sz = 0.5 - bits

    diagonal = sz @ np.asarray(model.resolved_fields(), dtype=float)
    H = np.zeros((d, d))
    for bond in model.resolved_bonds():
        diagonal -= bond.J * sz[:, bond.i] * sz[:, bond.j]
        # S+S- + S-S+ ne relie que les paires antiparallèles
        flippable = states[bits[:, bond.i] != bits[:, bond.j]]
        mask = (1 << int(shifts[bond.i])) | (1 << int(shifts[bond.j]))
        H[flippable ^ mask, flippable] += -0.5 * bond.J
    H[np.diag_indices(d)] += diagonal
    return H


def _dimer_spectrum(model: ModelSpec, with_eigenvectors: bool) -> Spectrum:
    J, b = model.J, model.b
    levels = [-0.25 * J + b, -0.25 * J, -0.25 * J - b, 0.75 * J]
    basis = _DIMER_BASIS if with_eigenvectors else None
    return Spectrum.from_levels(levels, source=model, eigenvectors=basis)


def build_spectrum(model: ModelSpec, with_eigenvectors: bool = False) -> Spectrum:
    """
    Construit le spectre exact d'une substance de travail.

    Le dimère est traité en forme fermée, les amas par diagonalisation dense de la
    matrice 2^N × 2^N, les niveaux explicites sont simplement triés.
    """
    _revalidate(model)

    if model.kind == ModelKind.SINGLE_SPIN:
        basis = np.eye(2) if with_eigenvectors else None
        spectrum = Spectrum.from_levels([0.5 * model.b, -0.5 * model.b], source=model, eigenvectors=basis)
    elif model.kind == ModelKind.HEISENBERG_DIMER:
        spectrum = _dimer_spectrum(model, with_eigenvectors)
    elif model.kind == ModelKind.HEISENBERG_CLUSTER:
        spectrum = diagonalize_dense(hamiltonian_matrix(model), with_eigenvectors, source=model)
    else:
        basis = np.eye(len(model.levels)) if with_eigenvectors else None
        spectrum = Spectrum.from_levels(model.levels, source=model, eigenvectors=basis)

    logger.debug(
        "Spectre construit",
        extra={"kind": model.kind.value, "dimension": spectrum.dimension}
    )
    return spectrum
