"""Diagonalisation dense de hamiltoniens réels symétriques."""

import logging
from typing import Optional

import numpy as np
from scipy import linalg

from qheat.errors import NumericalError, SpectrumError
from qheat.spectra.models import MAX_DIMENSION, ModelSpec, Spectrum

logger = logging.getLogger(__name__)

SYMMETRY_RTOL = 1e-12
RECONSTRUCTION_RTOL = 1e-10


def diagonalize_dense(
    matrix: np.ndarray,
    with_eigenvectors: bool = False,
    source: Optional[ModelSpec] = None
) -> Spectrum:
    """
    Diagonalise une matrice réelle symétrique d×d (d ≤ 1024).

    Args:
        matrix: Hamiltonien dense.
        with_eigenvectors: Conserve la base propre et vérifie la reconstruction
            ‖H - VΛVᵀ‖ ≤ 1e-10·‖H‖.
        source: Modèle à l'origine de la matrice, recopié dans le spectre.

    Returns:
        Spectrum trié par ordre croissant.
    """
    if np.iscomplexobj(matrix):
        raise SpectrumError(
            "La matrice doit être réelle",
            "complex_matrix"
        )
    H = np.asarray(matrix, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] == 0:
        raise SpectrumError(
            f"La matrice doit être carrée et non vide (forme {H.shape})",
            "invalid_shape",
            {"shape": H.shape}
        )
    d = H.shape[0]
    if d > MAX_DIMENSION:
        raise SpectrumError(
            f"Dimension {d} supérieure au maximum {MAX_DIMENSION}",
            "dimension_overflow",
            {"dimension": d}
        )
    if not np.all(np.isfinite(H)):
        raise SpectrumError("La matrice contient des valeurs non finies", "non_finite_entries")

    scale = float(np.max(np.abs(H)))
    asymmetry = float(np.max(np.abs(H - H.T)))
    if asymmetry > SYMMETRY_RTOL * scale:
        raise SpectrumError(
            f"Matrice non symétrique (écart {asymmetry:.3e})",
            "asymmetric_matrix",
            {"asymmetry": asymmetry, "scale": scale}
        )
    H = 0.5 * (H + H.T)

    if not with_eigenvectors:
        eigenvalues = linalg.eigh(H, eigvals_only=True)
        return Spectrum(energies=tuple(eigenvalues.tolist()), source=source)

    eigenvalues, eigenvectors = linalg.eigh(H)
    residual = float(np.linalg.norm(H - (eigenvectors * eigenvalues) @ eigenvectors.T))
    norm = float(np.linalg.norm(H))
    if residual > RECONSTRUCTION_RTOL * norm:
        raise NumericalError(
            f"Reconstruction de la matrice imprécise (résidu {residual:.3e})",
            "eigensolver_residual",
            {"residual": residual, "norm": norm}
        )
    logger.debug("Diagonalisation dense", extra={"dimension": d, "residual": residual})
    return Spectrum(energies=tuple(eigenvalues.tolist()), source=source, eigenvectors=eigenvectors)
