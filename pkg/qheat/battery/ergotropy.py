"""
Ergotropie et états passifs d'une batterie quantique.

L'état de la batterie est l'état de Gibbs du hamiltonien complet ; le travail
extractible est mesuré contre un hamiltonien de référence distinct (terme
Zeeman seul par défaut), l'interaction interne n'étant pas comptée.
"""

import itertools
import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from qheat.errors import InvalidDensityMatrixError, InvalidInputError
from qheat.gibbs.thermal_state import populations
from qheat.spectra.models import Spectrum

logger = logging.getLogger(__name__)

DENSITY_TOL = 1e-12
MAX_BRUTEFORCE_DIMENSION = 8


def _validate_density_matrix(matrix: np.ndarray) -> np.ndarray:
    rho = np.asarray(matrix, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        raise InvalidDensityMatrixError(f"Matrice densité de forme invalide {rho.shape}", "invalid_shape")
    if not np.all(np.isfinite(rho)):
        raise InvalidDensityMatrixError("Matrice densité non finie", "non_finite_entries")
    if np.max(np.abs(rho - rho.conj().T)) > DENSITY_TOL:
        raise InvalidDensityMatrixError("Matrice densité non hermitienne", "not_hermitian")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > DENSITY_TOL:
        raise InvalidDensityMatrixError(
            f"Trace {trace.real:.15g} différente de 1",
            "trace_not_one",
            {"trace": trace.real}
        )
    eigenvalues = np.linalg.eigvalsh(rho)
    if eigenvalues[0] < -DENSITY_TOL or eigenvalues[-1] > 1.0 + DENSITY_TOL:
        raise InvalidDensityMatrixError(
            "Valeurs propres hors de [0, 1]",
            "not_positive",
            {"min_eigenvalue": float(eigenvalues[0]), "max_eigenvalue": float(eigenvalues[-1])}
        )
    return rho


class QuantumState(BaseModel):
    """Matrice densité hermitienne, de trace unité et positive."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _check_matrix(cls, value: np.ndarray) -> np.ndarray:
        rho = _validate_density_matrix(value)
        rho = 0.5 * (rho + rho.conj().T)
        rho.setflags(write=False)
        return rho

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "QuantumState":
        """Construit l'état en levant InvalidDensityMatrixError si besoin."""
        _validate_density_matrix(matrix)
        return cls(matrix=matrix)

    @classmethod
    def from_populations(cls, probabilities: Iterable[float], basis: Optional[np.ndarray] = None) -> "QuantumState":
        """ρ = Σ p_n |n⟩⟨n| dans la base donnée (base canonique par défaut)."""
        p = np.asarray(list(probabilities), dtype=float)
        vectors = np.eye(p.size) if basis is None else np.asarray(basis)
        return cls.from_matrix((vectors * p) @ vectors.conj().T)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def spectral(self) -> Tuple[np.ndarray, np.ndarray]:
        """Valeurs propres ramenées dans [0, 1] et vecteurs propres de ρ."""
        eigenvalues, eigenvectors = np.linalg.eigh(self.matrix)
        return np.clip(eigenvalues, 0.0, 1.0), eigenvectors

    def rotated(self, unitary: np.ndarray) -> "QuantumState":
        """U ρ U†."""
        U = np.asarray(unitary, dtype=complex)
        return QuantumState.from_matrix(U @ self.matrix @ U.conj().T)


class ErgotropyReport(BaseModel):
    """Bilan d'ergotropie d'un état contre un hamiltonien de référence."""
    model_config = ConfigDict(frozen=True)

    energy_initial: float
    energy_passive: float
    ergotropy: float = Field(ge=0.0)
    passive_assignment: Tuple[int, ...]
    T: Optional[float] = None


def _reference_basis(state: QuantumState, reference: Spectrum) -> np.ndarray:
    if reference.dimension != state.dimension:
        raise InvalidInputError(
            f"Dimensions incompatibles (état {state.dimension}, référence {reference.dimension})",
            "dimension_mismatch"
        )
    if reference.eigenvectors is None:
        raise InvalidInputError("La référence doit porter sa base propre", "missing_eigenbasis")
    return reference.eigenvectors


def reference_energy(state: QuantumState, reference: Spectrum) -> float:
    """Tr[ρ H₀] avec H₀ = Σ ε_n |n⟩⟨n|."""
    basis = _reference_basis(state, reference)
    diagonal = np.einsum("in,ij,jn->n", basis.conj(), state.matrix, basis).real
    return float(diagonal @ reference.levels)


def gibbs_battery_state(spec_full: Spectrum, T: float) -> QuantumState:
    """État de Gibbs ρ = Σ p_n |n⟩⟨n| du hamiltonien complet."""
    if spec_full.eigenvectors is None:
        raise InvalidInputError("Le spectre doit porter sa base propre", "missing_eigenbasis")
    return QuantumState.from_populations(populations(spec_full, T), spec_full.eigenvectors)


def ergotropy(state: QuantumState, reference: Spectrum) -> ErgotropyReport:
    """
    Ergotropie par affectation triée : populations décroissantes sur niveaux
    croissants. Les égalités de niveaux sont départagées par l'indice.
    """
    energy_initial = reference_energy(state, reference)
    r, _ = state.spectral()
    order = np.argsort(-r, kind="stable")
    energy_passive = float(r[order] @ reference.levels)

    extractable = energy_initial - energy_passive
    tolerance = DENSITY_TOL * max(1.0, reference.energy_scale)
    if extractable < 0.0:
        if extractable < -tolerance:
            logger.warning("Ergotropie négative ramenée à zéro", extra={"ergotropy": extractable})
        extractable = 0.0
    return ErgotropyReport(
        energy_initial=energy_initial,
        energy_passive=energy_passive,
        ergotropy=extractable,
        passive_assignment=tuple(int(i) for i in order)
    )


def passive_energy_bruteforce(state: QuantumState, reference: Spectrum) -> float:
    """min_π Σ r_π(i) ε_i sur les d! permutations (d ≤ 8)."""
    _reference_basis(state, reference)
    if state.dimension > MAX_BRUTEFORCE_DIMENSION:
        raise InvalidInputError(
            f"Énumération limitée à d ≤ {MAX_BRUTEFORCE_DIMENSION} (d = {state.dimension})",
            "dimension_too_large"
        )
    r, _ = state.spectral()
    permutations = np.array(list(itertools.permutations(range(state.dimension))))
    return float(np.min(r[permutations] @ reference.levels))


def ergotropy_bruteforce(state: QuantumState, reference: Spectrum) -> float:
    """Ergotropie Tr[ρH₀] - min_π Σ r_π(i) ε_i par énumération exhaustive."""
    return reference_energy(state, reference) - passive_energy_bruteforce(state, reference)


def battery_charge_curve(
    spec_full: Spectrum,
    reference: Spectrum,
    temperatures: Iterable[float]
) -> List[ErgotropyReport]:
    """Ergotropie de l'état de Gibbs du hamiltonien complet en fonction de T."""
    curve = []
    for T in temperatures:
        report = ergotropy(gibbs_battery_state(spec_full, T), reference)
        curve.append(report.model_copy(update={"T": float(T)}))
    return curve
