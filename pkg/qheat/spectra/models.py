"""Modèles de données des substances de travail et de leurs spectres."""

import math
from enum import Enum
from typing import Any, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MAX_SITES = 10
MAX_DIMENSION = 2 ** MAX_SITES

Topology = Literal["chain", "ring", "complete"]


class ModelKind(str, Enum):
    """Familles de substances de travail supportées."""
    SINGLE_SPIN = "single_spin"
    HEISENBERG_DIMER = "heisenberg_dimer"
    HEISENBERG_CLUSTER = "heisenberg_cluster"
    EXPLICIT_LEVELS = "explicit_levels"


class Bond(BaseModel):
    """Liaison d'échange entre deux sites d'un amas."""
    model_config = ConfigDict(frozen=True)

    i: int = Field(ge=0)
    j: int = Field(ge=0)
    J: float


def _require_finite(value: float, name: str) -> float:
    if not math.isfinite(value):
        raise ValueError(f"Le paramètre {name} doit être fini (reçu {value})")
    return value


class ModelSpec(BaseModel):
    """
    Description déclarative d'une substance de travail.

    Convention : H = -Σ J_ij S_i·S_j + Σ b_i S_i^z, avec J < 0 antiferromagnétique
    et b = g μ_B B_z / k_B exprimé en kelvin.
    """
    model_config = ConfigDict(frozen=True)

    kind: ModelKind
    J: float = 0.0
    b: float = 0.0
    n_sites: int = 1
    bonds: Tuple[Bond, ...] = ()
    topology: Topology = "chain"
    site_fields: Optional[Tuple[float, ...]] = None
    levels: Optional[Tuple[float, ...]] = None

    @model_validator(mode="before")
    @classmethod
    def _default_site_count(cls, data: Any) -> Any:
        if isinstance(data, dict) and "n_sites" not in data:
            kind = data.get("kind")
            if kind in (ModelKind.HEISENBERG_DIMER, ModelKind.HEISENBERG_DIMER.value):
                data = {**data, "n_sites": 2}
        return data

    @field_validator("bonds", mode="before")
    @classmethod
    def _coerce_bonds(cls, value: Any) -> Any:
        if value is None:
            return ()
        coerced = []
        for bond in value:
            if isinstance(bond, (tuple, list)):
                i, j, J = bond
                bond = {"i": i, "j": j, "J": J}
            coerced.append(bond)
        return tuple(coerced)

    @model_validator(mode="after")
    def _check_invariants(self) -> "ModelSpec":
        _require_finite(self.J, "J")
        _require_finite(self.b, "b")
        if not 1 <= self.n_sites <= MAX_SITES:
            raise ValueError(f"n_sites doit être compris entre 1 et {MAX_SITES} (reçu {self.n_sites})")

        if self.kind == ModelKind.SINGLE_SPIN and self.n_sites != 1:
            raise ValueError("Un spin isolé n'a qu'un site")
        if self.kind == ModelKind.HEISENBERG_DIMER:
            if self.n_sites != 2:
                raise ValueError("Un dimère de Heisenberg a exactement deux sites")
            if self.site_fields is not None or self.bonds:
                raise ValueError("Le dimère analytique n'accepte ni champs par site ni liaisons explicites")

        if self.kind == ModelKind.HEISENBERG_CLUSTER:
            for bond in self.bonds:
                _require_finite(bond.J, "J_ij")
                if bond.i == bond.j:
                    raise ValueError(f"Liaison d'un site avec lui-même interdite ({bond.i})")
                if bond.i >= self.n_sites or bond.j >= self.n_sites:
                    raise ValueError(f"Liaison ({bond.i}, {bond.j}) hors de l'amas de {self.n_sites} sites")
            if self.site_fields is not None:
                if len(self.site_fields) != self.n_sites:
                    raise ValueError("site_fields doit fournir un champ par site")
                for field in self.site_fields:
                    _require_finite(field, "site_fields")

        if self.kind == ModelKind.EXPLICIT_LEVELS:
            if not self.levels:
                raise ValueError("Une liste de niveaux explicite ne peut pas être vide")
            if len(self.levels) > MAX_DIMENSION:
                raise ValueError(f"Au plus {MAX_DIMENSION} niveaux sont acceptés")
            for level in self.levels:
                _require_finite(level, "levels")
        return self

    @property
    def dimension(self) -> int:
        """Dimension de l'espace de Hilbert."""
        if self.kind == ModelKind.EXPLICIT_LEVELS:
            return len(self.levels or ())
        return 2 ** self.n_sites

    def resolved_bonds(self) -> Tuple[Bond, ...]:
        """Liaisons effectives : explicites, sinon déduites de la topologie."""
        if self.kind == ModelKind.HEISENBERG_DIMER:
            return (Bond(i=0, j=1, J=self.J),)
        if self.kind != ModelKind.HEISENBERG_CLUSTER:
            return ()
        if self.bonds:
            return self.bonds

        n = self.n_sites
        if self.topology == "complete":
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        else:
            pairs = [(i, i + 1) for i in range(n - 1)]
            if self.topology == "ring" and n > 2:
                pairs.append((n - 1, 0))
        return tuple(Bond(i=i, j=j, J=self.J) for i, j in pairs)

    def resolved_fields(self) -> Tuple[float, ...]:
        """Champ Zeeman de chaque site."""
        if self.site_fields is not None:
            return self.site_fields
        return (self.b,) * self.n_sites

    @classmethod
    def single_spin(cls, b: float) -> "ModelSpec":
        return cls(kind=ModelKind.SINGLE_SPIN, b=b)

    @classmethod
    def dimer(cls, J: float, b: float = 0.0) -> "ModelSpec":
        return cls(kind=ModelKind.HEISENBERG_DIMER, J=J, b=b, n_sites=2)

    @classmethod
    def cluster(
        cls,
        n_sites: int,
        J: float = 0.0,
        b: float = 0.0,
        topology: Topology = "chain",
        bonds: Optional[Any] = None,
        site_fields: Optional[Tuple[float, ...]] = None
    ) -> "ModelSpec":
        return cls(
            kind=ModelKind.HEISENBERG_CLUSTER,
            n_sites=n_sites,
            J=J,
            b=b,
            topology=topology,
            bonds=bonds or (),
            site_fields=tuple(site_fields) if site_fields is not None else None
        )

    @classmethod
    def explicit(cls, levels: Any) -> "ModelSpec":
        return cls(kind=ModelKind.EXPLICIT_LEVELS, levels=tuple(float(e) for e in levels))


class Spectrum(BaseModel):
    """
    Spectre exact d'une substance de travail (k_B = 1, énergies en kelvin).

    Les énergies sont triées par ordre croissant et les dégénérescences restent
    explicites. La colonne n de `eigenvectors`, si présente, est l'état propre
    associé à energies[n].
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    energies: Tuple[float, ...]
    source: Optional[ModelSpec] = None
    eigenvectors: Optional[np.ndarray] = Field(default=None, exclude=True, repr=False)

    @field_validator("energies")
    @classmethod
    def _check_energies(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not value:
            raise ValueError("Un spectre ne peut pas être vide")
        if not all(math.isfinite(e) for e in value):
            raise ValueError("Toutes les énergies doivent être finies")
        if any(b < a for a, b in zip(value, value[1:])):
            raise ValueError("Les énergies doivent être triées par ordre croissant")
        return value

    @model_validator(mode="after")
    def _check_eigenvectors(self) -> "Spectrum":
        if self.eigenvectors is not None:
            d = len(self.energies)
            if self.eigenvectors.shape != (d, d):
                raise ValueError(f"La base propre doit être de forme ({d}, {d})")
            self.eigenvectors.setflags(write=False)
        return self

    @classmethod
    def from_levels(
        cls,
        levels: Any,
        source: Optional[ModelSpec] = None,
        eigenvectors: Optional[np.ndarray] = None
    ) -> "Spectrum":
        """Construit un spectre à partir de niveaux non triés (tri stable)."""
        values = np.asarray(levels, dtype=float).ravel()
        order = np.argsort(values, kind="stable")
        vectors = None
        if eigenvectors is not None:
            vectors = np.array(eigenvectors, copy=True)[:, order]
        return cls(energies=tuple(values[order].tolist()), source=source, eigenvectors=vectors)

    @property
    def dimension(self) -> int:
        return len(self.energies)

    @property
    def levels(self) -> np.ndarray:
        """Énergies sous forme de tableau numpy."""
        return np.asarray(self.energies, dtype=float)

    @property
    def ground_energy(self) -> float:
        return self.energies[0]

    @property
    def spread(self) -> float:
        """Largeur du spectre E_max - E_min."""
        return self.energies[-1] - self.energies[0]

    @property
    def energy_scale(self) -> float:
        """Échelle d'énergie utilisée pour les tolérances relatives."""
        return float(np.max(np.abs(self.levels)))

    def centered(self) -> np.ndarray:
        """Énergies recentrées sur leur moyenne."""
        levels = self.levels
        return levels - levels.mean()

    def ground_degeneracy(self, tol: Optional[float] = None) -> int:
        """Nombre de niveaux confondus avec le fondamental à `tol` près."""
        if tol is None:
            tol = 1e-12 * max(1.0, self.energy_scale)
        return int(np.count_nonzero(self.levels <= self.energies[0] + tol))

    def is_degenerate(self, tol: Optional[float] = None) -> bool:
        """Vrai si tous les niveaux sont confondus."""
        return self.ground_degeneracy(tol) == self.dimension

    def scaled(self, kappa: float) -> "Spectrum":
        """Dilatation uniforme d'un facteur kappa autour de l'énergie moyenne."""
        if not (kappa > 0.0) or not math.isfinite(kappa):
            raise ValueError(f"Le facteur d'échelle doit être fini et positif (reçu {kappa})")
        levels = self.levels
        mean = levels.mean()
        scaled = mean + kappa * (levels - mean)
        return Spectrum(energies=tuple(scaled.tolist()), eigenvectors=self.eigenvectors)

    def shifted(self, offset: float) -> "Spectrum":
        """Translation de tous les niveaux d'une constante."""
        shifted = self.levels + float(offset)
        return Spectrum(energies=tuple(shifted.tolist()), eigenvectors=self.eigenvectors)
