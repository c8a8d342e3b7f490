"""
Température finale d'une transformation adiabatique quantique.

Si le spectre d'arrivée est une dilatation uniforme du spectre de départ
(à une constante près), T2 = κ·T1 conserve exactement toutes les populations.
Sinon on impose la condition isentropique S(B, T2) = S(A, T1) par recherche de racine
encadrée (méthode de Brent) sur u = ln T, S étant strictement
croissante en T.
"""

import logging
import math
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import optimize

from qheat.errors import AdiabaticEndpointError, InvalidInputError, require_positive_temperature
from qheat.gibbs.thermal_state import entropy, entropy_curve, populations
from qheat.spectra.models import Spectrum

logger = logging.getLogger(__name__)

SCALING_RTOL = 1e-10
ENTROPY_TOL = 1e-12
MAX_ITERATIONS = 200
LOG_T_LIMIT = 690.0
BRACKET_STEP = 0.25

SolverMethod = Literal["identity", "uniform_scaling", "bisection"]


class AdiabatSolution(BaseModel):
    """Résultat du solveur d'extrémité adiabatique."""
    model_config = ConfigDict(frozen=True)

    T_end: float = Field(gt=0.0)
    method: SolverMethod
    iterations: int = Field(ge=0)
    entropy_residual: float
    population_drift: float = Field(ge=0.0)
    kappa: Optional[float] = None


def uniform_scaling_factor(spec_A: Spectrum, spec_B: Spectrum, rtol: float = SCALING_RTOL) -> Optional[float]:
    """
    Facteur κ > 0 tel que B - <B> = κ (A - <A>), ou None s'il n'existe pas.

    Le test se fait sur les énergies recentrées : une translation globale ne
    change aucune population.
    """
    if spec_A.dimension != spec_B.dimension:
        return None
    a = spec_A.centered()
    b = spec_B.centered()
    norm_a = float(a @ a)
    if norm_a == 0.0:
        return None
    kappa = float(a @ b) / norm_a
    if not kappa > 0.0:
        return None
    if float(np.max(np.abs(b - kappa * a))) > rtol * float(np.max(np.abs(b))):
        return None
    return kappa


def population_drift(spec_A: Spectrum, T_A: float, spec_B: Spectrum, T_B: float) -> float:
    """Écart L1 entre les populations de Gibbs de deux états de même dimension."""
    if spec_A.dimension != spec_B.dimension:
        return float("nan")
    return float(np.abs(populations(spec_B, T_B) - populations(spec_A, T_A)).sum())


def _bracket(objective, u_guess: float) -> Tuple[float, float, int]:
    """Encadre la racine de `objective` (croissante) autour de u_guess."""
    lo = hi = min(max(u_guess, -LOG_T_LIMIT), LOG_T_LIMIT)
    step = BRACKET_STEP
    expansions = 0
    while objective(lo) > 0.0:
        if lo <= -LOG_T_LIMIT:
            raise AdiabaticEndpointError("Encadrement impossible vers les basses températures", "bracket_failure")
        lo = max(lo - step, -LOG_T_LIMIT)
        step *= 2.0
        expansions += 1
    step = BRACKET_STEP
    while objective(hi) < 0.0:
        if hi >= LOG_T_LIMIT:
            raise AdiabaticEndpointError("Encadrement impossible vers les hautes températures", "bracket_failure")
        hi = min(hi + step, LOG_T_LIMIT)
        step *= 2.0
        expansions += 1
    return lo, hi, expansions


def solve_adiabat(
    spec_A: Spectrum,
    T1: float,
    spec_B: Spectrum,
    use_fast_path: bool = True
) -> AdiabatSolution:
    """Résout la température d'arrivée T2 telle que S(B, T2) = S(A, T1)."""
    T1 = require_positive_temperature(T1, "T1")
    if spec_A.dimension != spec_B.dimension:
        raise InvalidInputError(
            f"Dimensions incompatibles ({spec_A.dimension} et {spec_B.dimension})",
            "dimension_mismatch",
            {"dim_A": spec_A.dimension, "dim_B": spec_B.dimension}
        )

    degenerate_A = spec_A.is_degenerate()
    degenerate_B = spec_B.is_degenerate()
    if degenerate_A and degenerate_B:
        return AdiabatSolution(T_end=T1, method="identity", iterations=0, entropy_residual=0.0, population_drift=0.0)

    target = entropy(spec_A, T1)
    if use_fast_path:
        kappa = uniform_scaling_factor(spec_A, spec_B)
        if kappa is not None:
            T2 = kappa * T1
            residual = entropy(spec_B, T2) - target
            # une dilatation seulement approchée retombe sur la dichotomie
            if abs(residual) <= ENTROPY_TOL * max(1.0, target):
                return AdiabatSolution(
                    T_end=T2,
                    method="uniform_scaling",
                    iterations=0,
                    entropy_residual=residual,
                    population_drift=population_drift(spec_A, T1, spec_B, T2),
                    kappa=kappa
                )

    lower = math.log(spec_B.ground_degeneracy())
    upper = math.log(spec_B.dimension)
    if degenerate_A or not lower < target < upper:
        raise AdiabaticEndpointError(
            f"Entropie cible {target:.6g} hors de l'intervalle atteignable ]{lower:.6g}, {upper:.6g}[",
            "entropy_out_of_range",
            {"target": target, "lower": lower, "upper": upper}
        )

    curve_B = entropy_curve(spec_B)

    def objective(u: float) -> float:
        return curve_B(math.exp(u)) - target

    u_guess = math.log(T1)
    if spec_A.spread > 0.0 and spec_B.spread > 0.0:
        u_guess += math.log(spec_B.spread / spec_A.spread)
    lo, hi, expansions = _bracket(objective, u_guess)

    u_root, result = optimize.brentq(
        objective,
        lo,
        hi,
        xtol=1e-15,
        rtol=4 * np.finfo(float).eps,
        maxiter=MAX_ITERATIONS,
        full_output=True,
        disp=False
    )
    T2 = math.exp(u_root)
    residual = entropy(spec_B, T2) - target
    if not result.converged or abs(residual) > ENTROPY_TOL * max(1.0, target):
        raise AdiabaticEndpointError(
            f"Recherche de racine non convergée (résidu d'entropie {residual:.3e})",
            "solver_not_converged",
            {"iterations": result.iterations, "entropy_residual": residual}
        )

    drift = population_drift(spec_A, T1, spec_B, T2)
    logger.debug(
        "Extrémité adiabatique résolue par la méthode de Brent",
        extra={"T_start": T1, "T_end": T2, "iterations": result.iterations, "population_drift": drift}
    )
    return AdiabatSolution(
        T_end=T2,
        method="bisection",
        iterations=result.iterations + expansions,
        entropy_residual=residual,
        population_drift=drift
    )


def adiabatic_endpoint(
    spec_A: Spectrum,
    T1: float,
    spec_B: Spectrum,
    use_fast_path: bool = True
) -> float:
    """Température T2 atteinte par l'adiabatique (spec_A, T1) → spec_B."""
    return solve_adiabat(spec_A, T1, spec_B, use_fast_path).T_end
