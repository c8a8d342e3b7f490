"""Évaluation d'une grille de cycles, en série ou sur un pool de processus."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError

from config.observability import ObservabilityManager
from qheat.cycles.runner import run_cycle
from qheat.errors import QheatError
from qheat.spectra.builder import build_spectrum
from sweeps.sweep_spec import GridPoint, SweepSpec

logger = logging.getLogger(__name__)


class SweepRow(BaseModel):
    """Une ligne de résultat : coordonnées et bilan, ou code d'erreur."""
    model_config = ConfigDict(frozen=True)

    index: int
    coordinates: Dict[str, float]
    T_H: float
    T_C: float
    W_net: Optional[float] = None
    Q_in: Optional[float] = None
    Q_out: Optional[float] = None
    first_law_residual: Optional[float] = None
    mode: Optional[str] = None
    figure_of_merit: Optional[float] = None
    error_type: Optional[str] = None
    error_message: Optional[str] = None


def evaluate_point(spec: SweepSpec, point: GridPoint) -> Tuple[SweepRow, float]:
    """Évalue un point de grille ; les erreurs de cycle deviennent des lignes d'erreur."""
    started = time.perf_counter()
    base = {"index": point.index, "coordinates": point.coordinates, "T_H": point.T_H, "T_C": point.T_C}
    try:
        report = run_cycle(
            spec.cycle,
            build_spectrum(point.model_A),
            build_spectrum(point.model_B),
            point.T_H,
            point.T_C,
            **spec.cycle_options()
        )
        row = SweepRow(
            **base,
            W_net=report.W_net,
            Q_in=report.Q_in,
            Q_out=report.Q_out,
            first_law_residual=report.first_law_residual,
            mode=report.mode.value,
            figure_of_merit=report.figure_of_merit
        )
    except QheatError as exc:
        row = SweepRow(**base, error_type=exc.error_type, error_message=str(exc))
    except ValidationError as exc:
        row = SweepRow(**base, error_type="invalid_input", error_message=str(exc.errors()[0]["msg"]))
    return row, time.perf_counter() - started


def run_sweep(
    spec: SweepSpec,
    jobs: int = 1,
    observability: Optional[ObservabilityManager] = None
) -> List[SweepRow]:
    """
    Évalue toute la grille dans l'ordre ligne par ligne.

    L'ordre des lignes ne dépend pas de l'ordonnancement : `map` rend les
    résultats dans l'ordre des points soumis.
    """
    points = list(spec.points())
    if observability is not None:
        observability.update_grid_points(len(points))
    logger.info("Balayage démarré", extra={"cycle": spec.cycle.value, "grid_points": len(points), "jobs": jobs})

    if jobs <= 1 or len(points) <= 1:
        results = [evaluate_point(spec, point) for point in points]
    else:
        chunksize = max(1, len(points) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(evaluate_point, repeat(spec), points, chunksize=chunksize))

    rows = []
    for row, duration in results:
        if observability is not None:
            if row.error_type is not None:
                observability.track_error(row.error_type)
            else:
                observability.track_cycle(spec.cycle.value, row.mode, duration)
        rows.append(row)

    failures = sum(1 for row in rows if row.error_type is not None)
    if failures:
        logger.warning("Points de grille en erreur", extra={"failures": failures, "grid_points": len(rows)})
    return rows
