"""
Sorties déterministes : CSV (`# qheat v1` puis colonnes nommées), JSON
`{"version": 1, "rows": [...]}` et graphique SVG autonome.
"""

import json
import math
from typing import Any, Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from qheat.battery.ergotropy import ErgotropyReport  # noqa: E402
from qheat.cycles.report import CycleReport  # noqa: E402
from sweeps.curves import CurveSet  # noqa: E402
from sweeps.sweep_runner import SweepRow  # noqa: E402

FORMAT_VERSION = 1
CSV_HEADER = f"# qheat v{FORMAT_VERSION}\n"

_REPORT_COLUMNS = [
    "kind", "T_H", "T_C", "mode", "W_net", "Q_in", "Q_out", "heat_absorbed", "heat_released",
    "first_law_residual", "figure_of_merit", "hot_bath_efficiency", "carnot_bound",
]
_SWEEP_COLUMNS = ["T_H", "T_C", "W_net", "Q_in", "Q_out", "first_law_residual", "mode", "figure_of_merit", "error_type"]


def _clean(value: Any) -> Any:
    """Remplace les flottants non finis par None pour un JSON strict."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def render_table(
    records: Sequence[Dict[str, Any]],
    columns: Sequence[str],
    fmt: str,
    extra: Optional[Dict[str, Any]] = None
) -> str:
    """Rend une table en CSV ou JSON avec un ordre de champs fixe."""
    if fmt == "json":
        envelope: Dict[str, Any] = {"version": FORMAT_VERSION}
        envelope.update(extra or {})
        envelope["rows"] = [_clean(dict(record)) for record in records]
        return json.dumps(envelope, indent=2, allow_nan=False, ensure_ascii=False) + "\n"
    if fmt != "csv":
        raise ValueError(f"Format de sortie inconnu : {fmt}")

    frame = pd.DataFrame([{column: record.get(column) for column in columns} for record in records], columns=list(columns))
    return CSV_HEADER + frame.to_csv(index=False, na_rep="N/A", lineterminator="\n")


def emit(text: str, path: Optional[str], stream) -> None:
    """Écrit vers un fichier, ou vers le flux donné (sortie standard)."""
    if path:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        stream.write(text)


def render_cycle_report(report: CycleReport, fmt: str) -> str:
    summary = report.to_summary()
    if fmt == "json":
        return render_table([summary], [], fmt)
    intermediates = summary.pop("intermediates")
    summary.pop("strokes")
    columns = list(_REPORT_COLUMNS)
    for key in sorted(intermediates):
        column = f"intermediate_{key}"
        summary[column] = intermediates[key]
        columns.append(column)
    return render_table([summary], columns, fmt)


def render_sweep(rows: Sequence[SweepRow], parameters: Sequence[str], fmt: str) -> str:
    records: List[Dict[str, Any]] = []
    for row in rows:
        record = {"index": row.index, **row.coordinates}
        record.update(row.model_dump(exclude={"index", "coordinates"}))
        if fmt == "csv":
            record.pop("error_message")
        records.append(record)
    return render_table(records, ["index", *parameters, *_SWEEP_COLUMNS], fmt)


def render_curves(curves: CurveSet, fmt: str) -> str:
    records = [
        {"series": series.label, "T": x, "value": y}
        for series in curves.series
        for x, y in zip(series.x, series.y)
    ]
    extra: Dict[str, Any] = {"kind": curves.kind}
    if curves.peak_temperature is not None:
        extra["peak_temperature"] = curves.peak_temperature
        extra["peak_value"] = curves.peak_value
    return render_table(records, ["series", "T", "value"], fmt, extra=extra if fmt == "json" else None)


def render_ergotropy(reports: Sequence[ErgotropyReport], fmt: str) -> str:
    records = [report.model_dump(exclude={"passive_assignment"}) for report in reports]
    return render_table(records, ["T", "energy_initial", "energy_passive", "ergotropy"], fmt)


def write_svg(curves: CurveSet, path: str) -> None:
    """Graphique linéaire SVG sans horodatage, identique d'une exécution à l'autre."""
    with plt.rc_context({"svg.hashsalt": "qheat", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.8))
        for series in curves.series:
            ax.plot(series.x, series.y, label=series.label)
        ax.set_xlabel(curves.x_label)
        ax.set_ylabel(curves.y_label)
        ax.legend(loc="best", fontsize="small")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
