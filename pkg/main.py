"""
Interface en ligne de commande de qheat.

Sous-commandes : cycle, sweep, stdiagram, dsiso, ergotropy. Codes de sortie :
0 succès, 1 erreur d'usage ou d'entrée, 2 erreur numérique ou de fermeture.
Les résultats vont vers --output ou la sortie standard, les logs vers la
sortie d'erreur.
"""

import argparse
import logging
import re
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from config.config_manager import config_manager
from config.logging_config import setup_logging
from config.observability import ObservabilityManager
from qheat.battery.ergotropy import battery_charge_curve
from qheat.cycles.report import CycleKind
from qheat.cycles.runner import run_cycle
from qheat.errors import InvalidInputError, QheatError
from qheat.spectra.builder import build_spectrum
from qheat.spectra.models import ModelSpec
from sweeps.curves import delta_s_iso, st_diagram
from sweeps.output_writers import (
    emit,
    render_curves,
    render_cycle_report,
    render_ergotropy,
    render_sweep,
    write_svg,
)
from sweeps.sweep_runner import run_sweep
from sweeps.sweep_spec import Axis, parse_sweep_spec

logger = logging.getLogger("main")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2

_NUMBER = r"-?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_NEGATIVE_NUMBER_LIST = re.compile(rf"^-(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?:,\s*{_NUMBER})*,?$")


class CliUsageError(Exception):
    """Erreur d'usage de la ligne de commande."""


class QheatArgumentParser(argparse.ArgumentParser):
    """
    Parseur qui lève CliUsageError au lieu de quitter le processus.

    Les listes de nombres négatifs (`-32,-42`) sont lues comme des valeurs et
    non comme des options.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_NUMBER_LIST

    def error(self, message: str) -> None:
        raise CliUsageError(message)


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"liste de nombres invalide : {text}") from exc


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="Fichier `option = valeur` (les options en ligne priment)")
    parser.add_argument("--log-level", help="Niveau de log (DEBUG, INFO, WARNING, ...)")
    parser.add_argument("--log-format", choices=["json", "text"])
    parser.add_argument("--output", help="Fichier de sortie (sortie standard par défaut)")
    parser.add_argument("--format", choices=["csv", "json"], default=config_manager.get("output.format", "csv"))
    parser.add_argument("--metrics-file", help="Export des métriques Prometheus au format texte")
    parser.add_argument("--dump-config", help="Instantané JSON de la configuration effective")


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=["single", "dimer", "cluster", "levels"], default="dimer")
    parser.add_argument("--J-a", type=float, default=0.0, help="Couplage de la substance A (K)")
    parser.add_argument("--J-b", type=float, default=0.0, help="Couplage de la substance B (K)")
    parser.add_argument("--b-a", type=float, default=0.0, help="Champ Zeeman de A (K)")
    parser.add_argument("--b-b", type=float, default=0.0, help="Champ Zeeman de B (K)")
    parser.add_argument("--n-sites", type=int, default=3)
    parser.add_argument("--topology", choices=["chain", "ring", "complete"], default="chain")
    parser.add_argument("--levels-a", type=_float_list)
    parser.add_argument("--levels-b", type=_float_list)


def _add_cycle_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cycle", choices=[kind.value for kind in CycleKind], default="stirling")
    parser.add_argument("--t-hot", type=float, default=40.0)
    parser.add_argument("--t-cold", type=float, default=20.0)
    parser.add_argument("--carnot-closure", choices=["spectrum", "parameter"])
    parser.add_argument("--carnot-parameter", choices=["J", "b"])
    parser.add_argument("--epsilon-scale", type=float)


def _add_temperature_axis(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t-min", type=float, default=1.0)
    parser.add_argument("--t-max", type=float, default=100.0)
    parser.add_argument("--steps", type=int, default=100)
    parser.add_argument("--scale", choices=["linear", "log"], default="linear")


def build_parser() -> QheatArgumentParser:
    parser = QheatArgumentParser(prog="qheat", description="Machines thermiques quantiques sur amas de spins 1/2")
    subparsers = parser.add_subparsers(dest="command", required=True)

    cycle = subparsers.add_parser("cycle", help="Évalue un cycle")
    _add_common_options(cycle)
    _add_model_options(cycle)
    _add_cycle_options(cycle)

    sweep = subparsers.add_parser("sweep", help="Balayage de paramètres (diagramme de modes)")
    _add_common_options(sweep)
    _add_model_options(sweep)
    _add_cycle_options(sweep)
    sweep.add_argument(
        "--axis",
        action="append",
        help="PARAMÈTRE:MIN:MAX:PAS[:linear|log], PARAMÈTRE parmi J_a, J_b, b_a, b_b, t_hot, t_cold ; "
             "dans --config, plusieurs axes séparés par « ; »"
    )
    sweep.add_argument("--jobs", type=int, default=config_manager.get("sweep.jobs", 1))

    stdiagram = subparsers.add_parser("stdiagram", help="Courbes entropie-température")
    _add_common_options(stdiagram)
    _add_model_options(stdiagram)
    _add_temperature_axis(stdiagram)
    stdiagram.add_argument("--J-values", type=_float_list, help="Couplages à tracer (défaut : J_a et J_b)")
    stdiagram.add_argument("--svg")

    dsiso = subparsers.add_parser("dsiso", help="Variation isotherme d'entropie A → B")
    _add_common_options(dsiso)
    _add_model_options(dsiso)
    _add_temperature_axis(dsiso)
    dsiso.add_argument("--svg")

    ergotropy = subparsers.add_parser("ergotropy", help="Ergotropie du dimère contre le terme Zeeman")
    _add_common_options(ergotropy)
    _add_temperature_axis(ergotropy)
    ergotropy.add_argument("--J", type=float, required=True)
    ergotropy.add_argument("--b", type=float, required=True)
    ergotropy.add_argument("--t", type=float, help="Température unique (sinon l'axe --t-min/--t-max)")

    parser.subcommands = subparsers.choices
    return parser


def _split_repeated(value: str) -> List[str]:
    return [part.strip() for part in value.split(";") if part.strip()]


def _apply_config_file(parser: QheatArgumentParser, argv: Sequence[str]) -> None:
    """Injecte les valeurs du fichier --config comme défauts des sous-commandes."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        flags = config_manager.load_flag_file(known.config)
    except (FileNotFoundError, ValueError) as exc:
        raise CliUsageError(str(exc)) from exc

    for key, value in flags.items():
        applied = False
        for subparser in parser.subcommands.values():
            action = subparser._option_string_actions.get(f"--{key}")
            if action is None or action.dest == "config":
                continue
            if isinstance(action, argparse._AppendAction):
                # une option répétable ne reprend le fichier que si la ligne de commande l'omet
                subparser.set_defaults(**{f"{action.dest}_from_config": _split_repeated(value)})
            else:
                subparser.set_defaults(**{action.dest: value})
            applied = True
        if not applied:
            raise CliUsageError(f"Option inconnue dans {known.config} : {key}")


def _model(args: argparse.Namespace, J: float, b: float, levels: Optional[List[float]]) -> ModelSpec:
    if args.model == "single":
        return ModelSpec.single_spin(b)
    if args.model == "dimer":
        return ModelSpec.dimer(J, b)
    if args.model == "cluster":
        return ModelSpec.cluster(args.n_sites, J, b, args.topology)
    if not levels:
        raise CliUsageError("--model levels exige --levels-a et --levels-b")
    return ModelSpec.explicit(levels)


def _temperature_axis(args: argparse.Namespace) -> Axis:
    return Axis(min=args.t_min, max=args.t_max, steps=args.steps, scale=args.scale)


def _parse_axis(text: str) -> Dict[str, Any]:
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise CliUsageError(f"Axe invalide : {text} (attendu PARAMÈTRE:MIN:MAX:PAS[:ÉCHELLE])")
    try:
        axis = {"parameter": parts[0], "min": float(parts[1]), "max": float(parts[2]), "steps": int(parts[3])}
    except ValueError as exc:
        raise CliUsageError(f"Axe invalide : {text}") from exc
    if len(parts) == 5:
        axis["scale"] = parts[4]
    return axis


def _cycle_options(args: argparse.Namespace) -> Dict[str, Any]:
    options: Dict[str, Any] = {"epsilon_scale": args.epsilon_scale}
    if args.cycle == CycleKind.CARNOT.value:
        options["closure"] = args.carnot_closure
        options["parameter"] = args.carnot_parameter
    return options


def _command_cycle(args: argparse.Namespace, observability: ObservabilityManager) -> str:
    spec_A = build_spectrum(_model(args, args.J_a, args.b_a, args.levels_a))
    spec_B = build_spectrum(_model(args, args.J_b, args.b_b, args.levels_b))
    started = time.perf_counter()
    report = run_cycle(args.cycle, spec_A, spec_B, args.t_hot, args.t_cold, **_cycle_options(args))
    observability.track_cycle(report.kind.value, report.mode.value, time.perf_counter() - started)
    logger.info("Cycle évalué", extra={"cycle": report.kind.value, "mode": report.mode.value})
    return render_cycle_report(report, args.format)


def _command_sweep(args: argparse.Namespace, observability: ObservabilityManager) -> str:
    texts = args.axis or getattr(args, "axis_from_config", None)
    if not texts:
        raise CliUsageError("le balayage exige au moins un --axis")
    axes = [_parse_axis(text) for text in texts]
    spec = parse_sweep_spec({
        "cycle": args.cycle,
        "model_template": _model(args, args.J_a, args.b_a, args.levels_a),
        "model_template_b": ModelSpec.explicit(args.levels_b) if args.model == "levels" and args.levels_b else None,
        "J_a": args.J_a,
        "J_b": args.J_b,
        "b_a": args.b_a,
        "b_b": args.b_b,
        "t_hot": args.t_hot,
        "t_cold": args.t_cold,
        "axes": axes,
        "carnot_closure": args.carnot_closure,
        "carnot_parameter": args.carnot_parameter,
        "epsilon_scale": args.epsilon_scale
    })
    rows = run_sweep(spec, jobs=max(1, args.jobs), observability=observability)
    return render_sweep(rows, [axis.parameter for axis in spec.axes], args.format)


def _command_stdiagram(args: argparse.Namespace, observability: ObservabilityManager) -> str:
    if args.model == "levels":
        models = [_model(args, 0.0, 0.0, levels) for levels in (args.levels_a, args.levels_b) if levels]
    else:
        couplings = args.J_values or [args.J_a, args.J_b]
        models = [_model(args, J, args.b_a, None) for J in couplings]
    curves = st_diagram(models, _temperature_axis(args))
    if args.svg:
        write_svg(curves, args.svg)
    return render_curves(curves, args.format)


def _command_dsiso(args: argparse.Namespace, observability: ObservabilityManager) -> str:
    curves = delta_s_iso(
        _model(args, args.J_a, args.b_a, args.levels_a),
        _model(args, args.J_b, args.b_b, args.levels_b),
        _temperature_axis(args)
    )
    logger.info("ΔS_iso", extra={"peak_temperature": curves.peak_temperature, "peak_value": curves.peak_value})
    if args.svg:
        write_svg(curves, args.svg)
    return render_curves(curves, args.format)


def _command_ergotropy(args: argparse.Namespace, observability: ObservabilityManager) -> str:
    spec_full = build_spectrum(ModelSpec.dimer(args.J, args.b), with_eigenvectors=True)
    reference = build_spectrum(ModelSpec.dimer(0.0, args.b), with_eigenvectors=True)
    temperatures = [args.t] if args.t is not None else _temperature_axis(args).values().tolist()
    return render_ergotropy(battery_charge_curve(spec_full, reference, temperatures), args.format)


_COMMANDS = {
    "cycle": _command_cycle,
    "sweep": _command_sweep,
    "stdiagram": _command_stdiagram,
    "dsiso": _command_dsiso,
    "ergotropy": _command_ergotropy,
}


def cli_main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Exécute la ligne de commande et retourne le code de sortie."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
    except CliUsageError as exc:
        sys.stderr.write(f"qheat: erreur : {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)

    setup_logging(args.log_level, args.log_format)
    if args.dump_config:
        config_manager.save_to_file(args.dump_config)
    observability = ObservabilityManager()
    try:
        text = _COMMANDS[args.command](args, observability)
        emit(text, args.output, stdout)
    except (CliUsageError, InvalidInputError, ValueError) as exc:
        if isinstance(exc, QheatError):
            observability.track_error(exc.error_type)
        logger.error("Entrée invalide", extra={"error": str(exc)})
        sys.stderr.write(f"qheat: erreur : {exc}\n")
        return EXIT_USAGE
    except QheatError as exc:
        observability.track_error(exc.error_type)
        logger.error("Échec numérique", extra={"error_type": exc.error_type, "context": exc.context})
        sys.stderr.write(f"qheat: échec numérique : {exc}\n")
        return EXIT_NUMERICAL
    finally:
        if args.metrics_file:
            observability.write_textfile(args.metrics_file)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(cli_main())
