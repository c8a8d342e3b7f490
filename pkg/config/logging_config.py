import logging
import sys
from typing import Optional, TextIO

from pythonjsonlogger import jsonlogger

from config.config_manager import config_manager

_HANDLER_NAME = "qheat"
_PACKAGES = ("qheat", "sweeps", "main")

def setup_logging(
    level: Optional[str] = None,
    fmt: Optional[str] = None,
    stream: Optional[TextIO] = None
) -> logging.Logger:
    """
    Configure les logs du paquet qheat sur la sortie d'erreur.

    Les résultats numériques ne partagent jamais ce flux. Un nouvel appel
    remplace le handler installé précédemment.
    """
    level = (level or config_manager.get("logging.level", "WARNING")).upper()
    fmt = fmt or config_manager.get("logging.format", "json")

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.set_name(_HANDLER_NAME)
    if fmt == "json":
        handler.setFormatter(jsonlogger.JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s"))
    else:
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))

    for package in _PACKAGES:
        logger = logging.getLogger(package)
        for existing in list(logger.handlers):
            if existing.get_name() == _HANDLER_NAME:
                logger.removeHandler(existing)
        logger.addHandler(handler)
        logger.setLevel(level)
        logger.propagate = False
    return logging.getLogger("qheat")
