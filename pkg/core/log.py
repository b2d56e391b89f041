# core/log.py
import logging
import os
import sys

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"
LOG_LEVEL_ENV = "QCV_LOG_LEVEL"

_configured = False


def _configure_root():
    global _configured
    if _configured:
        return

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))

    root = logging.getLogger("qcv")
    root.addHandler(handler)
    root.setLevel(os.environ.get(LOG_LEVEL_ENV, "WARNING").upper())
    root.propagate = False

    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Loggers live under the `qcv` namespace so one handler serves the whole tree."""
    _configure_root()
    return logging.getLogger(f"qcv.{name}")


def set_level(level: str):
    _configure_root()
    logging.getLogger("qcv").setLevel(level.upper())
