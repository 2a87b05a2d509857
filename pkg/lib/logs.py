import logging
import sys


def init_logging(stream=None, level=logging.INFO):
    """Installs the process-wide handler on the root logger; calling it again only changes the level."""
    logger = logging.getLogger()
    logger.setLevel(level)
    if any(getattr(h, "_pbg", False) for h in logger.handlers):
        return logger

    log_formatter = logging.Formatter("%(levelname)s:%(name)s: %(message)s")
    handler = logging.StreamHandler(stream or sys.stdout)
    handler.setFormatter(log_formatter)
    handler._pbg = True
    logger.addHandler(handler)
    return logger
