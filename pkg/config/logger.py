import logging
import os

LOG_LEVEL_ENV = "GDUAL_LOG_LEVEL"

_LOG_FORMAT = "%(asctime)s - [%(levelname)s] - %(name)s - (%(filename)s).%(funcName)s(L:%(lineno)d) - %(message)s"


class LevelColorFormatter(logging.Formatter):
    """Colors the whole record by level; reports go to stdout, log lines to stderr."""

    COLORS = {
        logging.DEBUG: "\x1b[38;21m",
        logging.INFO: "\x1b[38;5;39m",
        logging.WARNING: "\x1b[38;5;226m",
        logging.ERROR: "\x1b[38;5;196m",
        logging.CRITICAL: "\x1b[31;1m",
    }
    RESET = "\x1b[0m"

    def __init__(self, fmt: str = _LOG_FORMAT) -> None:
        super().__init__()
        self._formatters = {
            level: logging.Formatter(color + fmt + self.RESET) for level, color in self.COLORS.items()
        }
        self._plain = logging.Formatter(fmt)

    def format(self, record: logging.LogRecord) -> str:
        return self._formatters.get(record.levelno, self._plain).format(record)


def get_log_level() -> int:
    """Level named by GDUAL_LOG_LEVEL, WARNING when unset or unknown."""
    name = os.getenv(LOG_LEVEL_ENV, "WARNING").upper()
    # logging.getLevelNamesMapping() is 3.11+; on 3.11 it returns this same dict copy.
    mapping = getattr(logging, "getLevelNamesMapping", lambda: dict(logging._nameToLevel))()
    return mapping.get(name, logging.WARNING)


def get_stream_handler() -> logging.StreamHandler:
    handler = logging.StreamHandler()  # stderr
    handler.setLevel(get_log_level())
    handler.setFormatter(LevelColorFormatter())
    return handler


def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(name)
    logger.setLevel(get_log_level())
    if not logger.handlers:
        logger.addHandler(get_stream_handler())
        logger.propagate = False
    return logger
