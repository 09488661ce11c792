"""Runtime settings for gdual, read from the environment (and .env)."""

import os

from dotenv import load_dotenv

from config.logger import get_logger

load_dotenv(override=True)
logger = get_logger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


class GDualSettings:
    """Limits and defaults shared by the library and the CLI."""

    def __init__(self):
        self.reload()

    def reload(self) -> "GDualSettings":
        self.max_dim = _int_env("GDUAL_MAX_DIM", 4096)
        self.window = _int_env("GDUAL_WINDOW", 3)
        self.codim_bound = _int_env("GDUAL_CODIM_BOUND", 6)
        self.truncate = _int_env("GDUAL_TRUNCATE", 8)
        self.seed = _int_env("GDUAL_SEED", 0)
        self.workers = _int_env("GDUAL_WORKERS", 4)
        return self

    def to_dict(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "window": self.window,
            "codim_bound": self.codim_bound,
            "truncate": self.truncate,
            "seed": self.seed,
            "workers": self.workers,
        }


# Global instance
settings = GDualSettings()
