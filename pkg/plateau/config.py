"""
Centralized configuration.

Settings come from environment variables prefixed with ``PLATEAU_`` (or a
``.env`` file) and are validated by Pydantic. CLI flags override individual
fields through ``Settings.model_copy(update=...)``.
"""

import logging
import sys
from functools import lru_cache
from typing import TextIO

from pydantic_settings import BaseSettings

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


class Settings(BaseSettings):
    """Engine and service settings loaded from environment variables."""

    # --- Application ---
    app_name: str = "Plateau"
    app_version: str = "0.1.0"
    environment: str = "development"  # development | staging | production
    log_level: str = "INFO"  # DEBUG | INFO | WARNING | ERROR

    # --- Server ---
    host: str = "127.0.0.1"
    port: int = 8000

    # --- Budgets ---
    enumeration_budget: int = 100_000_000  # p^(m+1) * n for weight enumeration
    minimality_budget: int = 4096  # codewords for the exhaustive minimality check
    search_budget: int = 1_000_000  # candidates per sweep
    max_field_size: int = 3**12

    # --- Execution ---
    threads: int = 1
    seed: int = 0

    # --- CORS ---
    allowed_origins: list[str] = ["*"]

    model_config = {
        "env_prefix": "PLATEAU_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
    }


@lru_cache
def get_settings() -> Settings:
    """Return the process-wide Settings instance (env vars are read once)."""
    return Settings()


def configure_logging(level: str | None = None, stream: TextIO | None = None) -> None:
    """
    Install the single root handler used by both the CLI and the service.

    The CLI passes ``sys.stderr`` so that stdout stays reserved for results.
    """
    name = (level or get_settings().log_level).upper()
    log_level = getattr(logging, name, logging.INFO)

    handler = logging.StreamHandler(stream or sys.stdout)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))

    root = logging.getLogger()
    root.setLevel(log_level)
    root.handlers.clear()
    root.addHandler(handler)

    # Quiet noisy third-party loggers
    logging.getLogger("uvicorn.access").setLevel(logging.WARNING)
