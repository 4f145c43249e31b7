"""This file contains the runtime settings of diagforge and the logging setup used by the command line."""

import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

PACKAGED_FIXTURE_DIR = Path(__file__).parent.resolve() / "verify" / "data"

DEFAULT_SEED = 20240601
MAX_DEFAULT_THREADS = 8

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _int_from_env(environ: Mapping[str, str], name: str, default: int, minimum: int) -> int:
    raw = environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """Settings resolved from the environment, overridable by command line flags."""

    # directory containing the *.fix identity fixtures
    fixture_dir: Path = PACKAGED_FIXTURE_DIR
    # worker threads for search and point generation
    threads: int = 1
    # seed for randomized witness search
    seed: int = DEFAULT_SEED
    # name of a logging level
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """Builds settings from DIAGFORGE_* environment variables."""
        environ = os.environ if environ is None else environ
        fixture_dir = environ.get("DIAGFORGE_FIXTURES")
        default_threads = min(os.cpu_count() or 1, MAX_DEFAULT_THREADS)
        log_level = environ.get("DIAGFORGE_LOG_LEVEL", "WARNING").upper()
        if not isinstance(logging.getLevelName(log_level), int):
            raise ValueError(f"DIAGFORGE_LOG_LEVEL must name a logging level, got {log_level!r}")
        return cls(
            fixture_dir=Path(fixture_dir) if fixture_dir else PACKAGED_FIXTURE_DIR,
            threads=_int_from_env(environ, "DIAGFORGE_THREADS", default_threads, 1),
            seed=_int_from_env(environ, "DIAGFORGE_SEED", DEFAULT_SEED, 0),
            log_level=log_level,
        )


def configure_logging(level: str) -> None:
    """Sends diagforge log records to stderr, keeping stdout free for JSON lines."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger("diagforge")
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(level.upper())
