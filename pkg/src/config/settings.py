"""Application settings with environment variable support."""

import logging
import sys
from pathlib import Path

import structlog
from pydantic_settings import BaseSettings, SettingsConfigDict


# Compute base_dir at module level
_BASE_DIR = Path(__file__).parent.parent.parent.resolve()


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="OCO_",  # OCO_RTOL, OCO_OUTPUTS_DIR, etc.
    )

    # Paths - computed from base_dir
    base_dir: Path = _BASE_DIR
    config_dir: Path = _BASE_DIR / "config"
    outputs_dir: Path = _BASE_DIR / "outputs"

    # Natural units
    alpha: float = 1.0
    mass: float = 1.0

    # Integration
    rtol: float = 1e-10
    atol: float = 1e-12
    samples_per_period: int = 1024
    max_steps: int = 2_000_000

    # Guards
    singular_tolerance: float = 1e-12  # relative |r^2 + sigma| floor
    boundary_tolerance: float = 1e-9  # relative distance to the disk border
    pole_tolerance: float = 1e-6  # great circles this close to the north pole are lines

    # Reproducibility
    seed: int = 20240101

    # Logging
    log_level: str = "INFO"
    log_json: bool = False


settings = Settings()


class _Stderr:
    """Writes to whatever sys.stderr is at call time."""

    def write(self, message: str) -> int:
        return sys.stderr.write(message)

    def flush(self) -> None:
        sys.stderr.flush()


def configure_logging(level: str = None, json_output: bool = None) -> None:
    """Configure structlog level filtering and rendering."""
    level = (level or settings.log_level).upper()
    json_output = settings.log_json if json_output is None else json_output

    renderer = (
        structlog.processors.JSONRenderer()
        if json_output
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level)
        ),
        logger_factory=structlog.WriteLoggerFactory(file=_Stderr()),
        cache_logger_on_first_use=False,
    )
