"""
Process-level settings for the asset distribution simulator.

Experiment parameters live in the experiment config (``src.cli.config_loader``);
this module only holds knobs that apply to every run of the process.
"""

from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with validation."""

    model_config = SettingsConfigDict(
        env_prefix="MSAD_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "Multi-Scale Asset Distribution"
    app_version: str = "1.0.0"

    # Logging
    log_level: str = "INFO"
    log_dir: Optional[Path] = None
    log_format: str = "standard"  # "json" or "standard"

    # Outputs
    output_dir: Path = Path("results")
    csv_float_format: str = "%.12g"

    # Sweeps
    sweep_workers: int = 1

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of {valid_levels}")
        return v.upper()

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """Validate log format."""
        if v.lower() not in ("json", "standard"):
            raise ValueError("Log format must be 'json' or 'standard'")
        return v.lower()

    @field_validator("sweep_workers")
    @classmethod
    def validate_sweep_workers(cls, v: int) -> int:
        """Validate sweep worker count."""
        if v < 1:
            raise ValueError("sweep_workers must be >= 1")
        return v

    def resolve_output(self, path: Path) -> Path:
        """Place bare file names under ``output_dir``."""
        path = Path(path)
        if path.is_absolute() or path.parent != Path("."):
            return path
        return self.output_dir / path


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Returns:
        Settings: Application settings

    Example:
        >>> settings = get_settings()
        >>> settings.sweep_workers
        1
    """
    return Settings()
