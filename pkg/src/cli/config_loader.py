"""
Experiment configuration: parsing, validation and canonical emission.

A config is a flat YAML mapping. The environment is either the switching
shorthand (``T``, ``high_q``, ``low_q``, ``pattern``) or an explicit
``schedule`` list of ``{start_step, qualities}`` entries. A ``preset: paper``
key, or the ``preset`` argument, fills in the published experimental setup;
keys given explicitly override the preset.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    ValidationInfo,
    field_validator,
    model_validator,
)

from src.core.exceptions import (
    EnvironmentScheduleError,
    InvalidConfigurationError,
    OutputError,
    TopologyError,
)
from src.core.logger import get_logger
from src.model.environment import Environment, ScheduleEntry
from src.model.params import (
    GAMMA_FIELDS,
    THRESHOLD_FIELDS,
    ModelParams,
    check_alpha,
    check_beta,
    check_cost,
    check_hysteresis,
    check_positive,
    check_unit_interval,
)
from src.model.topologies import TopologyKind

logger = get_logger(__name__)

PAPER_PRESET: Dict[str, Any] = {
    "topology": "growable",
    "beta": 0.7,
    "alpha": 1.0,
    "gamma_up_assets": 1.0,
    "gamma_up_profit": 1.0,
    "gamma_down": 1.0,
    "cost": 0.0,
    "grow_threshold": 25.0,
    "trim_threshold": 20.0,
    "num_regions": 8,
    "total_assets": 100.0,
    "T": 400,
    "high_q": 0.3,
    "low_q": 0.1,
    "pattern": "left-right-left",
    "total_steps": 1200,
}

PRESETS: Dict[str, Dict[str, Any]] = {"paper": PAPER_PRESET}


class ScheduleEntryConfig(BaseModel):
    """One explicit schedule entry."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    start_step: int
    qualities: List[float]


class ExperimentConfig(BaseModel):
    """Validated experiment configuration."""

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    topology: str

    # Model parameters
    beta: float = 0.0
    alpha: float = 1.0
    gamma_up_assets: float = 1.0
    gamma_up_profit: float = 1.0
    gamma_down: float = 1.0
    cost: float = 0.0
    grow_threshold: float = 25.0
    trim_threshold: float = 20.0
    growable: Optional[bool] = None

    # System
    num_regions: int = 8
    total_assets: float = 100.0

    # Environment
    period: int = Field(default=400, alias="T")
    high_quality: float = Field(default=0.3, alias="high_q")
    low_quality: float = Field(default=0.1, alias="low_q")
    pattern: str = "left-right-left"
    schedule: Optional[List[ScheduleEntryConfig]] = None

    # Run
    total_steps: int = 1200
    output_path: Optional[str] = None

    @field_validator("topology")
    @classmethod
    def validate_topology(cls, v: str) -> str:
        try:
            return TopologyKind.from_name(v).value
        except TopologyError as e:
            raise ValueError(e.message)

    @field_validator("beta")
    @classmethod
    def validate_beta(cls, v: float) -> float:
        return check_beta(v)

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: float) -> float:
        return check_alpha(v)

    @field_validator(*GAMMA_FIELDS)
    @classmethod
    def validate_gamma(cls, v: float, info: ValidationInfo) -> float:
        return check_unit_interval(v, info.field_name)

    @field_validator("cost")
    @classmethod
    def validate_cost(cls, v: float) -> float:
        return check_cost(v)

    @field_validator(*THRESHOLD_FIELDS)
    @classmethod
    def validate_threshold(cls, v: float, info: ValidationInfo) -> float:
        return check_positive(v, info.field_name)

    @field_validator("num_regions", "total_steps", "period")
    @classmethod
    def validate_counts(cls, v: int, info: ValidationInfo) -> int:
        if v < 1:
            raise ValueError(f"{info.field_name} must be >= 1")
        return v

    @field_validator("total_assets", "high_quality", "low_quality")
    @classmethod
    def validate_non_negative(cls, v: float, info: ValidationInfo) -> float:
        if not v >= 0.0:
            raise ValueError(f"{info.field_name} must be >= 0")
        return v

    @model_validator(mode="after")
    def validate_consistency(self) -> "ExperimentConfig":
        check_hysteresis(self.grow_threshold, self.trim_threshold)
        leaf_count = TopologyKind.from_name(self.topology).leaf_count
        if self.num_regions % leaf_count != 0 or self.num_regions < leaf_count:
            raise ValueError(
                f"num_regions must be a multiple of {leaf_count} for {self.topology}"
            )
        try:
            self.build_environment()
        except EnvironmentScheduleError as e:
            raise ValueError(f"schedule: {e.message}")
        return self

    @property
    def kind(self) -> TopologyKind:
        return TopologyKind.from_name(self.topology)

    def model_params(self) -> ModelParams:
        """Model parameters; growth defaults to on for the growable topology only."""
        growable = self.kind.is_growable if self.growable is None else self.growable
        return ModelParams(
            beta=self.beta,
            alpha=self.alpha,
            gamma_up_assets=self.gamma_up_assets,
            gamma_up_profit=self.gamma_up_profit,
            gamma_down=self.gamma_down,
            cost=self.cost,
            grow_threshold=self.grow_threshold,
            trim_threshold=self.trim_threshold,
            growable=growable,
        )

    def build_environment(self) -> Environment:
        if self.schedule is not None:
            return Environment(
                self.num_regions,
                [ScheduleEntry(e.start_step, tuple(e.qualities)) for e in self.schedule],
            )
        return Environment.switching(
            num_regions=self.num_regions,
            period=self.period,
            high_quality=self.high_quality,
            low_quality=self.low_quality,
            pattern=self.pattern,
        )

    def with_overrides(self, **overrides: Any) -> "ExperimentConfig":
        """Validated copy with some fields replaced."""
        data = self.model_dump(by_alias=True, exclude_none=True)
        data.update(overrides)
        return validate_config(data)


def _field_of(error: dict) -> Optional[str]:
    loc = [str(part) for part in error.get("loc", ())]
    if loc:
        return ".".join(loc)
    # Model-level errors start with the offending field name
    first_word = error.get("msg", "").removeprefix("Value error, ").split(" ")[0].rstrip(":")
    fields = set(ExperimentConfig.model_fields)
    fields |= {f.alias for f in ExperimentConfig.model_fields.values() if f.alias}
    return first_word if first_word in fields else None


def validate_config(data: Dict[str, Any]) -> ExperimentConfig:
    """
    Validate a config mapping.

    Raises:
        InvalidConfigurationError: Naming the first offending field
    """
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = _field_of(error)
        message = error["msg"].removeprefix("Value error, ")
        if field and not message.startswith(field):
            message = f"{field}: {message}"
        raise InvalidConfigurationError(
            message,
            field=field,
            details={"errors": len(e.errors())},
        )


def parse_config(text: str, preset: Optional[str] = None) -> ExperimentConfig:
    """
    Parse a YAML experiment config.

    Args:
        text: YAML document (may be empty when a preset is given)
        preset: Preset name applied underneath the document's keys

    Returns:
        Validated ExperimentConfig

    Raises:
        InvalidConfigurationError: On malformed YAML or invalid fields

    Example:
        >>> parse_config("topology: fixed_tree\\nbeta: 0.7").alpha
        1.0
    """
    try:
        data = yaml.safe_load(text) if text else None
    except yaml.YAMLError as e:
        raise InvalidConfigurationError(f"Malformed config: {e}")
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise InvalidConfigurationError("Config must be a mapping of keys to values")

    data = dict(data)
    preset = data.pop("preset", None) or preset
    if preset is not None:
        if preset not in PRESETS:
            raise InvalidConfigurationError(
                f"preset: unknown preset '{preset}', expected one of {sorted(PRESETS)}",
                field="preset",
            )
        data = {**PRESETS[preset], **data}

    return validate_config(data)


def load_config(path: Optional[Path], preset: Optional[str] = None) -> ExperimentConfig:
    """
    Read and parse a config file; with no path, the preset alone is used.

    Raises:
        OutputError: If the file cannot be read
        InvalidConfigurationError: If neither a path nor a preset is given
    """
    if path is None:
        if preset is None:
            raise InvalidConfigurationError("Either a config file or a preset is required")
        return parse_config("", preset=preset)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise OutputError(f"Cannot read config: {e.strerror or e}", path=str(path))
    logger.debug(f"Loaded config from {path}")
    return parse_config(text, preset=preset)


def dump_config(config: ExperimentConfig) -> str:
    """Canonical YAML form; ``parse_config(dump_config(c)) == c``."""
    data = config.model_dump(mode="json", by_alias=True, exclude_none=True)
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=False)
