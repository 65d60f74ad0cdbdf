"""
Model parameters: competition, release and smoothing factors, cost and thresholds.

The range checks are plain functions so the experiment config can apply the
same rules to its own copies of these fields.
"""

from pydantic import BaseModel, ConfigDict, ValidationInfo, field_validator, model_validator

GAMMA_FIELDS = ("gamma_up_assets", "gamma_up_profit", "gamma_down")
THRESHOLD_FIELDS = ("grow_threshold", "trim_threshold")


def check_beta(v: float) -> float:
    if not v >= 0.0:
        raise ValueError("beta must be >= 0")
    return v


def check_alpha(v: float) -> float:
    if not 0.0 < v <= 1.0:
        raise ValueError("alpha must be in (0, 1]")
    return v


def check_unit_interval(v: float, name: str) -> float:
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{name} must be in [0, 1]")
    return v


def check_cost(v: float) -> float:
    if not v >= 0.0:
        raise ValueError("cost must be >= 0")
    return v


def check_positive(v: float, name: str) -> float:
    if not v > 0.0:
        raise ValueError(f"{name} must be > 0")
    return v


def check_hysteresis(grow_threshold: float, trim_threshold: float) -> None:
    if not trim_threshold < grow_threshold:
        raise ValueError("trim_threshold must be < grow_threshold")


class ModelParams(BaseModel):
    """Parameters of the asset distribution dynamics."""

    model_config = ConfigDict(frozen=True)

    beta: float = 0.0
    alpha: float = 1.0
    gamma_up_assets: float = 1.0
    gamma_up_profit: float = 1.0
    gamma_down: float = 1.0
    cost: float = 0.0
    grow_threshold: float = 25.0
    trim_threshold: float = 20.0
    growable: bool = False

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

    @model_validator(mode="after")
    def validate_hysteresis(self) -> "ModelParams":
        check_hysteresis(self.grow_threshold, self.trim_threshold)
        return self
