"""Simulation engine and metrics."""

from .engine import (
    MetricsRow,
    RunResult,
    crossover_step,
    mean_profit,
    region_assets,
    run,
    simulate,
    step,
    system_profit,
)

__all__ = [
    "MetricsRow",
    "RunResult",
    "crossover_step",
    "mean_profit",
    "region_assets",
    "run",
    "simulate",
    "step",
    "system_profit",
]
