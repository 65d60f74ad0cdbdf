"""Experiment configs, run and sweep harness, and the command line."""

from .config_loader import ExperimentConfig, dump_config, load_config, parse_config
from .experiment import run_experiment, run_sweep, write_sweep

__all__ = [
    "ExperimentConfig",
    "dump_config",
    "load_config",
    "parse_config",
    "run_experiment",
    "run_sweep",
    "write_sweep",
]
