"""
System graph, model parameters, environment and structural validation.

The topology factory lives in ``src.model.topologies`` and is imported from
there directly, since it bootstraps flows through ``src.dynamics``.
"""

from .graph import EdgeFlows, NodeId, NodeKind, NodeState, SystemGraph, compute_depths, total_assets
from .params import ModelParams
from .environment import Environment, ScheduleEntry, quality_at, service_profit
from .validation import GraphViolation, ValidationReport, validate_graph

__all__ = [
    "EdgeFlows",
    "NodeId",
    "NodeKind",
    "NodeState",
    "SystemGraph",
    "compute_depths",
    "total_assets",
    "ModelParams",
    "Environment",
    "ScheduleEntry",
    "quality_at",
    "service_profit",
    "GraphViolation",
    "ValidationReport",
    "validate_graph",
]
