"""
Structural validation of a system graph.

``validate_graph`` never raises on a bad graph; it collects every violation
into a ``ValidationReport`` the caller can inspect or escalate.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import networkx as nx

from src.core.exceptions import GraphValidationError
from src.model.graph import NodeId, SystemGraph

CYCLE = "cycle"
CHILDLESS_DECISION = "childless decision node"
REGIONLESS_SERVICE = "region-less service node"
DECISION_WITH_REGIONS = "decision node with regions"
SERVICE_WITH_CHILDREN = "service node with children"
STALE_ROOTS = "stale roots list"
NEGATIVE_ASSETS = "negative assets"
INVALID_FLOW = "invalid flow value"


@dataclass(frozen=True)
class GraphViolation:
    """One broken invariant."""

    kind: str
    message: str
    node: Optional[NodeId] = None

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass
class ValidationReport:
    """Result of ``validate_graph``."""

    violations: List[GraphViolation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise GraphValidationError(self.violations)

    def to_dict(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "violations": [
                {"kind": v.kind, "message": v.message, "node": v.node}
                for v in self.violations
            ],
        }


def validate_graph(graph: SystemGraph) -> ValidationReport:
    """
    Check every structural invariant of a system graph.

    Args:
        graph: Graph to check

    Returns:
        ValidationReport listing all violations (empty when valid)
    """
    report = ValidationReport()
    g = graph.digraph

    for cycle in sorted(sorted(c) for c in nx.simple_cycles(g)):
        report.violations.append(
            GraphViolation(CYCLE, f"nodes {cycle} form a cycle", node=cycle[0])
        )

    for node in graph.node_ids():
        state = graph.state(node)
        children = graph.children(node)
        if state.is_decision:
            if not children:
                report.violations.append(
                    GraphViolation(CHILDLESS_DECISION, f"decision node {node} has no children", node)
                )
            if state.regions:
                report.violations.append(
                    GraphViolation(DECISION_WITH_REGIONS, f"decision node {node} supports regions", node)
                )
        else:
            if not state.regions:
                report.violations.append(
                    GraphViolation(REGIONLESS_SERVICE, f"service node {node} supports no region", node)
                )
            if children:
                report.violations.append(
                    GraphViolation(SERVICE_WITH_CHILDREN, f"service node {node} has children {children}", node)
                )
        if state.resident_assets < 0 or state.nonsettled_assets < 0:
            report.violations.append(
                GraphViolation(NEGATIVE_ASSETS, f"node {node} holds a negative balance", node)
            )

    for parent, child in graph.edges():
        values = graph.edge(parent, child).values()
        if not all(math.isfinite(v) and v >= 0 for v in values):
            report.violations.append(
                GraphViolation(INVALID_FLOW, f"edge {parent}->{child} carries {values}", child)
            )

    parentless = sorted(n for n in g.nodes if g.in_degree(n) == 0)
    if parentless != graph.roots:
        report.violations.append(
            GraphViolation(STALE_ROOTS, f"roots list {graph.roots} != parentless nodes {parentless}")
        )

    return report
