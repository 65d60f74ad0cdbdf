"""
Pressure-driven asset relocation.

Children with positive pressure hand assets to their parent, the parent then
serves its children with negative pressure from the collected non-settled
pool. Parents are processed deepest first, so assets can climb several levels
within one step.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from src.core.exceptions import UnknownEdgeError
from src.core.logger import get_logger
from src.model.graph import NodeId, SystemGraph
from src.model.params import ModelParams

logger = get_logger(__name__)


@dataclass(frozen=True)
class PressureReading:
    """Pressure difference of a child with respect to one parent."""

    child: NodeId
    parent: NodeId
    delta_p: float


@dataclass
class RelocationSummary:
    """Asset mass moved during one relocation pass."""

    released: float = 0.0
    delivered: float = 0.0
    transfers: int = 0

    @property
    def moved(self) -> float:
        return self.released + self.delivered


def pressure(child: NodeId, parent: NodeId, graph: SystemGraph) -> PressureReading:
    """
    Pressure difference: (up-assets of child - its non-settled assets) - grant.

    Raises:
        UnknownEdgeError: If ``parent`` does not parent ``child``
    """
    if not graph.has_edge(parent, child):
        raise UnknownEdgeError(
            f"No edge {parent}->{child}", details={"parent": parent, "child": child}
        )
    flows = graph.edge(parent, child)
    state = graph.state(child)
    return PressureReading(
        child=child,
        parent=parent,
        delta_p=(flows.up_assets - state.nonsettled_assets) - flows.down_assets,
    )


def read_pressures(graph: SystemGraph) -> Dict[Tuple[NodeId, NodeId], float]:
    """Pressure on every edge, keyed by (parent, child)."""
    return {
        (parent, child): pressure(child, parent, graph).delta_p
        for parent, child in graph.edges()
    }


def relocate(graph: SystemGraph, params: ModelParams) -> RelocationSummary:
    """
    Run one relocation pass over all decision nodes, deepest first.

    Pressures are read once before any transfer of the pass, so a pool a
    child collected in this pass is not mistaken for assets already leaving.

    Args:
        graph: System graph (mutated in place)
        params: Model parameters (alpha)

    Returns:
        RelocationSummary with released and delivered mass
    """
    readings = read_pressures(graph)
    summary = RelocationSummary()

    for node in graph.bottom_up_order():
        parent_state = graph.state(node)
        children = graph.children(node)
        if not children:
            continue

        # Collection
        for child in children:
            delta_p = readings[(node, child)]
            if delta_p <= 0.0:
                continue
            child_state = graph.state(child)
            if child_state.is_service:
                amount = min(params.alpha * delta_p, child_state.resident_assets)
                child_state.resident_assets -= amount
            else:
                amount = min(delta_p, child_state.nonsettled_assets)
                child_state.nonsettled_assets -= amount
            if amount > 0.0:
                parent_state.nonsettled_assets += amount
                summary.released += amount
                summary.transfers += 1

        # Redistribution, largest need first
        needy = sorted(
            (c for c in children if readings[(node, c)] < 0.0),
            key=lambda c: (readings[(node, c)], c),
        )
        for child in needy:
            pool = parent_state.nonsettled_assets
            if pool <= 0.0:
                break
            amount = min(-readings[(node, child)], pool)
            parent_state.nonsettled_assets = pool - amount
            child_state = graph.state(child)
            if child_state.is_service:
                child_state.resident_assets += amount
            else:
                child_state.nonsettled_assets += amount
            summary.delivered += amount
            summary.transfers += 1

    if summary.transfers:
        logger.debug(
            f"Relocated {summary.moved:.6g} assets in {summary.transfers} transfers"
        )
    return summary
