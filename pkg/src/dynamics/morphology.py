"""
Structural growth and trimming of the growable tree.

Leaves holding enough resident assets split into two specialised children;
a decision node whose leaf children together hold too little collapses back
into a single leaf.
"""

import math
from typing import Set

from src.core.logger import get_logger
from src.model.graph import EdgeFlows, NodeId, NodeKind, SystemGraph
from src.model.params import ModelParams

logger = get_logger(__name__)


def try_grow(leaf: NodeId, graph: SystemGraph, params: ModelParams) -> bool:
    """
    Split a service leaf into two service children.

    The region interval is bisected in order (first half rounded up goes to
    the first child) and resident assets are divided equally.

    Returns:
        True if the leaf grew
    """
    state = graph.state(leaf)
    if not state.is_service:
        return False
    if state.resident_assets < params.grow_threshold or len(state.regions) < 2:
        return False

    half = math.ceil(len(state.regions) / 2)
    halves = (state.regions[:half], state.regions[half:])
    first_share = state.resident_assets / 2.0
    shares = (first_share, state.resident_assets - first_share)

    state.kind = NodeKind.DECISION
    state.regions = ()
    state.resident_assets = 0.0

    for index, (regions, share) in enumerate(zip(halves, shares)):
        child = graph.add_node(
            NodeKind.SERVICE,
            regions=regions,
            resident_assets=share,
            label=f"{state.label}.{index}",
        )
        child_state = graph.state(child)
        child_state.up_assets = share
        graph.add_edge(leaf, child, EdgeFlows(up_assets=share, up_profit=0.0, down_assets=share))

    logger.debug(
        f"Grew {state.label} into regions {list(halves[0])} / {list(halves[1])}",
        extra={"node": leaf},
    )
    return True


def try_trim(node: NodeId, graph: SystemGraph, params: ModelParams) -> bool:
    """
    Collapse a decision node whose children are all single-parent leaves.

    The node becomes a service leaf over the union of its children's regions
    and holds every asset they held plus its own. Its bottom-up outputs keep
    their previous values.

    Returns:
        True if the node was trimmed
    """
    state = graph.state(node)
    if not state.is_decision:
        return False
    children = graph.children(node)
    if not children:
        return False
    for child in children:
        if not graph.state(child).is_service or len(graph.parents(child)) != 1:
            return False

    held = math.fsum(graph.state(c).total_assets for c in children)
    if held >= params.trim_threshold:
        return False

    regions = sorted(r for c in children for r in graph.state(c).regions)
    merged = math.fsum([state.total_assets, held])
    for child in children:
        graph.remove_node(child)

    state.kind = NodeKind.SERVICE
    state.regions = tuple(regions)
    state.resident_assets = merged
    state.nonsettled_assets = 0.0

    logger.debug(
        f"Trimmed {state.label} back to a leaf over regions {regions}",
        extra={"node": node},
    )
    return True


def morphology_pass(graph: SystemGraph, params: ModelParams) -> int:
    """
    One sweep of trims then grows, in NodeId order.

    Each node changes at most once per pass; a node whose child changed in
    this pass is not trimmed, so trimming never cascades within a step.

    Returns:
        Number of structural changes
    """
    if not params.growable:
        return 0

    snapshot = graph.node_ids()
    changed: Set[NodeId] = set()

    for node in snapshot:
        if node not in graph or node in changed:
            continue
        if any(c in changed for c in graph.children(node)):
            continue
        if try_trim(node, graph, params):
            changed.add(node)

    for node in snapshot:
        if node not in graph or node in changed:
            continue
        if try_grow(node, graph, params):
            changed.add(node)

    if changed:
        graph.depths()
    return len(changed)
