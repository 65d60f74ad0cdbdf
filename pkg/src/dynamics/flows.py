"""
Information-flow updates.

Bottom-up flows estimate subtree assets and profitability; the top-down flow
grants each child the amount of assets it is eligible to hold. Every update is
a soft delay: the output moves a fraction gamma of the way toward its target.
"""

import math
from typing import Dict, Optional, Sequence

import numpy as np

from src.core.logger import get_logger
from src.model.environment import Environment, service_profit
from src.model.graph import EdgeFlows, NodeId, SystemGraph
from src.model.params import ModelParams

logger = get_logger(__name__)


def smooth(previous: float, target: float, gamma: float) -> float:
    """One soft-delay step toward ``target``."""
    return previous + gamma * (target - previous)


def subtree_assets(graph: SystemGraph) -> Dict[NodeId, float]:
    """AA + sum of children's subtree values, evaluated bottom-up."""
    totals: Dict[NodeId, float] = {}
    for node in graph.bottom_up_order():
        state = graph.state(node)
        totals[node] = state.total_assets + math.fsum(totals[c] for c in graph.children(node))
    return totals


def bootstrap_flows(graph: SystemGraph) -> None:
    """
    Initialize flows in asset-flow equilibrium.

    Up-asset and down-asset values equal the child's subtree total, up-profit
    values start at zero.
    """
    totals = subtree_assets(graph)
    for node in graph.node_ids():
        state = graph.state(node)
        state.up_assets = totals[node]
        state.up_profit = 0.0
    for parent, child in graph.edges():
        flows = graph.edge(parent, child)
        flows.up_assets = totals[child]
        flows.up_profit = 0.0
        flows.down_assets = totals[child]


def update_bottom_up_flows(
    graph: SystemGraph,
    params: ModelParams,
    env: Environment,
    t: int,
) -> None:
    """
    Update every node's up-asset and up-profit outputs, deepest nodes first.

    Decision nodes read the values their children wrote earlier in the same
    sweep; service nodes target their own assets and their current profit.
    """
    for node in graph.bottom_up_order():
        state = graph.state(node)
        if state.is_service:
            asset_target = state.total_assets
            profit_target = service_profit(state, env, t)
        else:
            incoming = [graph.edge(node, c) for c in graph.children(node)]
            asset_target = state.total_assets + math.fsum(f.up_assets for f in incoming)
            profit_target = math.fsum(f.up_profit for f in incoming)

        graph.set_outputs(
            node,
            smooth(state.up_assets, asset_target, params.gamma_up_assets),
            smooth(state.up_profit, profit_target, params.gamma_up_profit),
        )


def eligible_assets_corrected(node: NodeId, graph: SystemGraph) -> float:
    """
    Corrected eligibility of a node.

    The parents' grants are summed and clamped to what the node's subtree is
    estimated to contain; a root grants itself its whole subtree estimate.
    """
    state = graph.state(node)
    subtree = state.total_assets + math.fsum(
        graph.edge(node, c).up_assets for c in graph.children(node)
    )
    parents = graph.parents(node)
    if not parents:
        return subtree
    granted = math.fsum(graph.edge(p, node).down_assets for p in parents)
    return min(granted, subtree)


def split_shares(
    eligible: float,
    profits: Sequence[float],
    beta: float,
    cost: float = 0.0,
) -> np.ndarray:
    """
    Divide ``max(0, eligible - cost)`` among children by profitability^beta.

    Falls back to an equal split when beta is zero or every weight is zero.
    ``0 ** 0`` counts as 1.
    """
    budget = max(0.0, eligible - cost)
    count = len(profits)
    if count == 0:
        return np.zeros(0)

    weights = np.power(np.asarray(profits, dtype=float), beta)
    total = math.fsum(weights)
    if beta == 0.0 or not total > 0.0 or not math.isfinite(total):
        return np.full(count, budget / count)
    return budget * (weights / total)


def split_eligible(
    node: NodeId,
    graph: SystemGraph,
    params: ModelParams,
    eligible: Optional[float] = None,
) -> Dict[NodeId, float]:
    """
    Per-child target grants of a decision node.

    Args:
        node: Decision node with at least one child
        graph: System graph
        params: Model parameters (beta, cost)
        eligible: Corrected eligibility; computed when omitted

    Returns:
        Mapping child -> target grant, in child NodeId order
    """
    if eligible is None:
        eligible = eligible_assets_corrected(node, graph)
    children = graph.children(node)
    profits = [graph.edge(node, c).up_profit for c in children]
    shares = split_shares(eligible, profits, params.beta, params.cost)
    return {child: float(share) for child, share in zip(children, shares)}


def update_top_down_flows(graph: SystemGraph, params: ModelParams) -> None:
    """Move every down-asset edge value toward its split target, roots first."""
    for node in graph.top_down_order():
        if not graph.children(node):
            continue
        targets = split_eligible(node, graph, params)
        for child, target in targets.items():
            flows: EdgeFlows = graph.edge(node, child)
            flows.down_assets = smooth(flows.down_assets, target, params.gamma_down)
