"""
Factory for the experimental control topologies.

Static topologies have four service leaves over consecutive region blocks;
the growable tree starts from a root with two leaves. Assets are spread
evenly over the leaves and flows start in equilibrium.
"""

import itertools
from enum import Enum
from typing import List, Sequence, Tuple

from src.core.exceptions import TopologyError
from src.core.logger import get_logger
from src.dynamics.flows import bootstrap_flows
from src.model.graph import NodeId, NodeKind, SystemGraph
from src.model.validation import validate_graph

logger = get_logger(__name__)


class TopologyKind(str, Enum):
    """Built-in control topologies."""

    GROWABLE = "growable"
    FIXED_TREE = "fixed_tree"
    LINE = "line"
    CIRCLE = "circle"
    COMPLETE = "complete"
    ALL_TO_ROOT = "all_to_root"

    @classmethod
    def from_name(cls, name: "str | TopologyKind") -> "TopologyKind":
        if isinstance(name, TopologyKind):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            valid = [k.value for k in cls]
            raise TopologyError(
                f"Unknown topology '{name}', expected one of {valid}",
                details={"topology": name},
            )

    @property
    def leaf_count(self) -> int:
        return 2 if self is TopologyKind.GROWABLE else 4

    @property
    def is_growable(self) -> bool:
        return self is TopologyKind.GROWABLE


def _region_blocks(num_regions: int, leaf_count: int) -> List[Tuple[int, ...]]:
    size = num_regions // leaf_count
    return [tuple(range(i * size + 1, (i + 1) * size + 1)) for i in range(leaf_count)]


def _add_leaves(
    graph: SystemGraph,
    blocks: Sequence[Tuple[int, ...]],
    assets_per_leaf: float,
) -> List[NodeId]:
    return [
        graph.add_node(
            NodeKind.SERVICE,
            regions=block,
            resident_assets=assets_per_leaf,
            label=f"L{i + 1}",
        )
        for i, block in enumerate(blocks)
    ]


def _multi_root(graph: SystemGraph, pairs: Sequence[Tuple[int, int]], blocks, share: float) -> None:
    roots = [
        graph.add_node(NodeKind.DECISION, label=f"R{i + 1}") for i in range(len(pairs))
    ]
    leaves = _add_leaves(graph, blocks, share)
    for root, (a, b) in zip(roots, pairs):
        graph.add_edge(root, leaves[a])
        graph.add_edge(root, leaves[b])


def build(
    kind: "TopologyKind | str",
    num_regions: int = 8,
    total_assets: float = 100.0,
) -> SystemGraph:
    """
    Build a topology with assets spread evenly over its leaves.

    Args:
        kind: Topology kind or its config name
        num_regions: Number of environment regions M
        total_assets: Assets to distribute

    Returns:
        SystemGraph with bootstrapped flows

    Raises:
        TopologyError: If M is not divisible by the leaf count or assets are negative
    """
    kind = TopologyKind.from_name(kind)
    leaf_count = kind.leaf_count
    if num_regions < leaf_count or num_regions % leaf_count != 0:
        raise TopologyError(
            f"{kind.value} needs a region count divisible by {leaf_count}, got {num_regions}",
            details={"topology": kind.value, "num_regions": num_regions},
        )
    if not total_assets >= 0.0:
        raise TopologyError("total_assets must be >= 0", details={"total_assets": total_assets})

    blocks = _region_blocks(num_regions, leaf_count)
    share = total_assets / leaf_count
    graph = SystemGraph()

    if kind is TopologyKind.GROWABLE or kind is TopologyKind.ALL_TO_ROOT:
        root = graph.add_node(NodeKind.DECISION, label="root")
        for leaf in _add_leaves(graph, blocks, share):
            graph.add_edge(root, leaf)

    elif kind is TopologyKind.FIXED_TREE:
        root = graph.add_node(NodeKind.DECISION, label="root")
        inner = [graph.add_node(NodeKind.DECISION, label=label) for label in ("A", "B")]
        leaves = _add_leaves(graph, blocks, share)
        for node in inner:
            graph.add_edge(root, node)
        for index, leaf in enumerate(leaves):
            graph.add_edge(inner[index // 2], leaf)

    elif kind is TopologyKind.LINE:
        _multi_root(graph, [(0, 1), (1, 2), (2, 3)], blocks, share)

    elif kind is TopologyKind.CIRCLE:
        _multi_root(graph, [(0, 1), (1, 2), (2, 3), (3, 0)], blocks, share)

    elif kind is TopologyKind.COMPLETE:
        _multi_root(graph, list(itertools.combinations(range(4), 2)), blocks, share)

    bootstrap_flows(graph)
    validate_graph(graph).raise_if_invalid()

    logger.debug(
        f"Built {kind.value} topology with {len(graph)} nodes",
        extra={"topology": kind.value, "num_regions": num_regions},
    )
    return graph
