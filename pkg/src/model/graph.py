"""
System graph data model.

A ``SystemGraph`` is a DAG of decision and service nodes. Edges point from
parent to child and carry the three information flows of that parent/child
pair. All iteration orders (children, parents, roots, node listings) follow
NodeId order so that runs are reproducible bit for bit.
"""

import copy
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, NewType, Optional, Sequence, Tuple

import networkx as nx

from src.core.exceptions import CycleError, GraphError, UnknownEdgeError, UnknownNodeError

NodeId = NewType("NodeId", int)


class NodeKind(str, Enum):
    """Role of a node in the control topology."""

    DECISION = "decision"
    SERVICE = "service"


@dataclass
class NodeState:
    """Per-node state: kind, asset balances, supported regions and own outputs."""

    kind: NodeKind
    resident_assets: float = 0.0
    nonsettled_assets: float = 0.0
    regions: Tuple[int, ...] = ()
    # Last bottom-up outputs of the node; replicated on every parent edge.
    up_assets: float = 0.0
    up_profit: float = 0.0
    label: str = ""

    @property
    def is_service(self) -> bool:
        return self.kind is NodeKind.SERVICE

    @property
    def is_decision(self) -> bool:
        return self.kind is NodeKind.DECISION

    @property
    def total_assets(self) -> float:
        """AA = resident + non-settled."""
        return self.resident_assets + self.nonsettled_assets


@dataclass
class EdgeFlows:
    """Flow values on one parent/child edge."""

    up_assets: float = 0.0
    up_profit: float = 0.0
    down_assets: float = 0.0

    def values(self) -> Tuple[float, float, float]:
        return (self.up_assets, self.up_profit, self.down_assets)


class SystemGraph:
    """DAG of nodes and flow-carrying edges backed by a ``networkx.DiGraph``."""

    def __init__(self):
        self._g = nx.DiGraph()
        self._roots: List[NodeId] = []
        self._next_id = 0
        self._children: Dict[NodeId, List[NodeId]] = {}
        self._parents: Dict[NodeId, List[NodeId]] = {}
        self._depths: Optional[Dict[NodeId, int]] = None

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    def add_node(
        self,
        kind: NodeKind,
        regions: Sequence[int] = (),
        resident_assets: float = 0.0,
        nonsettled_assets: float = 0.0,
        label: str = "",
        node_id: Optional[int] = None,
    ) -> NodeId:
        """
        Add a node; new nodes start as roots until they receive a parent.

        Args:
            kind: Decision or service
            regions: Supported region indices (service nodes only)
            resident_assets: Initial resident balance
            nonsettled_assets: Initial non-settled balance
            label: Human readable name used in logs
            node_id: Explicit id; defaults to the next free id

        Returns:
            NodeId: Id of the new node
        """
        if node_id is None:
            node_id = self._next_id
        node_id = NodeId(int(node_id))
        if node_id in self._g:
            raise GraphError(f"Node {node_id} already exists", details={"node": node_id})
        self._next_id = max(self._next_id, node_id + 1)

        state = NodeState(
            kind=NodeKind(kind),
            resident_assets=float(resident_assets),
            nonsettled_assets=float(nonsettled_assets),
            regions=tuple(sorted(int(r) for r in regions)),
            label=label or str(node_id),
        )
        self._g.add_node(node_id, state=state)
        self._roots.append(node_id)
        self._roots.sort()
        self._invalidate()
        return node_id

    def add_edge(self, parent: NodeId, child: NodeId, flows: Optional[EdgeFlows] = None) -> None:
        """Connect ``parent`` to ``child``; the child stops being a root."""
        self._require(parent)
        self._require(child)
        self._g.add_edge(parent, child, flows=flows or EdgeFlows())
        if child in self._roots:
            self._roots.remove(child)
        self._invalidate()

    def remove_edge(self, parent: NodeId, child: NodeId) -> None:
        if not self._g.has_edge(parent, child):
            raise UnknownEdgeError(f"No edge {parent}->{child}")
        self._g.remove_edge(parent, child)
        if self._g.in_degree(child) == 0:
            self._roots.append(child)
            self._roots.sort()
        self._invalidate()

    def remove_node(self, node: NodeId) -> None:
        """Remove a node and its edges; orphaned children become roots."""
        self._require(node)
        orphans = [c for c in self._g.successors(node) if self._g.in_degree(c) == 1]
        self._g.remove_node(node)
        if node in self._roots:
            self._roots.remove(node)
        self._roots.extend(orphans)
        self._roots.sort()
        self._invalidate()

    def declare_roots(self, roots: Iterable[NodeId]) -> None:
        """Overwrite the roots list (manual assembly); checked by validate_graph."""
        self._roots = [NodeId(r) for r in roots]

    def _invalidate(self) -> None:
        self._children.clear()
        self._parents.clear()
        self._depths = None

    def _require(self, node: NodeId) -> None:
        if node not in self._g:
            raise UnknownNodeError(f"Unknown node {node}", details={"node": node})

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def __contains__(self, node: object) -> bool:
        return node in self._g

    def __len__(self) -> int:
        return self._g.number_of_nodes()

    def __iter__(self) -> Iterator[NodeId]:
        return iter(self.node_ids())

    @property
    def digraph(self) -> nx.DiGraph:
        """Underlying networkx graph (read-only use)."""
        return self._g

    @property
    def roots(self) -> List[NodeId]:
        return list(self._roots)

    @property
    def nodes(self) -> Dict[NodeId, NodeState]:
        return {n: self._g.nodes[n]["state"] for n in self.node_ids()}

    def node_ids(self) -> List[NodeId]:
        return sorted(self._g.nodes)

    def state(self, node: NodeId) -> NodeState:
        try:
            return self._g.nodes[node]["state"]
        except KeyError:
            raise UnknownNodeError(f"Unknown node {node}", details={"node": node})

    def has_edge(self, parent: NodeId, child: NodeId) -> bool:
        return self._g.has_edge(parent, child)

    def edge(self, parent: NodeId, child: NodeId) -> EdgeFlows:
        try:
            return self._g.edges[parent, child]["flows"]
        except KeyError:
            raise UnknownEdgeError(
                f"No edge {parent}->{child}",
                details={"parent": parent, "child": child},
            )

    def edges(self) -> List[Tuple[NodeId, NodeId]]:
        return sorted(self._g.edges)

    def children(self, node: NodeId) -> List[NodeId]:
        cached = self._children.get(node)
        if cached is None:
            self._require(node)
            cached = sorted(self._g.successors(node))
            self._children[node] = cached
        return cached

    def parents(self, node: NodeId) -> List[NodeId]:
        cached = self._parents.get(node)
        if cached is None:
            self._require(node)
            cached = sorted(self._g.predecessors(node))
            self._parents[node] = cached
        return cached

    def service_nodes(self) -> List[NodeId]:
        return [n for n in self.node_ids() if self.state(n).is_service]

    def decision_nodes(self) -> List[NodeId]:
        return [n for n in self.node_ids() if self.state(n).is_decision]

    def depths(self) -> Dict[NodeId, int]:
        """Longest-path depths, cached until the structure changes."""
        if self._depths is None:
            self._depths = compute_depths(self)
        return self._depths

    def max_depth(self) -> int:
        depths = self.depths()
        return max(depths.values()) if depths else 0

    def bottom_up_order(self) -> List[NodeId]:
        """Highest depth first, NodeId order within a depth."""
        depths = self.depths()
        return sorted(depths, key=lambda n: (-depths[n], n))

    def top_down_order(self) -> List[NodeId]:
        """Roots first, NodeId order within a depth."""
        depths = self.depths()
        return sorted(depths, key=lambda n: (depths[n], n))

    # ------------------------------------------------------------------
    # Flow outputs
    # ------------------------------------------------------------------

    def set_outputs(self, node: NodeId, up_assets: float, up_profit: float) -> None:
        """Store a node's bottom-up outputs and replicate them on every parent edge."""
        state = self.state(node)
        state.up_assets = up_assets
        state.up_profit = up_profit
        for parent in self.parents(node):
            flows = self._g.edges[parent, node]["flows"]
            flows.up_assets = up_assets
            flows.up_profit = up_profit

    def copy(self) -> "SystemGraph":
        return copy.deepcopy(self)


def compute_depths(graph: SystemGraph) -> Dict[NodeId, int]:
    """
    Longest path length from any root to each node.

    Args:
        graph: System graph

    Returns:
        Mapping NodeId -> depth (roots are 0)

    Raises:
        CycleError: If the graph is not acyclic
    """
    g = graph.digraph
    depths: Dict[NodeId, int] = {}
    try:
        for node in nx.lexicographical_topological_sort(g):
            preds = list(g.predecessors(node))
            depths[node] = max((depths[p] + 1 for p in preds), default=0)
    except nx.NetworkXUnfeasible:
        raise CycleError("System graph contains a cycle")
    return depths


def total_assets(graph: SystemGraph) -> float:
    """Sum of resident and non-settled assets over all nodes."""
    return math.fsum(
        state.resident_assets + state.nonsettled_assets
        for state in graph.nodes.values()
    )
