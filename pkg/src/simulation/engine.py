"""
Simulation engine: per-step operation order, full runs and metrics.

Each step runs, in order, the bottom-up flow update, the top-down flow
update, the relocation pass and (for growable topologies) one morphology
pass. Metrics are sampled after the whole step.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.core.exceptions import SimulationError
from src.core.logger import get_logger
from src.dynamics.flows import update_bottom_up_flows, update_top_down_flows
from src.dynamics.morphology import morphology_pass
from src.dynamics.relocation import relocate
from src.model.environment import Environment, service_profit
from src.model.graph import SystemGraph, total_assets
from src.model.params import ModelParams
from src.model.topologies import TopologyKind, build
from src.utils.decorators import timing
from src.utils.helpers import safe_divide

logger = get_logger(__name__)


@dataclass(frozen=True)
class MetricsRow:
    """Metrics sampled at the end of one step."""

    step: int
    profit: float
    relocated_pct: float
    region_assets: Tuple[float, ...]
    node_count: int
    leaf_count: int

    def as_record(self) -> Dict[str, float]:
        """Flat record in CSV column order."""
        record: Dict[str, float] = {
            "step": self.step,
            "profit": self.profit,
            "relocated_pct": self.relocated_pct,
        }
        for index, value in enumerate(self.region_assets, start=1):
            record[f"assets_region_{index}"] = value
        record["node_count"] = self.node_count
        record["leaf_count"] = self.leaf_count
        return record


@dataclass
class RunResult:
    """Time series of one run plus the graph it ended with."""

    rows: List[MetricsRow] = field(default_factory=list)
    final_graph: Optional[SystemGraph] = None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame.from_records([row.as_record() for row in self.rows])

    def profits(self) -> np.ndarray:
        return np.array([row.profit for row in self.rows])

    def region_matrix(self) -> np.ndarray:
        """Steps x regions array of region assets."""
        return np.array([row.region_assets for row in self.rows])

    def leaf_regions(self) -> List[Tuple[Tuple[int, ...], float]]:
        """(regions, resident assets) of every final service node, in NodeId order."""
        if self.final_graph is None:
            return []
        return [
            (state.regions, state.resident_assets)
            for state in self.final_graph.nodes.values()
            if state.is_service
        ]


def region_assets(graph: SystemGraph, num_regions: int) -> np.ndarray:
    """Resident service assets attributed evenly to each supported region."""
    attributed = np.zeros(num_regions)
    for state in graph.nodes.values():
        if state.is_service and state.regions:
            portion = state.resident_assets / len(state.regions)
            for region in state.regions:
                attributed[region - 1] += portion
    return attributed


def system_profit(graph: SystemGraph, env: Environment, t: int) -> float:
    return math.fsum(
        service_profit(state, env, t)
        for state in graph.nodes.values()
        if state.is_service
    )


def step(graph: SystemGraph, params: ModelParams, env: Environment, t: int) -> MetricsRow:
    """
    Advance the graph by one step and sample metrics.

    Args:
        graph: System graph (mutated in place)
        params: Model parameters
        env: Environment
        t: Step index

    Returns:
        MetricsRow for step ``t``
    """
    update_bottom_up_flows(graph, params, env, t)
    update_top_down_flows(graph, params)
    summary = relocate(graph, params)
    changes = morphology_pass(graph, params) if params.growable else 0

    held = total_assets(graph)
    raw_pct = 100.0 * safe_divide(summary.moved, held)
    if raw_pct > 100.0:
        logger.debug(
            f"Step {t}: relocated {raw_pct:.6g}% of assets, reported as 100",
            extra={"step": t, "moved": summary.moved},
        )
    relocated_pct = min(100.0, raw_pct)
    services = graph.service_nodes()

    if changes:
        logger.debug(f"Step {t}: {changes} structural changes, {len(services)} leaves")

    return MetricsRow(
        step=t,
        profit=system_profit(graph, env, t),
        relocated_pct=relocated_pct,
        region_assets=tuple(float(v) for v in region_assets(graph, env.num_regions)),
        node_count=len(graph),
        leaf_count=len(services),
    )


def simulate(
    graph: SystemGraph,
    params: ModelParams,
    env: Environment,
    total_steps: int,
) -> RunResult:
    """Run ``total_steps`` steps on an existing graph."""
    if total_steps < 1:
        raise SimulationError(f"total_steps must be >= 1, got {total_steps}")
    rows = [step(graph, params, env, t) for t in range(total_steps)]
    return RunResult(rows=rows, final_graph=graph)


@timing
def run(
    kind: "TopologyKind | str",
    params: ModelParams,
    env: Environment,
    total_steps: int,
    total_assets: float = 100.0,
) -> RunResult:
    """
    Build a topology and run it for ``total_steps`` steps.

    Args:
        kind: Topology kind or name
        params: Model parameters
        env: Environment (its region count sizes the topology)
        total_steps: Number of steps (>= 1)
        total_assets: Assets spread over the initial leaves

    Returns:
        RunResult with one row per step
    """
    kind = TopologyKind.from_name(kind)
    if total_steps < 1:
        raise SimulationError(f"total_steps must be >= 1, got {total_steps}")
    graph = build(kind, env.num_regions, total_assets)
    logger.debug(
        f"Running {kind.value} for {total_steps} steps",
        extra={"topology": kind.value, "beta": params.beta, "alpha": params.alpha},
    )
    return simulate(graph, params, env, total_steps)


def mean_profit(result: RunResult, start: int, stop: int) -> float:
    """
    Mean per-step profit over rows with ``start <= step < stop``.

    Raises:
        SimulationError: If the window is empty or reaches past the last step
    """
    details = {"start": start, "stop": stop, "rows": len(result.rows)}
    if not result.rows or not 0 <= start < stop:
        raise SimulationError(f"Empty profit window [{start}, {stop})", details=details)
    end = result.rows[-1].step + 1
    if stop > end:
        raise SimulationError(
            f"Profit window [{start}, {stop}) reaches past the last step {end - 1}",
            details=details,
        )
    values = [row.profit for row in result.rows if start <= row.step < stop]
    return math.fsum(values) / len(values)


def crossover_step(
    result: RunResult,
    after: int,
    leading_region: int,
    trailing_region: int,
) -> Optional[int]:
    """
    First step >= ``after`` where ``leading_region`` holds more assets than
    ``trailing_region``; None if it never happens.
    """
    if not result.rows:
        return None
    matrix = result.region_matrix()
    steps = np.array([row.step for row in result.rows])
    ahead = (steps >= after) & (matrix[:, leading_region - 1] > matrix[:, trailing_region - 1])
    hits = np.flatnonzero(ahead)
    return int(steps[hits[0]]) if hits.size else None
