"""
Published-experiment checks: uniform allocation, fixpoints, shared-leaf
release, adaptation to the switching environment, growth trajectory and the
mean-profit table.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.cli.config_loader import parse_config
from src.cli.experiment import run_sweep
from src.dynamics.flows import bootstrap_flows
from src.model.graph import SystemGraph
from src.model.params import ModelParams
from src.model.topologies import build
from src.simulation.engine import crossover_step, mean_profit, run, simulate

STATIC_TOPOLOGIES = ["fixed_tree", "line", "circle", "complete", "all_to_root"]
ALL_TOPOLOGIES = ["growable"] + STATIC_TOPOLOGIES
TABLE_BETAS = [0.0, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1]


def _leaf_assets(graph: SystemGraph):
    return {
        graph.state(n).regions: graph.state(n).resident_assets
        for n in graph.service_nodes()
    }


def _richest_leaf_regions(graph: SystemGraph):
    assets = _leaf_assets(graph)
    return max(assets, key=assets.get)


@pytest.mark.integration
class TestUniformAllocation:
    """Beta = 0 spreads assets evenly whatever the topology."""

    @pytest.mark.parametrize("topology", ALL_TOPOLOGIES)
    def test_mean_profit_is_one_eighth(self, topology, switching_env):
        params = ModelParams(alpha=0.2, growable=topology == "growable")

        result = run(topology, params, switching_env, 800)

        assert mean_profit(result, 0, 800) == pytest.approx(12.5, abs=0.2)

    @pytest.mark.parametrize("topology", STATIC_TOPOLOGIES)
    def test_nothing_moves_from_uniform_start(self, topology, switching_env):
        result = run(topology, ModelParams(), switching_env, 50)

        assert all(row.relocated_pct == 0.0 for row in result.rows)

    def test_growable_tree_reaches_single_region_leaves(self, switching_env):
        result = run("growable", ModelParams(growable=True), switching_env, 5)

        assert [(r.node_count, r.leaf_count) for r in result.rows] == [
            (7, 4), (15, 8), (15, 8), (15, 8), (15, 8)
        ]
        regions = sorted(regions for regions, _ in result.leaf_regions())
        assert regions == [(m,) for m in range(1, 9)]


@pytest.mark.integration
class TestFixpoint:
    """Static environment without delays settles within depth + 2 steps."""

    @pytest.mark.parametrize(
        "assets",
        [(40.0, 10.0, 25.0, 25.0), (40.0, 30.0, 15.0, 15.0)],
    )
    def test_perturbed_fixed_tree_settles(self, assets, static_env):
        graph = build("fixed_tree")
        for leaf, value in zip(graph.service_nodes(), assets):
            graph.state(leaf).resident_assets = value
        bootstrap_flows(graph)
        depth = graph.max_depth()

        result = simulate(graph, ModelParams(), static_env, 30)

        assert all(row.relocated_pct == 0.0 for row in result.rows[depth + 2:])
        assert graph.state(0).up_assets == 100.0
        assert [graph.state(n).resident_assets for n in graph.service_nodes()] == [25.0] * 4

    def test_all_to_root_settles(self, static_env):
        graph = build("all_to_root")
        graph.state(1).resident_assets = 50.0
        graph.state(4).resident_assets = 0.0
        bootstrap_flows(graph)

        result = simulate(graph, ModelParams(), static_env, 20)

        assert all(row.relocated_pct == 0.0 for row in result.rows[3:])
        assert graph.state(0).up_assets == 100.0


@pytest.fixture
def perturbed_multi_root():
    """Build a multi-root topology with uneven leaves (40, 10, 30, 20)."""

    def _build(topology):
        graph = build(topology)
        for leaf, value in zip(graph.service_nodes(), (40.0, 10.0, 30.0, 20.0)):
            graph.state(leaf).resident_assets = value
        bootstrap_flows(graph)
        return graph

    return _build


@pytest.mark.integration
class TestSharedLeafRelease:
    """Leaves shared by several roots release towards every parent at once."""

    @pytest.mark.parametrize(
        "topology, alpha",
        [("line", 0.5), ("line", 0.2), ("circle", 0.5), ("circle", 0.2),
         ("complete", 0.5), ("complete", 0.2)],
    )
    def test_partial_release_settles_uniformly(self, topology, alpha, perturbed_multi_root, static_env):
        graph = perturbed_multi_root(topology)

        result = simulate(graph, ModelParams(alpha=alpha), static_env, 400)

        assert list(result.rows[-1].region_assets) == pytest.approx([12.5] * 8, abs=1e-6)
        assert all(row.relocated_pct < 1e-6 for row in result.rows[-20:])

    def test_full_release_settles_on_a_line(self, perturbed_multi_root, static_env):
        graph = perturbed_multi_root("line")

        result = simulate(graph, ModelParams(), static_env, 400)

        assert all(row.relocated_pct < 1e-6 for row in result.rows[-20:])

    @pytest.mark.parametrize("topology", ["circle", "complete"])
    def test_full_release_oscillates_with_period_two(self, topology, perturbed_multi_root, static_env):
        graph = perturbed_multi_root(topology)

        result = simulate(graph, ModelParams(), static_env, 400)

        tail = result.rows[-20:]
        assert all(row.relocated_pct > 1.0 for row in tail)
        assert list(tail[-1].region_assets) != pytest.approx([12.5] * 8, abs=1e-3)
        assert list(tail[-1].region_assets) == pytest.approx(list(tail[-3].region_assets), abs=1e-6)
        assert sum(tail[-1].region_assets) == pytest.approx(100.0)


@pytest.mark.integration
class TestAdaptation:
    """Beta = 0.7 without delays follows the high-quality end."""

    @pytest.mark.parametrize("topology", ["fixed_tree", "circle", "complete", "all_to_root"])
    def test_assets_follow_the_switch(self, topology, switching_env):
        params = ModelParams(beta=0.7)

        before = run(topology, params, switching_env, 400).final_graph
        after = run(topology, params, switching_env, 800).final_graph

        assert _richest_leaf_regions(before) == (1, 2)
        assert _richest_leaf_regions(after) == (7, 8)

    def test_all_to_root_crosses_over_after_switch(self, switching_env):
        result = run("all_to_root", ModelParams(beta=0.7), switching_env, 800)

        crossed = crossover_step(result, after=400, leading_region=8, trailing_region=1)

        assert crossed is not None
        assert 400 <= crossed < 799

    def test_line_crosses_over_later_than_all_to_root(self, switching_env):
        params = ModelParams(beta=0.7)
        crossings = {
            topology: crossover_step(
                run(topology, params, switching_env, 800),
                after=400,
                leading_region=8,
                trailing_region=1,
            )
            for topology in ("line", "all_to_root")
        }

        assert None not in crossings.values()
        assert crossings["line"] > crossings["all_to_root"]

    def test_fixed_tree_stays_frozen_at_high_beta(self, switching_env):
        result = run("fixed_tree", ModelParams(beta=1.1, alpha=0.2), switching_env, 800)

        assets = _leaf_assets(result.final_graph)

        assert assets[(1, 2)] > 50.0
        assert _richest_leaf_regions(result.final_graph) == (1, 2)
        assert mean_profit(result, 0, 800) == pytest.approx(14.9, rel=0.15)

    def test_growable_tree_specializes(self, switching_env):
        params = ModelParams(beta=0.7, growable=True)

        before = run("growable", params, switching_env, 400).final_graph
        after = run("growable", params, switching_env, 800).final_graph

        assert _richest_leaf_regions(before) == (1,)
        assert _richest_leaf_regions(after) == (8,)
        assert (1,) not in _leaf_assets(after)


@pytest.mark.integration
@pytest.mark.slow
class TestMeanProfitTable:
    """Mean profit over [0, 800) with release factor 0.2."""

    @pytest.fixture(scope="class")
    def table(self):
        base = parse_config("alpha: 0.2", preset="paper")
        return run_sweep(ALL_TOPOLOGIES, TABLE_BETAS, base)

    def test_uniform_row(self, table):
        assert table.loc[0.0].tolist() == pytest.approx([12.5] * 6, abs=0.2)

    def test_growable_peak_is_the_maximum(self, table):
        assert table.stack().idxmax() == (0.8, "growable")
        assert table.loc[0.8, "growable"] == pytest.approx(26.2, rel=0.15)

    def test_line_at_high_beta_is_the_minimum(self, table):
        assert table.stack().idxmin() in {(0.0, name) for name in ALL_TOPOLOGIES} | {(1.1, "line")}
        assert table.loc[1.1].idxmin() == "line"
        assert table.loc[1.1, "line"] == pytest.approx(12.3, rel=0.15)

    def test_fixed_tree_freezes_at_high_beta(self, table):
        assert table.loc[1.1, "fixed_tree"] == pytest.approx(14.9, rel=0.15)

    @pytest.mark.parametrize("topology", STATIC_TOPOLOGIES)
    def test_static_topologies_rise_to_a_peak_then_drop(self, table, topology):
        column = table[topology]
        peak = column.idxmax()

        assert peak in (0.8, 0.9)
        assert column.loc[peak] > column.loc[0.0]
        assert column.loc[1.1] < column.loc[peak]

    def test_line_never_beats_shared_roots(self, table):
        competitive = table.loc[[beta for beta in TABLE_BETAS if beta >= 0.6]]

        assert (competitive["line"] <= competitive["circle"]).all()
        assert (competitive["line"] <= competitive["complete"]).all()
