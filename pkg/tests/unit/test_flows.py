"""
Unit tests for bottom-up and top-down information flows.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.dynamics.flows import (
    bootstrap_flows,
    eligible_assets_corrected,
    smooth,
    split_eligible,
    split_shares,
    subtree_assets,
    update_bottom_up_flows,
    update_top_down_flows,
)
from src.model.params import ModelParams


@pytest.mark.unit
class TestSplitShares:
    """Test the profitability-weighted split."""

    def test_proportional_to_profit_at_beta_one(self):
        shares = split_shares(100.0, [1.0, 1.0, 2.0], beta=1.0)

        np.testing.assert_allclose(shares, [25.0, 25.0, 50.0])

    def test_equal_split_at_beta_zero(self):
        shares = split_shares(90.0, [5.0, 0.0, 1.0], beta=0.0)

        np.testing.assert_allclose(shares, [30.0, 30.0, 30.0])

    def test_cost_is_deducted_once(self):
        shares = split_shares(100.0, [1.0, 3.0], beta=1.0, cost=20.0)

        np.testing.assert_allclose(shares, [20.0, 60.0])

    def test_cost_above_eligibility_gives_nothing(self):
        shares = split_shares(5.0, [1.0, 3.0], beta=1.0, cost=20.0)

        np.testing.assert_allclose(shares, [0.0, 0.0])

    def test_all_zero_profit_falls_back_to_equal(self):
        shares = split_shares(10.0, [0.0, 0.0], beta=0.7)

        np.testing.assert_allclose(shares, [5.0, 5.0])

    def test_high_beta_sharpens(self):
        """Test a larger beta moves more of the budget to the best child."""
        soft = split_shares(100.0, [1.0, 2.0], beta=0.5)
        sharp = split_shares(100.0, [1.0, 2.0], beta=2.0)

        assert sharp[1] > soft[1] > 50.0

    def test_no_children(self):
        assert split_shares(10.0, [], beta=1.0).size == 0


@pytest.mark.unit
class TestBootstrap:
    """Test initial equilibrium flows."""

    def test_subtree_totals(self, fixed_tree):
        totals = subtree_assets(fixed_tree)

        assert totals[0] == 100.0
        assert totals[1] == totals[2] == 50.0
        assert totals[3] == 25.0

    def test_edges_start_in_equilibrium(self, fixed_tree):
        """Test up-assets and down-assets equal the child's subtree, profit zero."""
        bootstrap_flows(fixed_tree)

        assert fixed_tree.edge(0, 1).values() == (50.0, 0.0, 50.0)
        assert fixed_tree.edge(1, 3).values() == (25.0, 0.0, 25.0)
        assert fixed_tree.state(0).up_assets == 100.0


@pytest.mark.unit
class TestBottomUpFlows:
    """Test the up-asset and up-profit sweep."""

    def test_targets_with_full_gain(self, all_to_root, switching_env, default_params):
        """Test leaves report their assets and profit, the root sums them."""
        update_bottom_up_flows(all_to_root, default_params, switching_env, 0)

        assert all_to_root.edge(0, 1).up_profit == pytest.approx(5.0)
        assert all_to_root.edge(0, 2).up_profit == pytest.approx(2.5)
        assert all_to_root.state(0).up_assets == pytest.approx(100.0)
        assert all_to_root.state(0).up_profit == pytest.approx(12.5)

    def test_soft_delay(self, all_to_root, switching_env):
        """Test gamma moves outputs part of the way."""
        params = ModelParams(gamma_up_profit=0.5)

        update_bottom_up_flows(all_to_root, params, switching_env, 0)

        assert all_to_root.edge(0, 1).up_profit == pytest.approx(2.5)

    def test_root_reads_freshly_updated_children(self, fixed_tree, switching_env, default_params):
        """Test one sweep carries leaf changes all the way to the root."""
        fixed_tree.state(3).resident_assets = 45.0

        update_bottom_up_flows(fixed_tree, default_params, switching_env, 0)

        assert fixed_tree.state(0).up_assets == pytest.approx(120.0)

    def test_smooth(self):
        assert smooth(10.0, 20.0, 0.5) == 15.0
        assert smooth(10.0, 20.0, 0.0) == 10.0
        assert smooth(10.0, 20.0, 1.0) == 20.0


@pytest.mark.unit
class TestTopDownFlows:
    """Test eligibility and grants."""

    def test_root_eligibility_is_subtree_estimate(self, all_to_root):
        all_to_root.state(0).nonsettled_assets = 4.0

        assert eligible_assets_corrected(0, all_to_root) == pytest.approx(104.0)

    def test_grant_clamped_to_subtree(self, fixed_tree):
        """Test a node granted more than its subtree holds is clamped."""
        fixed_tree.edge(0, 1).down_assets = 80.0

        assert eligible_assets_corrected(1, fixed_tree) == pytest.approx(50.0)

    def test_grant_below_subtree(self, fixed_tree):
        fixed_tree.edge(0, 1).down_assets = 30.0

        assert eligible_assets_corrected(1, fixed_tree) == pytest.approx(30.0)

    def test_split_eligible_uses_child_profit(self, all_to_root):
        for child, profit in zip((1, 2, 3, 4), (5.0, 2.5, 2.5, 2.5)):
            all_to_root.edge(0, child).up_profit = profit

        grants = split_eligible(0, all_to_root, ModelParams(beta=1.0))

        assert list(grants) == [1, 2, 3, 4]
        assert grants[1] == pytest.approx(40.0)
        assert grants[2] == pytest.approx(20.0)

    def test_update_moves_down_assets(self, all_to_root, switching_env):
        params = ModelParams(beta=1.0, gamma_down=0.5)
        update_bottom_up_flows(all_to_root, params, switching_env, 0)

        update_top_down_flows(all_to_root, params)

        # 25 -> 40 halfway
        assert all_to_root.edge(0, 1).down_assets == pytest.approx(32.5)
        assert all_to_root.edge(0, 2).down_assets == pytest.approx(22.5)
