"""
Shared fixtures for the simulator test suite.
"""

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.config import get_settings
from src.model.environment import Environment
from src.model.graph import NodeKind, SystemGraph
from src.model.params import ModelParams
from src.model.topologies import build

settings.register_profile(
    "dev",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    "ci",
    max_examples=1000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Point outputs at a temporary directory and rebuild cached settings."""
    monkeypatch.setenv("MSAD_OUTPUT_DIR", str(tmp_path / "results"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def switching_env():
    """Eight regions, high end switching left-right-left every 400 steps."""
    return Environment.switching()


@pytest.fixture
def static_env():
    """Region 1 stays the best region forever."""
    return Environment.static([0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1])


@pytest.fixture
def default_params():
    return ModelParams()


@pytest.fixture
def all_to_root():
    return build("all_to_root")


@pytest.fixture
def fixed_tree():
    return build("fixed_tree")


@pytest.fixture
def two_leaf_graph():
    """Root 0 over service leaves 1 (regions 1-2) and 2 (regions 3-4), 25 assets each."""
    graph = SystemGraph()
    root = graph.add_node(NodeKind.DECISION, label="root")
    for regions in ((1, 2), (3, 4)):
        leaf = graph.add_node(NodeKind.SERVICE, regions=regions, resident_assets=25.0)
        graph.add_edge(root, leaf)
    return graph
