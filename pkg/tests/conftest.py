"""Shared fixtures: named small graphs with 1-based vertices and default settings."""
from itertools import combinations

import pytest

from config.settings import Settings
from domain.graph_models import ColoredGraph


def make_graph(n: int, edges=(), colors=None) -> ColoredGraph:
    """Graph on vertices 1..n."""
    return ColoredGraph.from_edges(range(1, n + 1), edges, colors)


def make_cycle(n: int) -> ColoredGraph:
    return make_graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def make_complete(n: int) -> ColoredGraph:
    return make_graph(n, combinations(range(1, n + 1), 2))


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def k2() -> ColoredGraph:
    return make_graph(2, [(1, 2)])


@pytest.fixture
def two_isolated() -> ColoredGraph:
    return make_graph(2)


@pytest.fixture
def path3() -> ColoredGraph:
    return make_graph(3, [(1, 2), (2, 3)])


@pytest.fixture
def c4() -> ColoredGraph:
    return make_cycle(4)


@pytest.fixture
def c5() -> ColoredGraph:
    return make_cycle(5)


@pytest.fixture
def c6() -> ColoredGraph:
    return make_cycle(6)


@pytest.fixture
def k3() -> ColoredGraph:
    return make_complete(3)


@pytest.fixture
def k4() -> ColoredGraph:
    return make_complete(4)
