from __future__ import annotations

import os
import sys
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from equidom.graph import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


def subsets(n: int):
    return range(1 << n)


def brute_dominating(G: Graph, D: int) -> bool:
    """Definitional check, independent of the bitmask shortcuts."""
    return all(D >> v & 1 or any(D >> u & 1 for u in range(G.n) if G.has_edge(u, v)) for v in range(G.n))


def brute_mds(G: Graph, D: int) -> bool:
    if not brute_dominating(G, D):
        return False
    return all(not brute_dominating(G, D & ~(1 << v)) for v in range(G.n) if D >> v & 1)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
