"""Shared strategies and fixtures for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from lossbell import FamilySpec, Graph, Quad, generate, random_connected_graph

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def rationals(draw, max_num: int = 1000, max_den: int = 40):
    num = draw(st.integers(-max_num, max_num))
    den = draw(st.integers(1, max_den))
    return Fraction(num, den)


@st.composite
def quads(draw):
    return Quad(draw(rationals()), draw(rationals()))


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(n, random.Random(seed))


@pytest.fixture
def ring6() -> Graph:
    return generate(FamilySpec("ring", 6))


@pytest.fixture
def star4() -> Graph:
    return generate(FamilySpec("star", 4))


@pytest.fixture
def star6() -> Graph:
    return generate(FamilySpec("star", 6))


@pytest.fixture
def two_centered12() -> Graph:
    return generate(FamilySpec("two-centered-ghz", 12))


@pytest.fixture
def dense12() -> Graph:
    return generate(FamilySpec("dense-center", 12))


@pytest.fixture
def two_hub8() -> Graph:
    # two adjacent degree-4 hubs, three pendants each
    return Graph(8, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)])


@pytest.fixture
def tail_graph7() -> Graph:
    # unique degree-3 hub 0 with a three-edge tail hanging off one neighbor
    return Graph(7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6)])
