from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fspectrum import CQ, Algebra, Func, GroundSet
from fspectrum.instance import load_instance

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

VALUES = [CQ(0), CQ(1), CQ(2), CQ(0, 1), CQ(-1), CQ(1, 2)]


@pytest.fixture
def w6() -> Algebra:
    return load_instance(DATA / "w6.json").algebra()


@pytest.fixture
def w6_instance():
    return load_instance(DATA / "w6.json")


def func(ground: GroundSet, *values) -> Func:
    return Func(ground, tuple(CQ.coerce(v) for v in values))


@st.composite
def algebras(draw, min_size: int = 1, max_size: int = 4, values=VALUES, max_generators: int = 3) -> Algebra:
    """An algebra generated by block-constant functions over a random planned partition."""
    n = draw(st.integers(min_size, max_size))
    ground = GroundSet.of_size(n)
    b = draw(st.integers(1, n))
    owner = draw(st.lists(st.integers(0, b - 1), min_size=n, max_size=n))
    k = draw(st.integers(0, max_generators))
    gens = []
    for _ in range(k):
        vals = draw(st.lists(st.sampled_from(values), min_size=b, max_size=b))
        gens.append(Func(ground, tuple(vals[owner[x]] for x in range(n))))
    return Algebra(ground, gens)


@st.composite
def members(draw, algebra: Algebra, values=VALUES) -> Func:
    vals = draw(st.lists(st.sampled_from(values), min_size=algebra.num_blocks, max_size=algebra.num_blocks))
    return algebra.from_block_values(vals)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
