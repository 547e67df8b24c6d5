import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def subsets_with_zero(draw, n_min=1, n_max=5):
    n = draw(st.integers(n_min, n_max))
    rest = draw(st.sets(st.integers(1, (1 << n) - 1), max_size=(1 << n) - 1))
    return n, sorted({0} | rest)


@st.composite
def random_relations(draw, n_min=1, n_max=6):
    """Relations a <= b with a placed before b in a random linear order, so acyclic."""
    n = draw(st.integers(n_min, n_max))
    order = draw(st.permutations(list(range(1, n + 1))))
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, chosen


@st.composite
def coverings(draw, n_min=1, n_max=6):
    n = draw(st.integers(n_min, n_max))
    sets = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6))
    union = 0
    for s in sets:
        union |= s
    missing = ((1 << n) - 1) & ~union
    if missing:
        sets.append(missing)
    return n, sets


@pytest.fixture(scope="session")
def catalog():
    from hammtile import load_catalog
    return load_catalog()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
