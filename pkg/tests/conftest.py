import pytest
from hypothesis import settings, strategies as st

from utcount.setpartition import from_rgs

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


@st.composite
def rgs_partitions(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    a, m = [0], 0
    for _ in range(n - 1):
        x = draw(st.integers(0, m + 1))
        a.append(x)
        m = max(m, x)
    return from_rgs(a)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES
