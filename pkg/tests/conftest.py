import pytest
from hypothesis import strategies as st

from rfg.selftest import FIXTURES


@pytest.fixture(params=sorted(FIXTURES))
def fixture_graph(request):
    return FIXTURES[request.param]


def words(graph, max_size=10):
    return st.lists(st.integers(0, 2 * graph.rank - 1), max_size=max_size).map(tuple)


graph_names = st.sampled_from(sorted(FIXTURES))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
