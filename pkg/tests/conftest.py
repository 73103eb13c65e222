import pytest

from shiftcolor import audit, qo
from shiftcolor.upseq import make_up


@pytest.fixture
def A2():
    return qo.antichain(["a", "b"])


@pytest.fixture
def C2():
    return qo.chain(["a", "b"])


@pytest.fixture
def seqA2(A2):
    return qo.seq(A2)


@pytest.fixture
def zoo():
    return audit.zoo()


def words(*ws):
    """'ab', 'ba' -> ((0, 1), (1, 0)) over the atoms a=0, b=1, c=2."""
    return tuple(tuple("abc".index(ch) for ch in w) for w in ws)


def up(pre, per):
    return make_up(pre, per)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
