import pytest
from hypothesis import settings, strategies as st

from qtoroidal.coeff import QRat
from qtoroidal.lattice import cartan_load

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA: list[tuple[int, str, bool]] = []


@pytest.fixture(scope="session")
def A1():
    return cartan_load("A1")


@pytest.fixture(scope="session")
def A2():
    return cartan_load("A2")


@pytest.fixture(scope="session")
def A3():
    return cartan_load("A3")


@pytest.fixture
def criterion():
    """Record a numbered acceptance line; printed again in the terminal summary."""

    def record(number: int, text: str, ok: bool) -> bool:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}"
        print(line)
        _CRITERIA.append((number, text, ok))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, ok in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")


laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=4).map(QRat.laurent)
nonzero_laurent = laurent.filter(bool)
qrats = st.builds(lambda a, b: a / b, laurent, nonzero_laurent)
nonzero_qrats = qrats.filter(bool)
