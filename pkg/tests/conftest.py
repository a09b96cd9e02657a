import pytest

from qhaar.haar import TableStore
from qhaar.normalform import set_invariant_checking

# Every reduction in the run checks sum preservation of its error words and
# a/k/c/g monotonicity of its output.
set_invariant_checking(True)

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def store():
    """In-memory tables up to order 3, shared by the whole run."""
    return TableStore(None, max_order=3, method="solver")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
