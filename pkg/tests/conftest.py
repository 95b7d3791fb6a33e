from functools import lru_cache

import pytest

from ospbranch.algebra import make_spec
from ospbranch.operators import OperatorAlgebra


@lru_cache(maxsize=None)
def algebra(m: int, n: int, spins: int = 2, dim_cap: int = 2000) -> OperatorAlgebra:
    """Shared memoized operator algebras, so matrices are built once per session."""
    return OperatorAlgebra(make_spec(m, n), spins, dim_cap=dim_cap)


@pytest.fixture
def alg24():
    return algebra(2, 4)


@pytest.fixture
def alg44():
    return algebra(4, 4)


# --- acceptance summary: one line per criterion --------------------------------

_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    num, title = mark.args
    prev = _criteria.get(num, (title, "pass"))[1]
    if rep.failed or prev == "FAIL":
        status = "FAIL"
    elif rep.when == "call" and rep.passed:
        status = prev
    else:
        return
    _criteria[num] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, status = _criteria[num]
        terminalreporter.write_line(f"criterion {num}: {status.upper():4}  {title}")
