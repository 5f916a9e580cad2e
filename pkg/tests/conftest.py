import numpy as np
import pytest

from iswhm import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile (or load from cache) the JIT kernel once so timed tests measure runs, not compilation."""
    psi = np.ones(2, dtype=complex) / np.sqrt(2)
    _kernels.propagate(psi, np.zeros((2, 2)), np.zeros(2), 2.0, 1.0, 0, 1)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name[5:]}: {detail}")
