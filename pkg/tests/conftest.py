import pytest

from spectra_trust import solvers


@pytest.fixture(scope="session", autouse=True)
def _warm_numba():
    # Compile (or load from disk cache) the jitted kernels once, so
    # timing-sensitive tests measure the algorithms rather than the JIT.
    solvers.warm_up()


def pytest_configure(config):
    config._criterion_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
