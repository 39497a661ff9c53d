import pytest

from weakrel.context import make_context


@pytest.fixture
def s3ctx():
    """Two-element antichain, E = X^2, alpha swapping the points."""
    return make_context(["x", "y"], [], E="full", alpha={"x": "y", "y": "x"})


@pytest.fixture
def chain2ctx():
    return make_context(["x", "y"], [("x", "y")], E="full")


@pytest.fixture
def singleton():
    return make_context(["x"], [], E="full")


# -- acceptance summary ----------------------------------------------------------

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        elapsed = dict(report.user_properties).get("elapsed", report.duration)
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = (report.outcome, elapsed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        outcome, elapsed = _ACCEPTANCE[name]
        num = name.split("_")[2]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {verdict}  {name[len('test_criterion_') + len(num) + 1:]}"
                                    f"  ({elapsed:.2f}s)")
