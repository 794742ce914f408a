import pytest

from ccg import oracle

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    n, title = marker
    _criteria.setdefault(n, (title, []))[1].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcomes = _criteria[n]
        ok = outcomes and all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def brute2():
    return oracle.brute_lambda(2)


@pytest.fixture(scope="session")
def brute3():
    return oracle.brute_lambda(3)


@pytest.fixture(scope="session")
def index2():
    return oracle.build_index(2)


@pytest.fixture(scope="session")
def index3():
    return oracle.build_index(3)


@pytest.fixture(scope="session")
def gamma3_brute():
    return oracle.brute_gamma(3)
