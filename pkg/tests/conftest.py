import time

import pytest

# criterion id -> (description, runtime budget in seconds)
CRITERIA = {
    1: ("exact B-unit reproduction", 1),
    2: ("vanishing norms", 30),
    3: ("invariant dimensions", 30),
    4: ("kernel data", 30),
    5: ("cohomology table", 60),
    6: ("d2 decision procedure", 60),
    7: ("property suites", 60),
    8: ("finite-field suite", 60),
}

_outcomes: dict[int, list[tuple[str, float]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    elapsed = dict(report.user_properties).get("elapsed", 0.0)
    _outcomes.setdefault(marker, []).append((report.outcome, elapsed))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, (desc, budget) in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            terminalreporter.write_line(f"criterion {n} ({desc}): NOT RUN")
            continue
        elapsed = sum(t for _, t in results)
        ok = all(o == "passed" for o, _ in results)
        status = "PASS" if ok and elapsed <= budget else "FAIL"
        note = "" if elapsed <= budget else " over budget"
        terminalreporter.write_line(
            f"criterion {n} ({desc}): {status}  [{len(results)} tests, {elapsed:.2f} s of {budget} s{note}]")
