import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CRITERIA = {}  # number -> (title, [outcomes])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = CRITERIA.setdefault(number, (title, []))
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry[1].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, outcomes = CRITERIA[number]
        status = "PASS" if outcomes and all(outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title} ({len(outcomes)} tests)")
