import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    mark = getattr(report, "criterion", None)
    if mark is None:
        return
    n, title = mark
    row = _CRITERIA.setdefault(n, {"title": title, "passed": 0, "failed": 0, "xfailed": 0, "skipped": 0})
    if hasattr(report, "wasxfail"):
        row["xfailed" if report.skipped else "failed"] += 1
    elif report.passed:
        row["passed"] += 1
    elif report.skipped:
        row["skipped"] += 1
    else:
        row["failed"] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        r = _CRITERIA[n]
        if r["failed"]:
            verdict = "FAIL"
        elif r["xfailed"]:
            verdict = "FAIL (expected, see ledger)"
        else:
            verdict = "PASS"
        counts = f"{r['passed']} passed, {r['xfailed']} xfailed, {r['failed']} failed"
        tr.write_line(f"criterion {n}: {verdict}  [{counts}]  {r['title']}")
