import pytest

_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when == "teardown":
        return
    if report.when == "setup" and report.passed:
        return
    label = marker.kwargs["criterion"]
    callspec = getattr(item, "callspec", None)
    case = callspec.id if callspec else ""
    detail = ""
    if report.failed:
        detail = str(report.longrepr.reprcrash.message).splitlines()[0] if hasattr(report.longrepr, "reprcrash") else "error"
    notes = [v for k, v in report.user_properties if k == "note"]
    detail = "; ".join(x for x in [detail] + notes if x)
    _outcomes.setdefault(label, []).append((case, report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label in sorted(_outcomes, key=lambda s: int(s.split()[0])):
        cases = _outcomes[label]
        ok = all(passed for _, passed, _ in cases)
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {label}")
        for case, passed, detail in cases:
            if case or detail:
                tr.write_line(f"        {'pass' if passed else 'FAIL'}  {case or '-'}" + (f"  ({detail})" if detail else ""))
