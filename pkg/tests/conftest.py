import pytest

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    label = getattr(item.function, "criterion", None)
    if label is None or rep.when != "call":
        return
    status = "PASS" if rep.passed else "FAIL"
    detail = item.user_properties and dict(item.user_properties).get("detail", "")
    ACCEPTANCE_LINES[label] = f"{status}  {label}" + (f"  [{detail}]" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split(".")[0])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
