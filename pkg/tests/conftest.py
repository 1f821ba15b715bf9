import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (passed, message)."""
    name = request.node.name

    def record(passed: bool, message: str = "") -> None:
        _ACCEPTANCE.append((name, passed, message))
        print(f"{'PASS' if passed else 'FAIL'} {name}: {message}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, message in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {message}")
