import pytest

# criterion number -> (passed, summary line); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n][1])
    passed = sum(ok for ok, _ in ACCEPTANCE.values())
    terminalreporter.write_line(f"{passed}/{len(ACCEPTANCE)} criteria passed")


@pytest.fixture
def record():
    def _record(n: int, ok: bool, detail: str) -> None:
        line = f"C{n:<2} {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[n] = (ok, line)
        print(line)

    return _record
