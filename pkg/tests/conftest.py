import pytest

from eptl.scalars import cyc_from_angle


@pytest.fixture
def ang():
    """ang(a, b) = exp(i pi a / b) as an exact cyclotomic scalar."""
    return cyc_from_angle


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(n: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[n] = (ok, detail)
        print("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
