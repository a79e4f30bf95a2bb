import pytest

from opgs.syntax import parse_poly, parse_word
from opgs.terms import Mode

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def W(text: str, mode: Mode = Mode.UNITARY):
    return parse_word(text, "x,y,z,u,v", mode)


def P(text: str, mode: Mode = Mode.UNITARY):
    return parse_poly(text, "x,y,z,u,v", mode)


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
