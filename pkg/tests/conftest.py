from fractions import Fraction

import pytest

from rabi_exceptional.model import ModelParams

FIG1 = ModelParams(Fraction(1), Fraction(0), Fraction(6, 5), Fraction(1, 2))
FIG2 = ModelParams(Fraction(1), Fraction(0), Fraction(3, 2), Fraction(1, 2))
FIG3 = ModelParams(Fraction(1), Fraction(0), Fraction(6, 5), Fraction(3, 10))

_ACCEPTANCE = []


@pytest.fixture
def fig1():
    return FIG1


@pytest.fixture
def fig3():
    return FIG3


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(label, passed, detail)."""

    def record(label, passed, detail=""):
        _ACCEPTANCE.append((label, bool(passed), detail))
        print(f"[{'PASS' if passed else 'FAIL'}] {label} {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
