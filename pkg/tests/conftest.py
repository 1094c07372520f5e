from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def raw_structure(L):
    return [[list(row) for row in plane] for plane in L.structure]


def raw_matrix(f):
    return [list(row) for row in f.matrix]


@pytest.fixture
def raw():
    return raw_structure


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion(capsys):
    """``record(number, title, checks)``: print and keep one PASS/FAIL line, return the failures."""

    def record(number, title, checks, elapsed):
        failed = [label for label, ok in checks if not ok]
        if elapsed >= 10:
            failed.append(f"took {elapsed:.1f} s")
        status = "PASS" if not failed else "FAIL"
        line = f"{status} criterion {number}: {title} ({elapsed:.2f} s)"
        if failed:
            line += " -- failed: " + "; ".join(failed)
        ACCEPTANCE_LINES[number] = line
        with capsys.disabled():
            print("\n" + line)
        return failed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
