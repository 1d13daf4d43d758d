from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def fractions(lo=-50, hi=50, max_den=30):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


def positive_fractions(hi=50, max_den=30):
    return st.fractions(min_value=Fraction(1, max_den), max_value=hi, max_denominator=max_den)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
