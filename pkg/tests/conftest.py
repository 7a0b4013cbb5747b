import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from picard.gaussian import GaussianInt
from picard.group import Word

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

LETTERS = ("e", "w", "s", "sc", "t", "x")


def gaussians(bound: int = 50):
    return st.builds(GaussianInt, st.integers(-bound, bound), st.integers(-bound, bound))


def nonzero_gaussians(bound: int = 50):
    return gaussians(bound).filter(lambda z: not z.is_zero())


def vectors(bound: int = 20):
    return st.tuples(gaussians(bound), gaussians(bound), gaussians(bound))


def words(max_len: int = 6, letters=LETTERS):
    letter = st.tuples(st.sampled_from(letters), st.integers(-3, 3).filter(bool))
    return st.lists(letter, max_size=max_len).map(lambda ls: Word(tuple(ls)))


@pytest.fixture(scope="session")
def cells():
    from picard.cohomology import load_cells

    return load_cells()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
