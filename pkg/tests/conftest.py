import numpy as np
import pytest

from triconc.states import EXAMPLE_DCT_WEIGHTS, dct_state, ghz_state
from triconc.tensor_core import outer_product


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ghz_rho():
    return outer_product(ghz_state())


@pytest.fixture
def example_dct():
    return dct_state(EXAMPLE_DCT_WEIGHTS)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
