import os

import hypothesis
import pytest

from raagdyn.automorphism import from_images
from raagdyn.graphs import SimplicialGraph

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("dev", max_examples=50, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture
def gp():
    return SimplicialGraph("abc", [("a", "c"), ("b", "c")])


@pytest.fixture
def phi_p(gp):
    return from_images(gp, {"a": "a b a^-1", "b": "b a^-1", "c": "c"},
                       {"a": "a b^-1", "b": "b a b^-1", "c": "c"})


@pytest.fixture
def f2():
    return SimplicialGraph("ab")


@pytest.fixture
def sigma(f2):
    return from_images(f2, {"a": "a b", "b": "a"}, {"a": "b", "b": "b^-1 a"})


@pytest.fixture
def psi(f2):
    return from_images(f2, {"a": "a b a", "b": "a b"}, {"a": "b^-1 a", "b": "a^-1 b^2"})


@pytest.fixture
def z2():
    return SimplicialGraph("ab", [("a", "b")])


@pytest.fixture
def tau(z2):
    return from_images(z2, {"a": "a b", "b": "a b^2"}, {"a": "a^2 b^-1", "b": "a^-1 b"})


@pytest.fixture
def e3():
    return SimplicialGraph("abc")


@pytest.fixture
def rho(e3):
    return from_images(e3, {"a": "a b", "b": "b c", "c": "c"},
                       {"a": "a c b^-1", "b": "b c^-1", "c": "c"})


@pytest.fixture
def t3():
    return SimplicialGraph(["s", "a", "b"])


@pytest.fixture
def chi(t3):
    return from_images(t3, {"s": "s a", "a": "a b a", "b": "a b"},
                       {"s": "s a^-1 b", "a": "b^-1 a", "b": "a^-1 b^2"})


@pytest.fixture
def ns():
    return SimplicialGraph("abc", [("a", "b")])


@pytest.fixture
def pi(ns):
    return from_images(ns, {"a": "c a c^-1", "b": "c b c^-1", "c": "c"},
                       {"a": "c^-1 a c", "b": "c^-1 b c", "c": "c"})


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.lines():
            terminalreporter.write_line(line)
