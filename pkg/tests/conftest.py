import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from nashindex.engine import Budget
from nashindex.homindex import homological_index
from nashindex.nash import HypersurfaceProblem
from nashindex.probfile import parse_expr
from nashindex.ring import RingContext

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
PROBLEMS = os.path.join(REPO, "problems")


def problem_path(name):
    return os.path.join(PROBLEMS, name)


@pytest.fixture(scope="session")
def actx3():
    return RingContext(("x", "y", "z"))


@pytest.fixture(scope="session")
def umbrella(actx3):
    h = parse_expr("y^2 - x*z^2", actx3)
    f = parse_expr("y^2 - (x - z)^2", actx3)
    sing = [parse_expr("y", actx3), parse_expr("z", actx3)]
    return HypersurfaceProblem(("x", "y", "z"), h, f=f, sing=sing)


@pytest.fixture(scope="session")
def umbrella_report(umbrella):
    """The golden run, shared by every test that only reads it."""
    return homological_index(umbrella, budget=Budget(10 ** 9))
