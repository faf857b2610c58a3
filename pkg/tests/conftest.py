import pytest

from aspectarg.algebra import mk_algebra
from aspectarg.formulas import evaluate, parse


@pytest.fixture
def fig1():
    """The two-proposition algebra used throughout the worked examples."""
    return mk_algebra(["x", "y"])


@pytest.fixture
def ev(fig1):
    """Evaluate a formula string in the two-proposition algebra."""

    def _ev(text, algebra=None):
        return evaluate(parse(text), algebra or fig1)

    return _ev
