import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from htaction import catalog
from htaction.polyring import Polynomial

GOLDEN = Path(__file__).parent / "golden"

X2 = ("x1", "x2")
X3 = ("x1", "x2", "x3")


def golden_lines(name):
    """Non-comment lines of a golden file."""
    text = (GOLDEN / name).read_text(encoding="utf-8")
    return [l for l in text.splitlines() if l and not l.startswith("#")]


def P(text, variables=X2):
    from htaction.parsing import parse_polynomial
    return parse_polynomial(text, variables)


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def polynomials(variables=X2, max_terms=4, max_exp=2):
    n = len(variables)
    monos = st.tuples(*[st.integers(0, max_exp)] * n)
    return st.dictionaries(monos, small_rationals, max_size=max_terms).map(
        lambda d: Polynomial(variables, d))


def derivative(p: Polynomial, name: str) -> Polynomial:
    """Formal partial derivative (test-side helper, independent of the library)."""
    i = p.variables.index(name)
    terms = {}
    for m, c in p.items():
        if m[i]:
            mm = list(m)
            mm[i] -= 1
            terms[tuple(mm)] = c * m[i]
    return Polynomial(p.variables, terms)


@pytest.fixture(params=catalog.names())
def catalog_algebra(request):
    return catalog.get(request.param).algebra


@pytest.fixture
def ex32():
    return catalog.get("example-3.2").algebra


@pytest.fixture
def ex33():
    return catalog.get("example-3.3").algebra


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
