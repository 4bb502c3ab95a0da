from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tropfiber import EXACT, QQ, FiniteField, LaurentPoly, Series

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

F5 = FiniteField(5)
F4 = FiniteField(2, 2)
FIELDS = [QQ, F5, F4]


@pytest.fixture(params=FIELDS, ids=lambda f: f.name)
def field(request):
    return request.param


def exponents(max_den=4, lo=-6, hi=6):
    return st.builds(
        lambda n, d: Fraction(n, d), st.integers(lo * max_den, hi * max_den), st.integers(1, max_den)
    )


def elements(field, nonzero=False):
    if field is QQ:
        base = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
    else:
        base = st.sampled_from(field.elements())
    return base.filter(bool) if nonzero else base


@st.composite
def series(draw, field, max_terms=4, exact=None, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    exps = draw(st.lists(exponents(), min_size=n, max_size=n, unique=True))
    coeffs = draw(st.lists(elements(field, nonzero=True), min_size=n, max_size=n))
    if exact is None:
        exact = draw(st.booleans())
    if exact:
        prec = EXACT
    else:
        top = max(exps) if exps else Fraction(0)
        prec = top + draw(st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3)]))
    return Series(field, list(zip(exps, coeffs)), prec)


@st.composite
def laurent_polys(draw, field, nvars, max_terms=4, exp_range=(-2, 3), exact=True):
    n = draw(st.integers(1, max_terms))
    mons = draw(
        st.lists(
            st.tuples(*[st.integers(*exp_range) for _ in range(nvars)]), min_size=n, max_size=n, unique=True
        )
    )
    coeffs = [draw(series(field, max_terms=2, exact=exact, nonzero=True)) for _ in mons]
    return LaurentPoly(nvars, list(zip(mons, coeffs)), field)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
