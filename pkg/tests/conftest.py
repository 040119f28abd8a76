"""Shared hypothesis strategies; the profile is derandomized so runs are
reproducible."""
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from normlift.fields import GF, QQ
from normlift.series import PuiseuxSeries

settings.register_profile("repro", derandomize=True, max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")

FIELDS = [QQ, GF(5)]


@st.composite
def series(draw, field=None, q=None, max_terms=4, exact=None, min_exp=0):
    field = field if field is not None else draw(st.sampled_from(FIELDS))
    q = q if q is not None else draw(st.sampled_from([1, 2, 3, 6]))
    coeff = (st.integers(0, field.p - 1) if field.is_finite
             else st.fractions(min_value=-5, max_value=5, max_denominator=4))
    terms = draw(st.dictionaries(st.integers(min_exp * q, min_exp * q + 4 * q), coeff, max_size=max_terms))
    if exact is None:
        exact = draw(st.booleans())
    prec = "inf" if exact else Fraction(draw(st.integers(q * (min_exp + 1), q * (min_exp + 6))), q)
    return PuiseuxSeries(field, q, terms, prec)


@st.composite
def series_triple(draw):
    field = draw(st.sampled_from(FIELDS))
    return tuple(draw(series(field=field)) for _ in range(3))


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
