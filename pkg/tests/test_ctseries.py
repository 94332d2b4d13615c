import pytest
from hypothesis import given, strategies as st

from flowpoly.ctseries import TruncatedSeries, WindowOverflowError, ct_morris, ct_phi, ct_psi, series_from_terms
from flowpoly.exact import binomial, catalan

exponents = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
series = st.dictionaries(exponents, st.integers(-5, 5), max_size=6)


def test_ct_examples():
    assert ct_morris(4, 1, 1, 1) == 10
    assert ct_morris(3, 1, 1, 1) == 2
    assert ct_psi(2, 1, 2, 1, 1) == 6
    assert ct_psi(2, 1, 1, 2, 1) == 1
    assert ct_psi(2, 5, 1, 1, 1) == 0
    assert ct_phi(2, -1, 2, 1, 1) == 0


def test_ct_one_variable():
    for a in range(1, 5):
        for b in range(1, 5):
            assert ct_morris(1, a, b, 3) == binomial(a + b - 2, a - 1)


def test_ct_narayana():
    for k in range(4):
        assert ct_psi(3, k, 1, 1, 1) == [1, 3, 1, 0][k] * catalan(1) * catalan(2)


def test_ct_rejects_negative():
    with pytest.raises(ValueError):
        ct_morris(2, -1, 1, 1)


@given(series)
def test_residue_of_derivative_vanishes(terms):
    s = TruncatedSeries(2, 10, terms)
    assert s.derivative(0).residue(0).terms == {}


@given(series, series)
def test_product_and_sum(left, right):
    x = TruncatedSeries(2, 10, left)
    y = TruncatedSeries(2, 10, right)
    assert x * y == y * x
    assert (x + y).constant() == x.constant() + y.constant()


def test_coefficient_extraction():
    s = series_from_terms(2, 5, [((1, 0), 2), ((0, -1), 3), ((0, 0), 4)])
    assert s.ct(0).terms == {(0, -1): 3, (0, 0): 4}
    assert s.residue(1).terms == {(0, 0): 3}
    assert s.mul_monomial((1, 1)).terms == {(2, 1): 2, (1, 0): 3, (1, 1): 4}


def test_cancellation_drops_terms():
    s = series_from_terms(1, 3, [((1,), 1)]) + series_from_terms(1, 3, [((1,), -1)])
    assert s.terms == {}


def test_window_overflow():
    s = TruncatedSeries.monomial(1, 2, (2,))
    with pytest.raises(WindowOverflowError):
        s.mul_monomial((1,))
    with pytest.raises(ValueError):
        TruncatedSeries.monomial(2, 2, (1,))
