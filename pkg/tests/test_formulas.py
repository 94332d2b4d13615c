import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flowpoly import formulas
from flowpoly.exact import binomial, catalan, narayana
from flowpoly.formulas import (
    asymptotic_log_morris,
    bounds,
    catalan_hankel_det,
    catalan_product,
    check_relations,
    exact_log,
    morris,
    morris_alternate,
    morris_special,
    phi_product,
    phi_scaled,
    psi_product,
    psi_special,
)
from flowpoly.refine import morris_via_kpf, psi_via_kpf

small = st.integers(min_value=1, max_value=4)


def test_morris_examples():
    assert morris(2, 1, 1, 1) == 1
    assert morris(3, 1, 1, 1) == 2
    assert morris(4, 1, 1, 1) == 10
    assert morris(5, 1, 1, 1) == 140
    assert morris(0, 3, 2, 1) == 1
    assert morris(3, 0, 2, 1) == 0


def test_morris_rejects_bad_parameters():
    with pytest.raises(ValueError):
        morris(-1, 1, 1, 1)
    with pytest.raises(ValueError):
        morris(2, 1, 0, 1)
    with pytest.raises(ValueError):
        morris(2, 1, 1, -1)


@given(small, small, small)
def test_morris_one_variable_is_binomial(a, b, c):
    assert morris(1, a, b, c) == binomial(a + b - 2, a - 1)


@given(small, small, small)
def test_morris_without_coupling_factorises(n, a, b):
    assert morris(n, a, b, 0) == binomial(a + b - 2, a - 1) ** n


@given(small, small, small, st.integers(min_value=0, max_value=3))
def test_morris_symmetric_and_integral(n, a, b, c):
    value = morris(n, a, b, c)
    assert value == morris(n, b, a, c)
    assert value.denominator == 1 and value > 0


@given(small, small, small, st.integers(min_value=1, max_value=3))
def test_morris_alternate_form(n, a, b, c):
    assert morris_alternate(n, a, b, c) == morris(n, a, b, c)


def test_bounds():
    assert bounds(3, 2, 1) == [1, 2, 3]
    assert bounds(2, 1, 0) == [0, 0]


def test_psi_spot_values():
    assert psi_product(2, 1, 2, 1, 1) == 6
    assert psi_product(2, 1, 1, 2, 1) == 1
    assert psi_product(2, 3, 1, 1, 1) == 0
    assert psi_product(2, -1, 1, 1, 1) == 0


@pytest.mark.parametrize("n", range(1, 4))
def test_psi_sums_to_morris(n):
    for a in range(1, 4):
        for b in range(1, 4):
            for c in range(3):
                total = sum(psi_product(n, k, a, b, c) for k in range(n + 1))
                assert total == morris(n, a, b + 1, c)


def test_phi_k_zero_and_scaling():
    for n in range(1, 4):
        assert phi_product(n, 0, 2, 1, 1) == math.factorial(n) * morris(n, 2, 1, 1)
        assert phi_scaled(n, 0, 2, 1, 1) == morris(n, 2, 1, 1)
    assert phi_product(2, 1, 1, 1, 0) == 0
    assert phi_scaled(2, 3, 2, 1, 1) == 0
    with pytest.raises(ValueError):
        phi_product(2, 1, 0, 1, 1)


def test_catalan_product():
    assert [catalan_product(n) for n in range(1, 6)] == [1, 1, 2, 10, 140]


@pytest.mark.parametrize("n", range(1, 7))
def test_morris_special_cases(n):
    for a in range(1, 5):
        assert morris_special("a11", n, a) == morris(n, a, 1, 1)
        for b in range(1, 5):
            assert morris_special("ab1", n, a, b, 1) == morris(n, a, b, 1)
            for c in (2, 4):
                assert morris_special("ab2k", n, a, b, c) == morris(n, a, b, c)
    for c in range(1, 6):
        case = "m11c_odd" if c % 2 else "m11c_even"
        assert morris_special(case, n, 1, 1, c) == morris(n, 1, 1, c)


@pytest.mark.parametrize("n", range(1, 6))
def test_catalan_hankel_determinant(n):
    for a in range(1, 5):
        assert morris_special("a11det", n, a) == morris_special("a11", n, a)


def test_hankel_determinant_small():
    assert catalan_hankel_det(3, 1) == 1
    assert catalan_hankel_det(2, 2) == catalan(2)
    assert catalan_hankel_det(1, 3) == catalan(1) * catalan(3) - catalan(2) ** 2


def test_special_case_ranges():
    with pytest.raises(ValueError):
        morris_special("a11", 3, 2, 2, 1)
    with pytest.raises(ValueError):
        morris_special("ab2k", 3, 2, 2, 3)
    with pytest.raises(ValueError):
        morris_special("nope", 3)
    with pytest.raises(ValueError):
        psi_special("narayana", 3, 1, 2, 1, 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_psi_special_cases(n):
    for k in range(n + 1):
        for x in range(1, 4):
            assert psi_special("ka11", n, k, a=x) == psi_product(n, k, x, 1, 1)
            assert psi_special("k1b1", n, k, b=x) == psi_product(n, k, 1, x, 1)
            assert psi_special("k11c", n, k, c=x) == psi_product(n, k, 1, 1, x)
        assert psi_special("narayana", n, k) == narayana(n, k + 1) * catalan_product(n)


def test_psi_special_cases_against_enumeration():
    for n in range(1, 4):
        for k in range(n + 1):
            assert psi_special("ka11", n, k, a=2) == psi_via_kpf(n, k, 2, 1, 1)
            assert psi_special("k11c", n, k, c=2) == psi_via_kpf(n, k, 1, 1, 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_relations_on_closed_forms(n):
    for a in range(1, 4):
        for b in range(1, 4):
            for c in range(3):
                bad = [e for e in check_relations(n, a, b, c) if not e["pass"]]
                assert bad == []


def test_relations_cover_every_name():
    names = {e["relation"] for e in check_relations(3, 1, 1, 1)}
    names |= {e["relation"] for e in check_relations(1, 1, 2, 0)}
    names |= {e["relation"] for e in check_relations(3, 2, 1, 1)}
    for name in ["psi_top_shift", "psi_recurrence", "psi_star", "psi_sum", "psi_symmetry",
                 "psi_contraction", "morris_contraction", "morris_a11_refinement",
                 "phi_recurrence", "phi_trivial", "phi_zero_a", "phi_contract_top"]:
        assert name in names


def test_relations_detect_a_wrong_provider():
    def wrong(n, k, a, b, c):
        return psi_product(n, k, a, b, c) + (k == 1)

    assert any(not e["pass"] for e in check_relations(2, 2, 1, 1, psi=wrong))


def test_morris_matches_enumeration_sample():
    for n, a, b, c in [(3, 2, 3, 2), (2, 3, 1, 0), (3, 1, 2, 1)]:
        assert morris(n, a, b, c) == morris_via_kpf(n, a, b, c)


def test_exact_log():
    assert exact_log(Fraction(1)) == 0
    assert math.isclose(exact_log(Fraction(10**400)), 400 * math.log(10))
    with pytest.raises(ValueError):
        exact_log(Fraction(0))


def test_asymptotic_residual_is_linear():
    for n in (10, 20, 40, 60):
        predicted, exact = asymptotic_log_morris("m111", n)
        assert 0 < exact - predicted < 0.25 * n


def test_asymptotic_mn11_leading_term():
    ratios = []
    for n in (10, 20, 40):
        predicted, exact = asymptotic_log_morris("mn11", n)
        ratios.append(abs(exact - predicted) / n**2)
    assert ratios == sorted(ratios, reverse=True)
    with pytest.raises(ValueError):
        asymptotic_log_morris("m111", 1)
    with pytest.raises(ValueError):
        asymptotic_log_morris("other", 5)
