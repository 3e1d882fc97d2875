import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lalg import fixtures
from lalg.entropy import (
    bayes,
    check_chain_rule,
    check_condition_on_unit,
    check_entropy_inequalities,
    check_info_gain_calculus,
    check_interior_properties,
    check_join_chain,
    check_three_partition_chain,
    conditional_entropy,
    conditional_info_gain,
    conditionally_independent,
    entropy,
    info_gain,
    phi,
)
from lalg.errors import ContractError
from lalg.report import FAILS, HOLDS, NOT_ASSERTABLE
from lalg.states import (
    enumerate_partitions,
    grid_measures,
    interior_subset,
    join,
    unit_partition,
    validate_partition,
    validate_state,
)

from oracles import shannon


def chain_state(k):
    L = fixtures.lukasiewicz_chain(k)
    return validate_state(L, fixtures.lukasiewicz_state(L))


M3 = validate_state(fixtures.LUK3, fixtures.lukasiewicz_state(fixtures.LUK3))
M5 = chain_state(5)
PARTS3 = list(enumerate_partitions(M3, 3))
PARTS5 = list(enumerate_partitions(M5, 3))
M_T4 = validate_state(fixtures.TABLE4, fixtures.TABLE4_STATE)


def test_phi():
    assert phi(0) == 0.0
    assert phi(1) == 0.0
    assert phi(Fraction(1, 2)) == -0.5
    with pytest.raises(ContractError):
        phi(Fraction(3, 2))


def test_unit_partition_has_zero_entropy():
    h = entropy(unit_partition(M3))
    assert h.value == 0.0 and h.is_zero


@pytest.mark.parametrize("n", [2, 4, 8])
def test_uniform_partition_is_log_n(n):
    m = chain_state(n + 1)
    p = validate_partition([1] * n, m)
    assert abs(entropy(p).value - math.log2(n)) <= 1e-12
    assert abs(entropy(p, "e").value - math.log(n)) <= 1e-12
    assert abs(entropy(p, "e").bits - math.log2(n)) <= 1e-12


@pytest.mark.parametrize("p", PARTS5, ids=lambda p: "-".join(p.names()))
def test_entropy_matches_shannon_oracle(p):
    assert abs(entropy(p).value - shannon(p.measures, lambda x: math.log2(x))) <= 1e-12


@pytest.mark.parametrize("xi, eta", list(product(PARTS3, PARTS3)))
def test_conditional_entropy_matches_oracle(xi, eta):
    p = grid_measures(xi, eta)
    q = eta.measures
    expect = -sum(
        p[i][j] * math.log2(p[i][j] / q[j])
        for i in range(len(xi))
        for j in range(len(eta))
        if q[j] > 0 and p[i][j] > 0
    )
    assert abs(conditional_entropy(xi, eta).value - expect) <= 1e-12


def test_half_half_self_join_collapses():
    # (h,h)∨(h,h) is all zero, so it carries no information
    hh = validate_partition(["h", "h"], M3)
    assert entropy(hh).value == 1.0
    assert entropy(join(hh, hh)).value == 0.0


def test_interior_equal_pair_has_zero_gain():
    xi = validate_partition(fixtures.ZERO_A_PARTITION, M_T4)
    eta = validate_partition(fixtures.ZERO_B_PARTITION, M_T4)
    assert abs(info_gain(xi, eta).value) <= 1e-12


def test_condition_on_unit_is_exact():
    for xi in PARTS5:
        one = unit_partition(M5)
        assert conditional_entropy(xi, one).value == entropy(xi).value
        assert all(r.verdict == HOLDS for r in check_condition_on_unit(xi))


@pytest.mark.parametrize("xi, eta", list(product(PARTS3, PARTS3)))
def test_zero_conditional_entropy_iff_interior_subset(xi, eta):
    if not bayes(xi, eta):
        pytest.skip("Bayes hypothesis not met")
    assert conditional_entropy(xi, eta).is_zero == interior_subset(xi, eta)


def test_zero_entropy_without_interior_subset_outside_bayes():
    # (h,h) given itself: every ⊙ term is 0, yet no block of ξ covers h
    hh = validate_partition(["h", "h"], M3)
    assert not bayes(hh, hh)
    assert conditional_entropy(hh, hh).is_zero and not interior_subset(hh, hh)


def _no_fails(results):
    bad = [r for r in results if r.verdict == FAILS]
    assert not bad, bad[0].to_dict()


@pytest.mark.parametrize("xi, eta", list(product(PARTS3, PARTS3)))
def test_chain_rule_when_bayes_holds(xi, eta):
    _no_fails(check_chain_rule(xi, eta))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(PARTS5), st.sampled_from(PARTS5), st.sampled_from(PARTS5))
def test_three_partition_identities_on_luk5(xi, eta, zeta):
    _no_fails(check_three_partition_chain(xi, eta, zeta))
    _no_fails(check_interior_properties(xi, eta, zeta))
    _no_fails(check_entropy_inequalities(xi, eta, zeta))
    _no_fails(check_info_gain_calculus(xi, eta, zeta))
    _no_fails(check_join_chain([xi, eta], zeta))


@pytest.mark.parametrize("xi, eta, zeta", list(product(PARTS3, repeat=3))[::7])
def test_three_partition_identities_on_luk3(xi, eta, zeta):
    _no_fails(check_three_partition_chain(xi, eta, zeta))
    _no_fails(check_info_gain_calculus(xi, eta, zeta))


def test_product_identity_is_never_asserted():
    xi = PARTS3[0]
    res = [r for r in check_info_gain_calculus(xi, xi, xi) if r.claim_id == "info.independent_product"]
    assert res and all(r.verdict == NOT_ASSERTABLE for r in res)


def test_refinement_monotonicity_is_descriptive():
    res = check_entropy_inequalities(PARTS3[0], PARTS3[2], PARTS3[0])
    r = next(r for r in res if r.claim_id == "entropy.refinement_monotone")
    assert r.verdict == NOT_ASSERTABLE


def test_conditional_information_gain_and_independence():
    xi = validate_partition(["h", "h"], M3)
    one = unit_partition(M3)
    g = conditional_info_gain(xi, one, one)
    assert g.value == 0.0
    assert conditionally_independent(xi, one, one)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PARTS5), st.sampled_from(PARTS5))
def test_information_gain_forms(xi, eta):
    g = info_gain(xi, eta)
    assert g.value == pytest.approx(g.components[0] - g.components[1], abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(PARTS5))
def test_entropy_nonnegative_and_bounded(p):
    h = entropy(p).value
    assert -1e-12 <= h <= math.log2(len(p)) + 1e-12
