import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lalg import fixtures
from lalg.closure import UnaryOperator
from lalg.dynamics import (
    are_isomorphic,
    check_generator_theorem,
    check_identity_zero,
    check_image_lemma,
    check_isomorphism_invariance,
    check_power_rule,
    check_rate_properties,
    check_rate_sequence,
    distinct_partitions,
    entropy_rate,
    image_partition,
    is_generator,
    iterated_join,
    system_entropy,
    validate_system,
)
from lalg.entropy import entropy
from lalg.errors import CapacityError, ContractError, LSystemError, StructuralError
from lalg.report import FAILS, HOLDS, NOT_MET
from lalg.states import enumerate_partitions, validate_partition, validate_state


def luk_system(k):
    L = fixtures.lukasiewicz_chain(k) if k != 3 else fixtures.LUK3
    m = validate_state(L, fixtures.lukasiewicz_state(L))
    return validate_system(L, UnaryOperator.identity(L), m)


B4 = fixtures.BOOLEAN4
M_B4 = validate_state(B4, {"0": 0, "p": "1/2", "q": "1/2", "1": 1})
SWAP = validate_system(B4, {"0": "0", "p": "q", "q": "p", "1": "1"}, M_B4)
T2_STATE = {"0": 0, "c": 1, "a": 1, "b": 1, "1": 1}
T2_F = validate_system(fixtures.TABLE2, fixtures.SWAP_AB_MAP, T2_STATE)
T2_ID = validate_system(fixtures.TABLE2, UnaryOperator.identity(fixtures.TABLE2), T2_STATE)
B2 = validate_system(fixtures.BOOLEAN2, UnaryOperator.identity(fixtures.BOOLEAN2), {"0": 0, "1": 1})


def _cycle_system():
    B8 = fixtures.boolean_algebra(["x", "y", "z"])
    perm = {"x": "y", "y": "z", "z": "x"}

    def image(name):
        if name in ("0", "1"):
            return name
        return "".join(sorted(perm[c] for c in name))

    # rename so that joined atom names stay sorted
    T = {e: next(f for f in B8.elements if sorted(f) == sorted(image(e))) for e in B8.elements}
    m = {e: (0 if e == "0" else 1 if e == "1" else f"{len(e)}/3") for e in B8.elements}
    return validate_system(B8, T, m)


CYCLE = _cycle_system()
SYSTEMS = [luk_system(3), luk_system(5), B2, SWAP, T2_F, T2_ID, CYCLE]


def _no_fails(results):
    bad = [r for r in results if r.verdict == FAILS]
    assert not bad, bad[0].to_dict()


def test_system_validation_witnesses():
    with pytest.raises(LSystemError) as exc:
        validate_system(B4, {"0": "0", "p": "p", "q": "p", "1": "1"}, M_B4)
    assert "i" in [c for c, _ in exc.value.violations]
    uneven = validate_state(B4, {"0": 0, "p": "1/3", "q": "2/3", "1": 1})
    with pytest.raises(LSystemError) as exc:
        validate_system(B4, {"0": "0", "p": "q", "q": "p", "1": "1"}, uneven)
    assert ("iii", ("p",)) in exc.value.violations


def test_mismatched_state_is_structural():
    with pytest.raises(StructuralError):
        validate_system(fixtures.LUK3, UnaryOperator.identity(fixtures.LUK3), M_B4)


def test_identity_rate_sequence_on_luk3():
    sys = luk_system(3)
    hh = validate_partition(["h", "h"], sys.m)
    est = entropy_rate(sys, hh)
    # (h,h)∨(h,h) has only measure-zero blocks, so a_n collapses after n = 1
    assert est.values == (1.0,) + (0.0,) * 7
    assert est.rate == 0.0 and est.converged and est.conditional_converged
    assert iterated_join(sys, hh, 3).blocks == ()


@pytest.mark.parametrize("sys", SYSTEMS, ids=lambda s: "/".join(s.algebra.elements))
def test_identity_entropy_is_zero(sys):
    _no_fails(check_identity_zero(sys.m))
    assert all(r.verdict == HOLDS for r in check_identity_zero(sys.m))


@pytest.mark.parametrize("sys", SYSTEMS, ids=lambda s: "/".join(s.algebra.elements))
def test_rate_sequence_claims(sys):
    for xi in distinct_partitions(sys.m, 3):
        est = entropy_rate(sys, xi)
        assert not est.subadditivity_violations(1e-9)
        _no_fails(check_rate_sequence(sys, xi))
        if est.converged and est.conditional_converged:
            assert abs(est.rate - est.conditional_rate) <= 1e-6


@pytest.mark.parametrize("sys", SYSTEMS, ids=lambda s: "/".join(s.algebra.elements))
def test_images_keep_entropy(sys):
    for xi in distinct_partitions(sys.m, 3):
        for n in range(4):
            img = image_partition(sys, xi, n)
            assert entropy(img).value == entropy(xi).value


@pytest.mark.parametrize("sys", SYSTEMS, ids=lambda s: "/".join(s.algebra.elements))
def test_rate_properties_and_image_lemma(sys):
    parts = distinct_partitions(sys.m, 2)
    for xi in parts:
        for eta in parts:
            _no_fails(check_image_lemma(sys, xi, eta))
            _no_fails(check_rate_properties(sys, xi, eta))


def test_image_invariance_needs_invertible_map():
    # x ↦ 1 if p ≤ x else 0 is an endomorphism of B4 preserving the point state at p
    m = validate_state(B4, {"0": 0, "p": 1, "q": 0, "1": 1})
    proj = validate_system(B4, {"0": "0", "p": "1", "q": "0", "1": "1"}, m)
    assert not proj.T.is_bijective
    xi = validate_partition(["p", "q"], m)
    res = check_rate_properties(proj, xi, xi)
    r = next(r for r in res if r.claim_id == "dynamics.rate_image_invariant")
    assert r.verdict == NOT_MET
    with pytest.raises(ContractError):
        check_power_rule(proj, -1)


@pytest.mark.parametrize("sys", [B2, luk_system(3)], ids=["boolean2", "luk3"])
def test_power_rule_at_matched_truncation(sys):
    res = check_power_rule(sys, 2)
    assert [r.verdict for r in res] == [HOLDS]
    assert abs(res[0].lhs - res[0].rhs) <= 1e-6


def test_inverse_power_rule():
    assert [r.verdict for r in check_power_rule(SWAP, -1)] == [HOLDS]
    assert [r.claim_id for r in check_power_rule(SWAP, -2)] == ["dynamics.power_rule_inverse"]


def test_isomorphism_example_pair():
    rep = are_isomorphic(T2_ID, T2_ID, fixtures.SWAP_AB_MAP)
    assert rep.holds
    assert all(rep.derived.values())
    res = check_isomorphism_invariance(T2_F, T2_F, fixtures.SWAP_AB_MAP)
    assert [r.verdict for r in res] == [HOLDS, HOLDS]


def test_non_isomorphism_is_reported():
    phi = {"0": "0", "c": "a", "a": "c", "b": "b", "1": "1"}
    rep = are_isomorphic(T2_ID, T2_ID, phi)
    assert not rep.conditions["arrow"]
    assert {r.verdict for r in check_isomorphism_invariance(T2_ID, T2_ID, phi)} == {NOT_MET}


def test_generator_check():
    sys = luk_system(3)
    for xi in distinct_partitions(sys.m, 3):
        _no_fails(check_generator_theorem(sys, xi, 1))
    one = validate_partition(["1"], sys.m)
    assert not is_generator(sys, one, 1)


def test_system_entropy_reports_caps():
    se = system_entropy(SWAP, 3, 4)
    assert (se.max_blocks, se.N) == (3, 4)
    assert se.partitions == len(distinct_partitions(SWAP.m, 3))
    with pytest.raises(CapacityError) as exc:
        system_entropy(CYCLE, 6, 2)
    assert exc.value.cap_name == "partition_space"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SYSTEMS), st.integers(1, 8), st.data())
def test_subadditivity_certificate(sys, N, data):
    xi = data.draw(st.sampled_from(list(enumerate_partitions(sys.m, 2))))
    a = entropy_rate(sys, xi, N).values
    for n in range(1, N):
        for p in range(1, N - n + 1):
            assert a[n + p - 1] <= a[n - 1] + a[p - 1] + 1e-9
