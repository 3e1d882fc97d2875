from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lalg import fixtures
from lalg.core import (
    FiniteLAlgebra,
    are_isomorphic_algebras,
    canonical_form,
    check_axioms,
    check_derived_laws,
    enumerate_l_algebras,
    greatest_lower_bound,
    induced_order,
    is_homomorphism,
    least_element,
    leq,
)
from lalg.errors import AxiomError, CapacityError, StructuralError

from oracles import all_l_algebra_tables, is_l_algebra_table


def doc(L):
    d = L.to_document()
    return d["arrow"], d["unit"], d["elements"]


@pytest.mark.parametrize("L", [fixtures.TABLE1, fixtures.TABLE2, fixtures.TABLE3], ids=["t1", "t2", "t3"])
def test_worked_tables_validate(L):
    assert check_axioms(*doc(L)).passed


def test_table4_breaks_antisymmetry_at_a_b():
    rep = check_axioms(fixtures.TABLE4_ARROW, "1", fixtures.TABLE4_ELEMENTS)
    assert not rep.passed
    assert rep.failed_axioms() == [5]
    assert rep.witness(5) == ("a", "b")
    with pytest.raises(AxiomError) as exc:
        FiniteLAlgebra.from_table(fixtures.TABLE4_ELEMENTS, fixtures.TABLE4_ARROW, "1")
    assert exc.value.report.witness(5) == ("a", "b")


def test_lenient_only_skips_axiom_five():
    bad = [["1", "0"], ["0", "1"]]  # x→x = 1 but 1→0 ≠ 0
    with pytest.raises(AxiomError):
        FiniteLAlgebra.from_table(["0", "1"], bad, "1", lenient=True)


def test_singleton_is_an_l_algebra():
    assert check_axioms([["1"]], "1", ["1"]).passed
    assert fixtures.SINGLETON.n == 1


@pytest.mark.parametrize(
    "arrow, unit, elements",
    [
        ([["1", "1"], ["0"]], "1", ["0", "1"]),  # ragged
        ([["1", "x"], ["0", "1"]], "1", ["0", "1"]),  # unknown cell
        ([["1", "1"], ["0", "1"]], "2", ["0", "1"]),  # unknown unit
        ([["1", "1"], ["0", "1"]], "1", ["1", "1"]),  # duplicate names
        ([], "1", []),
    ],
)
def test_structural_errors(arrow, unit, elements):
    with pytest.raises(StructuralError):
        check_axioms(arrow, unit, elements)


def test_table1_order():
    L = fixtures.TABLE1
    assert leq(L, "a", "b") and leq(L, "c", "b")
    assert not leq(L, "a", "c") and not leq(L, "b", "a")
    assert induced_order(L).is_partial_order()
    # Table 1 has no zero: a and c are both minimal
    assert least_element(L) is None
    assert greatest_lower_bound(L, [L.ix("a"), L.ix("c")]) is None


def test_bounded_tables_have_zero():
    for L in (fixtures.TABLE2, fixtures.TABLE4, fixtures.LUK3, fixtures.BOOLEAN4):
        assert L.zero is not None
        assert all(L.le(L.zero, x) for x in range(L.n))


def test_swap_identity_counterexample_on_table1():
    # a→(c→a) = a→a = 1 but c→(a→c) = c→a = a
    rep = check_derived_laws(fixtures.TABLE1)
    assert rep.swap_identity == ("a", "c")
    assert rep.unit_distribution is None
    assert rep.right_monotone is None


def test_example_homomorphism():
    assert is_homomorphism(fixtures.SWAP_AB_MAP, fixtures.TABLE2, fixtures.TABLE2)
    not_hom = dict(fixtures.SWAP_AB_MAP, c="a")
    assert not is_homomorphism(not_hom, fixtures.TABLE2, fixtures.TABLE2)


def test_partial_map_is_structural():
    with pytest.raises(StructuralError):
        is_homomorphism({"0": "0"}, fixtures.TABLE2, fixtures.TABLE2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_naive_filter(n):
    got = {tuple(v for row in L.arrow for v in row) for L in enumerate_l_algebras(n)}
    assert got == all_l_algebra_tables(n)


def test_enumeration_counts_order_four():
    # frozen from the enumerator; n = 3 is cross-checked above
    assert sum(1 for _ in enumerate_l_algebras(4)) == 204
    classes = list(enumerate_l_algebras(4, up_to_iso=True))
    assert len({canonical_form(L) for L in classes}) == len(classes)


def test_iso_classes_small_orders():
    assert [len(list(enumerate_l_algebras(n, up_to_iso=True))) for n in (1, 2, 3)] == [1, 1, 5]


def test_enumeration_parallel_matches_serial():
    serial = [L.arrow for L in enumerate_l_algebras(3)]
    assert [L.arrow for L in enumerate_l_algebras(3, workers=2)] == serial


def test_enumeration_cap():
    with pytest.raises(CapacityError) as exc:
        list(enumerate_l_algebras(6))
    assert exc.value.cap_name == "order"


def test_relabel_isomorphic():
    L = fixtures.TABLE3
    perm = [4, 0, 1, 2, 3]
    assert are_isomorphic_algebras(L, L.relabel(perm))


ORDER3 = list(enumerate_l_algebras(3))
ORDER4 = list(enumerate_l_algebras(4))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDER4))
def test_induced_order_is_partial_order_with_top(L):
    o = induced_order(L)
    assert o.is_partial_order()
    assert all((x, L.unit) in o for x in range(L.n))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDER4), st.permutations(range(3)))
def test_canonical_form_invariant_under_unit_fixing_relabel(L, p):
    perm = list(p) + [3]
    assert canonical_form(L.relabel(perm)) == canonical_form(L)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9))
def test_axiom_checker_agrees_with_oracle(flat):
    T = [flat[0:3], flat[3:6], flat[6:9]]
    assert check_axioms(T, 2).passed == is_l_algebra_table(T, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDER3 + ORDER4))
def test_unit_distribution_and_right_monotonicity_hold(L):
    rep = check_derived_laws(L)
    assert rep.unit_distribution is None
    assert rep.right_monotone is None


def test_identity_is_homomorphism_everywhere():
    for L in ORDER3:
        assert is_homomorphism({x: x for x in L.elements}, L, L)


def test_automorphisms_of_boolean4():
    B = fixtures.BOOLEAN4
    autos = [
        p for p in permutations(B.elements) if is_homomorphism(dict(zip(B.elements, p)), B, B)
    ]
    assert len(autos) == 2
