"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS`` or ``criterion N: FAIL`` line with
the measured numbers, then asserts.  Run standalone with
``python3 tests/test_acceptance.py`` or through pytest.
"""

import math
import sys
import time
from itertools import combinations, product

from lalg import fixtures
from lalg.closure import (
    UnaryOperator,
    check_sup_fixed_points,
    enumerate_closure_operators,
    is_closure_operator,
    maximal_operators,
    simple_elements,
)
from lalg.core import FiniteLAlgebra, check_axioms, enumerate_l_algebras, is_homomorphism
from lalg.dynamics import (
    check_isomorphism_invariance,
    check_power_rule,
    entropy_rate,
    image_partition,
    validate_system,
)
from lalg.entropy import bayes, conditional_entropy, entropy, info_gain
from lalg.report import FAILS
from lalg.states import (
    enumerate_partitions,
    interior_equal,
    interior_subset,
    join,
    marginals,
    unit_partition,
    validate_partition,
    validate_state,
)
from lalg.verify import CLAIM_IDS, verify_bundle

from oracles import all_l_algebra_tables, closure_operators_naive

TOL = 1e-9


def _report(n, ok, detail, capsys=None):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def _doc(L):
    d = L.to_document()
    return d["arrow"], d["unit"], d["elements"]


def test_criterion_1_axiom_suite(capsys):
    t0 = time.perf_counter()
    valid = [check_axioms(*_doc(L)).passed for L in (fixtures.TABLE1, fixtures.TABLE2, fixtures.TABLE3)]
    t4 = check_axioms(fixtures.TABLE4_ARROW, "1", fixtures.TABLE4_ELEMENTS)
    dt = time.perf_counter() - t0
    ok = all(valid) and not t4.passed and t4.witness(5) == ("a", "b") and dt < 1.0
    _report(1, ok, f"tables 1-3 valid={valid}, table 4 axiom (5) witness={t4.witness(5)}, {dt:.3f}s", capsys)


def test_criterion_2_example_fidelity(capsys):
    hom = is_homomorphism(fixtures.SWAP_AB_MAP, fixtures.TABLE2, fixtures.TABLE2)
    L3 = fixtures.TABLE3
    op = UnaryOperator.from_map(L3, fixtures.SAMPLE_CLOSURE_MAP)
    closed = is_closure_operator(op)
    simple = set(L3.names(simple_elements(op))) if closed else set()
    T4 = FiniteLAlgebra.from_table(fixtures.TABLE4_ELEMENTS, fixtures.TABLE4_ARROW, "1", lenient=True)
    m = validate_state(T4, fixtures.TABLE4_STATE)
    xi = validate_partition(fixtures.ZERO_A_PARTITION, m)
    eta = validate_partition(fixtures.ZERO_B_PARTITION, m)
    eq = interior_equal(xi, eta)
    gain = info_gain(xi, eta).value
    ok = hom and closed and simple == {"1", "b", "c"} and eq and abs(gain) <= 1e-12
    _report(
        2,
        ok,
        f"homomorphism={hom}, closure={closed}, simple={sorted(simple)}, lenient state ok, =°={eq}, I={gain:.3g}",
        capsys,
    )


def test_criterion_3_closure_lattice(capsys):
    t0 = time.perf_counter()
    algebras = [L for n in (1, 2, 3, 4) for L in enumerate_l_algebras(n)]
    top_bad, sup_bad, max_bad, families = [], [], [], 0
    l_a_not_maximal = unmatched = 0
    for L in algebras:
        P = enumerate_closure_operators(L)
        if P.greatest() != UnaryOperator.omega(L):
            top_bad.append(L)
        for k in (1, 2, 3):
            for F in combinations(P.operators, k):
                families += 1
                if not check_sup_fixed_points(F, P).holds:
                    sup_bad.append((L, F))
        if L.n > 1:
            rep = maximal_operators(L)
            l_a_not_maximal += not rep.every_l_a_maximal
            unmatched += bool(rep.unmatched_maximal)
            if not rep.every_l_a_maximal or rep.unmatched_maximal:
                max_bad.append(L)
    dt = time.perf_counter() - t0
    ok = not top_bad and not sup_bad and not max_bad and dt < 60
    detail = (
        f"{len(algebras)} algebras, {families} families, omega-greatest failures={len(top_bad)}, "
        f"sup-fix failures={len(sup_bad)}, maximal<->l_a failures={len(max_bad)} "
        f"(some l_a not maximal: {l_a_not_maximal}, maximal but no l_a: {unmatched}), {dt:.1f}s"
    )
    _report(3, ok, detail, capsys)


def test_criterion_4_entropy_identities(capsys):
    L = fixtures.LUK3
    m = validate_state(L, fixtures.lukasiewicz_state(L))
    parts = list(enumerate_partitions(m, 3))
    bad, gated_in = [], 0
    for xi, eta in product(parts, repeat=2):
        H = lambda p: entropy(p).value  # noqa: E731
        rows, cols = marginals(xi, eta)
        if cols:
            gated_in += 1
            if abs(H(join(xi, eta)) - conditional_entropy(xi, eta).value - H(eta)) > TOL:
                bad.append(("chain", xi, eta))
            # exact: H(ξ|η) = 0 iff every positive grid cell fills its column
            zero = conditional_entropy(xi, eta).is_zero
            if zero != interior_subset(xi, eta):
                bad.append(("interior", xi, eta))
        if cols and bayes(eta, xi):
            if abs(info_gain(xi, eta).value - info_gain(eta, xi).value) > TOL:
                bad.append(("symmetry", xi, eta))
        if cols and rows:
            v = info_gain(xi, eta).value
            if not -TOL <= v <= min(H(xi), H(eta)) + TOL:
                bad.append(("bounds", xi, eta))
            if H(join(xi, eta)) > H(xi) + H(eta) + TOL:
                bad.append(("subadditivity", xi, eta))
    ok = not bad and gated_in > 0
    _report(4, ok, f"{len(parts)} partitions, {gated_in} Bayes pairs, violations={bad[:3]}", capsys)


def test_criterion_5_special_values(capsys):
    L = fixtures.LUK3
    m = validate_state(L, fixtures.lukasiewicz_state(L))
    unit = entropy(unit_partition(m)).value
    errs = {}
    for n in (2, 4, 8):
        chain = fixtures.lukasiewicz_chain(n + 1)
        mn = validate_state(chain, fixtures.lukasiewicz_state(chain))
        errs[n] = abs(entropy(validate_partition([1] * n, mn)).value - math.log2(n))
    ok = unit == 0 and all(e <= 1e-12 for e in errs.values())
    _report(5, ok, f"H((1))={unit}, uniform log2 errors={errs}", capsys)


def _identity(L, values):
    return validate_system(L, UnaryOperator.identity(L), values)


def _systems():
    luk = {k: (fixtures.LUK3 if k == 3 else fixtures.lukasiewicz_chain(k)) for k in (3, 5)}
    out = {f"luk{k}": _identity(L, fixtures.lukasiewicz_state(L)) for k, L in luk.items()}
    out["boolean2"] = _identity(fixtures.BOOLEAN2, {"0": 0, "1": 1})
    b4 = {"0": 0, "p": "1/2", "q": "1/2", "1": 1}
    out["boolean4"] = _identity(fixtures.BOOLEAN4, b4)
    t2 = {"0": 0, "c": 1, "a": 1, "b": 1, "1": 1}
    out["table2"] = _identity(fixtures.TABLE2, t2)
    out["boolean4 swap"] = validate_system(fixtures.BOOLEAN4, {"0": "0", "p": "q", "q": "p", "1": "1"}, b4)
    out["table2 f"] = validate_system(fixtures.TABLE2, fixtures.SWAP_AB_MAP, t2)
    return out


def test_criterion_6_dynamics(capsys):
    systems = _systems()
    bad = []
    for name, S in systems.items():
        identity = S.T == UnaryOperator.identity(S.algebra)
        for xi in enumerate_partitions(S.m, 3):
            est = entropy_rate(S, xi)
            if identity and abs(est.rate) > TOL:
                bad.append(("identity", name, xi.names()))
            if est.subadditivity_violations(TOL):
                bad.append(("subadditivity", name, xi.names()))
            if est.converged and est.conditional_converged and abs(est.rate - est.conditional_rate) > 1e-6:
                bad.append(("estimators", name, xi.names()))
            for n in range(1, 5):
                if entropy(image_partition(S, xi, n)).value != entropy(xi).value:
                    bad.append(("image", name, xi.names()))
    powers = {}
    for name in ("boolean2", "luk3"):
        (r,) = check_power_rule(systems[name], 2)
        powers[name] = abs(r.lhs - r.rhs)
        if powers[name] > 1e-6:
            bad.append(("power", name))
    iso = [r for r in check_isomorphism_invariance(systems["table2 f"], systems["table2 f"], fixtures.SWAP_AB_MAP)]
    iso_delta = [abs(r.lhs - r.rhs) for r in iso if r.claim_id != "dynamics.isomorphism_facts"]
    if any(r.verdict == FAILS for r in iso) or any(d > 1e-6 for d in iso_delta):
        bad.append(("isomorphism",))
    ok = not bad
    _report(6, ok, f"{len(systems)} systems, power deltas={powers}, iso deltas={iso_delta}, violations={bad[:3]}", capsys)


def test_criterion_7_oracles(capsys):
    enum_ok = {n: {tuple(v for r in L.arrow for v in r) for L in enumerate_l_algebras(n)} == all_l_algebra_tables(n) for n in (1, 2, 3)}
    omega_bad = [
        L
        for n in (1, 2, 3, 4)
        for L in enumerate_l_algebras(n)
        if {op.values for op in enumerate_closure_operators(L)} != closure_operators_naive(L.arrow, L.unit)
    ]
    ok = all(enum_ok.values()) and not omega_bad
    _report(7, ok, f"enumeration matches={enum_ok}, Ω mismatches={len(omega_bad)}", capsys)


def test_criterion_8_verify_bundle(capsys):
    t0 = time.perf_counter()
    rep = verify_bundle("paper")
    dt = time.perf_counter() - t0
    fails = [s.claim.claim_id for s in rep.summaries if s.verdict == FAILS]
    covered = {row[0] for row in rep.traceability()}
    missing = [c for c in CLAIM_IDS if c not in covered]
    ok = not fails and not missing and dt < 300
    _report(8, ok, f"fails={fails}, uncovered={missing}, {len(covered)} claims, {dt:.1f}s", capsys)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
