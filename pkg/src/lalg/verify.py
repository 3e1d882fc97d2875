"""Claim registry and the verification harness behind ``lalg verify``.

Every registered claim runs on every applicable scenario of a bundle.  Per-scenario
:class:`~lalg.report.ClaimResult` records are folded into one verdict per claim:
any failure makes the claim ``fails``; otherwise a single asserted success makes it
``holds``; claims that are only evaluated descriptively are ``not-assertable``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable

from . import fixtures
from .closure import (
    UnaryOperator,
    check_inf_simple_characterization,
    check_sup_fixed_points,
    closure_failure,
    enumerate_closure_operators,
    inf_operators,
    is_closure_operator,
    leq_operator,
    maximal_operators,
    simple_elements,
)
from .core import (
    FiniteLAlgebra,
    check_axioms,
    check_derived_laws,
    enumerate_l_algebras,
    induced_order,
    is_homomorphism,
)
from .dynamics import (
    LSystem,
    check_generator_theorem,
    check_identity_zero,
    check_image_lemma,
    check_isomorphism_invariance,
    check_power_rule,
    check_rate_properties,
    check_rate_sequence,
    distinct_partitions,
    validate_system,
)
from .entropy import (
    check_chain_rule,
    check_condition_on_unit,
    check_entropy_inequalities,
    check_info_gain_calculus,
    check_interior_properties,
    check_join_chain,
    check_three_partition_chain,
    entropy,
    info_gain,
)
from .errors import InfNotClosure, InfUndefined, StateError
from .report import FAILS, HOLDS, NOT_ASSERTABLE, NOT_MET, ClaimResult, aggregate, approx_eq, gated
from .states import (
    Partition,
    State,
    bayes_report,
    check_common_refinement,
    enumerate_partitions,
    interior_equal,
    validate_partition,
    validate_state,
)

REFINEMENT_NOTE = "refinement read as: blocks of the finer partition ⊕-group into each coarser block"


# --- scenarios ---------------------------------------------------------------------


@dataclass
class Bundle:
    name: str
    algebras: dict = field(default_factory=dict)  # label -> FiniteLAlgebra
    states: dict = field(default_factory=dict)  # label -> State
    max_blocks: int = 3
    systems: dict = field(default_factory=dict)  # label -> LSystem
    iso_pairs: list = field(default_factory=list)  # (label, sys1, sys2, phi)
    uniform: list = field(default_factory=list)  # (label, Partition, n)
    homomorphisms: list = field(default_factory=list)  # (label, map, src, dst)
    operators: list = field(default_factory=list)  # (label, UnaryOperator, expected simple names)
    example_states: list = field(default_factory=list)  # (label, algebra, raw valuation)
    example_pairs: list = field(default_factory=list)  # (label, ξ, η)
    power_ks: tuple = (2,)
    N: int = 8
    dyn_max_blocks: int = 3

    def partitions(self, label) -> list:
        m = self.states[label]
        return list(enumerate_partitions(m, self.max_blocks))


def _uniform(k: int) -> tuple:
    L = fixtures.lukasiewicz_chain(k + 1)
    m = validate_state(L, fixtures.lukasiewicz_state(L))
    return f"luk{k + 1} uniform", validate_partition([1] * k, m), k


def worked_examples_bundle() -> Bundle:
    b = Bundle("paper")
    b.algebras = {
        "table1": fixtures.TABLE1,
        "table2": fixtures.TABLE2,
        "table3": fixtures.TABLE3,
        "table4 (lenient)": fixtures.TABLE4,
        "luk3": fixtures.LUK3,
    }
    t2_state = validate_state(fixtures.TABLE2, {"0": 0, "c": 1, "a": 1, "b": 1, "1": 1})
    t4_state = validate_state(fixtures.TABLE4, fixtures.TABLE4_STATE)
    luk = validate_state(fixtures.LUK3, fixtures.lukasiewicz_state(fixtures.LUK3))
    b.states = {"table2": t2_state, "table4 (lenient)": t4_state, "luk3": luk}
    ident = lambda L: UnaryOperator.identity(L)  # noqa: E731
    b.systems = {
        "table2 T=f": validate_system(fixtures.TABLE2, fixtures.SWAP_AB_MAP, t2_state),
        "table2 T=id": validate_system(fixtures.TABLE2, ident(fixtures.TABLE2), t2_state),
        "table4 (lenient) T=id": validate_system(fixtures.TABLE4, ident(fixtures.TABLE4), t4_state),
        "luk3 T=id": validate_system(fixtures.LUK3, ident(fixtures.LUK3), luk),
    }
    b.iso_pairs = [
        ("table2 T=f via f", b.systems["table2 T=f"], b.systems["table2 T=f"], fixtures.SWAP_AB_MAP),
        ("table2 T=id via f", b.systems["table2 T=id"], b.systems["table2 T=id"], fixtures.SWAP_AB_MAP),
    ]
    b.uniform = [("luk3 (h,h)", validate_partition(["h", "h"], luk), 2)]
    b.homomorphisms = [("table2 f", fixtures.SWAP_AB_MAP, fixtures.TABLE2, fixtures.TABLE2)]
    b.operators = [
        ("table3 operator", UnaryOperator.from_map(fixtures.TABLE3, fixtures.SAMPLE_CLOSURE_MAP), {"1", "b", "c"})
    ]
    b.example_states = [("table4 (lenient)", fixtures.TABLE4, fixtures.TABLE4_STATE)]
    b.example_pairs = [
        (
            "table4 (lenient)",
            validate_partition(fixtures.ZERO_A_PARTITION, t4_state),
            validate_partition(fixtures.ZERO_B_PARTITION, t4_state),
        )
    ]
    return b


def extended_bundle() -> Bundle:
    """The worked-example bundle plus Boolean and longer Łukasiewicz fixtures and all algebras of order ≤ 4."""
    b = worked_examples_bundle()
    b.name = "extended"
    for n in (1, 2, 3, 4):
        for i, L in enumerate(enumerate_l_algebras(n, up_to_iso=True)):
            b.algebras[f"order{n}#{i}"] = L
    B2, B4, L5 = fixtures.BOOLEAN2, fixtures.BOOLEAN4, fixtures.LUK5
    b.algebras.update({"boolean2": B2, "boolean4": B4, "luk5": L5})
    b.states["boolean2"] = validate_state(B2, {"0": 0, "1": 1})
    b.states["boolean4"] = validate_state(B4, {"0": 0, "p": "1/2", "q": "1/2", "1": 1})
    b.states["luk5"] = validate_state(L5, fixtures.lukasiewicz_state(L5))
    b.systems["boolean2 T=id"] = validate_system(B2, UnaryOperator.identity(B2), b.states["boolean2"])
    b.systems["boolean4 T=swap"] = validate_system(B4, {"0": "0", "p": "q", "q": "p", "1": "1"}, b.states["boolean4"])
    b.systems["luk5 T=id"] = validate_system(L5, UnaryOperator.identity(L5), b.states["luk5"])
    b.uniform += [_uniform(4), _uniform(8)]
    return b


def empty_bundle() -> Bundle:
    return Bundle("empty")


BUNDLES = {"paper": worked_examples_bundle, "extended": extended_bundle, "empty": empty_bundle}


# --- registry ----------------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    module: str
    runner: Callable[[Bundle], Iterable[ClaimResult]]
    note: str = ""


def _tag(results, scenario):
    for r in results:
        yield ClaimResult(r.claim_id, r.verdict, r.hypotheses, r.lhs, r.rhs, r.delta, r.detail, scenario)


def _axiom_report(L: FiniteLAlgebra):
    d = L.to_document()
    return check_axioms(d["arrow"], d["unit"], d["elements"])


def _algebras(b: Bundle):
    for label, L in b.algebras.items():
        yield label, L, _axiom_report(L).passed


def _law(claim_id, field_name):
    def run(b):
        for label, L, ok in _algebras(b):
            rep = check_derived_laws(L)
            w = getattr(rep, field_name)
            yield ClaimResult(
                claim_id,
                (HOLDS if w is None else FAILS) if ok else NOT_MET,
                {"L-algebra": ok},
                detail="" if w is None else f"counterexample {w}",
                scenario=label,
            )

    return run


def _run_tables_validate(b):
    for label in ("table1", "table2", "table3"):
        if label in b.algebras:
            L = b.algebras[label]
            rep = _axiom_report(L)
            yield ClaimResult("algebra.tables_validate", HOLDS if rep.passed else FAILS, detail=rep.describe(), scenario=label)


def _run_table4(b):
    for label, L in b.algebras.items():
        if L.lenient:
            rep = _axiom_report(L)
            yield ClaimResult(
                "algebra.table4_discrepancy",
                NOT_ASSERTABLE,
                {"axioms": rep.passed},
                detail=rep.describe(),
                scenario=label,
            )


def _run_partial_order(b):
    for label, L, ok in _algebras(b):
        o = induced_order(L)
        holds = o.is_partial_order() and all(L.le(x, L.unit) for x in range(L.n))
        yield ClaimResult("algebra.partial_order", (HOLDS if holds else FAILS) if ok else NOT_MET, {"L-algebra": ok}, scenario=label)


def _run_equivalence(b):
    for label, L, ok in _algebras(b):
        eq = check_derived_laws(L).equivalence
        same = len(set(eq.values())) <= 1
        yield ClaimResult(
            "algebra.equivalent_conditions",
            (HOLDS if same else FAILS) if ok else NOT_MET,
            {"L-algebra": ok},
            lhs=eq,
            scenario=label,
        )


def _run_homomorphism(b):
    for label, f, src, dst in b.homomorphisms:
        yield ClaimResult("algebra.example_homomorphism", HOLDS if is_homomorphism(f, src, dst) else FAILS, scenario=label)


def _closure_algebras(b):
    for label, L, ok in _algebras(b):
        if ok and L.n <= 5:
            yield label, L, enumerate_closure_operators(L)


def _run_example_operator(b):
    for label, op, expected in b.operators:
        ok = is_closure_operator(op) and {op.algebra.name(x) for x in simple_elements(op)} == expected
        yield ClaimResult(
            "closure.example_operator",
            HOLDS if ok else FAILS,
            lhs=sorted(op.algebra.name(x) for x in simple_elements(op)),
            rhs=sorted(expected),
            scenario=label,
        )


def _run_inf_simple(b):
    for label, L, P in _closure_algebras(b):
        reports = [check_inf_simple_characterization(l) for l in P]
        defined = all(not r.undefined for r in reports)
        ok = all(r.holds for r in reports)
        yield ClaimResult("closure.inf_simple", (HOLDS if ok else FAILS) if defined else NOT_MET, {"infima exist": defined}, scenario=label)


def _families(P, k=3):
    for size in range(1, k + 1):
        yield from combinations(P.operators, size)


def _run_inf_glb(b):
    for label, L, P in _closure_algebras(b):
        met = fails = 0
        detail = ""
        for F in _families(P, 2):
            try:
                g = inf_operators(F)
            except InfUndefined:
                continue
            except InfNotClosure as exc:
                fails += 1
                detail = detail or str(exc)
                continue
            met += 1
            lower = [P.operators[j] for j in P.lower_bounds(F)]
            if not (all(leq_operator(g, f) for f in F) and all(leq_operator(l, g) for l in lower)):
                fails += 1
                detail = detail or f"family {[f.values for f in F]}"
        verdict = FAILS if fails else (HOLDS if met else NOT_MET)
        yield ClaimResult("closure.inf_is_glb", verdict, {"pointwise infima exist": met > 0}, detail=detail, scenario=label)


def _run_complete_lattice(b):
    for label, L, P in _closure_algebras(b):
        order = P.order
        n = len(P)
        top_ok = P.greatest() is not None and P.greatest().values == UnaryOperator.omega(L).values
        pairs_ok = True
        for i, j in product(range(n), repeat=2):
            ups = [k for k in range(n) if order[i][k] and order[j][k]]
            lows = [k for k in range(n) if order[k][i] and order[k][j]]
            if not any(all(order[u][v] for v in ups) for u in ups) or not any(
                all(order[v][w] for v in lows) for w in lows
            ):
                pairs_ok = False
                break
        yield ClaimResult("closure.complete_lattice", HOLDS if top_ok and pairs_ok else FAILS, lhs=n, scenario=label)


def _run_sup_fix(b):
    for label, L, P in _closure_algebras(b):
        bad = None
        for F in _families(P, 3):
            rep = check_sup_fixed_points(F, P)
            if not rep.holds:
                bad = rep
                break
        yield ClaimResult(
            "closure.sup_fixed_points",
            HOLDS if bad is None else FAILS,
            detail="" if bad is None else f"witnesses {bad.witnesses} {bad.error or ''}",
            scenario=label,
        )


def _run_l_a_maximal(b):
    for label, L, P in _closure_algebras(b):
        if L.n < 2:
            continue
        rep = maximal_operators(L, P)
        bad = {L.name(a): ("not a closure operator" if not rep.l_a_closure[a] else "not maximal") for a, ok in rep.l_a_maximal.items() if not ok}
        detail = ""
        if bad:
            a = next(iter(bad))
            op = rep.l_a[L.ix(a)]
            why = closure_failure(op)
            detail = f"l_{a}: {bad[a]}" + (f" ({why[0]} at {L.names(why[1])})" if why else "")
        yield ClaimResult("closure.l_a_maximal", FAILS if bad else HOLDS, lhs=sorted(bad), detail=detail, scenario=label)


def _run_maximal_is_l_a(b):
    for label, L, P in _closure_algebras(b):
        if L.n < 2:
            continue
        rep = maximal_operators(L, P)
        yield ClaimResult(
            "closure.maximal_is_l_a",
            HOLDS if rep.every_maximal_is_l_a else FAILS,
            lhs=[op.as_names() for op in rep.unmatched_maximal],
            scenario=label,
        )


def _state_items(b):
    return list(b.states.items())


def _distinct(p: Partition) -> bool:
    return len(set(p.blocks)) == len(p.blocks)


def _run_example_state(b):
    for label, L, raw in b.example_states:
        try:
            validate_state(L, raw)
            yield ClaimResult("partition.example_state", HOLDS, scenario=label)
        except StateError as exc:
            yield ClaimResult("partition.example_state", FAILS, detail=str(exc), scenario=label)


def _run_example_interior(b):
    for label, xi, eta in b.example_pairs:
        yield ClaimResult("partition.example_interior_equal", HOLDS if interior_equal(xi, eta) else FAILS, scenario=label)


def _run_example_info(b):
    for label, xi, eta in b.example_pairs:
        yield from _tag([gated("info.example_zero", {}, lambda: approx_eq(info_gain(xi, eta).value, 0.0, 1e-12))], label)


def _axioms_ok(L):
    return _axiom_report(L).passed


def _run_common_refinement(b):
    for label, m in _state_items(b):
        ok_alg = _axioms_ok(m.algebra)
        parts = b.partitions(label)
        for xi, eta in product(parts, parts):
            rep = check_common_refinement(xi, eta)
            hyps = {"L-algebra": ok_alg, "distinct blocks": _distinct(xi) and _distinct(eta)}
            r = gated("partition.common_refinement", hyps, lambda: (rep.holds, rep.valid, (rep.refines_xi, rep.refines_eta), None),
                      detail=rep.error or "")
            yield from _tag([r], f"{label} {xi.names()} ∨ {eta.names()}")


def _run_bayes_decomposition(b):
    for label, m in _state_items(b):
        L = m.algebra
        ok_alg = _axioms_ok(L)
        for xi in b.partitions(label):
            for y in range(L.n):
                rep = bayes_report(m, xi, y)
                hyps = {"L-algebra": ok_alg, "bayes (definition)": rep.definition, "distinct blocks": _distinct(xi)}
                r = gated("partition.bayes_decomposition", hyps, lambda: (rep.decomposes, rep.total, rep.target, None))
                yield from _tag([r], f"{label} {xi.names()} y={L.name(y)}")


def _run_special_values(b):
    for label, m in _state_items(b):
        one = validate_partition([m.algebra.unit], m)
        h = entropy(one).value
        yield ClaimResult("entropy.unit_partition_zero", HOLDS if h == 0 else FAILS, lhs=h, rhs=0.0, scenario=label)
    import math

    for label, p, n in b.uniform:
        yield from _tag([gated("entropy.uniform_max", {}, lambda: approx_eq(entropy(p).value, math.log2(n), 1e-12))], label)


def _pairs(b):
    for label, m in _state_items(b):
        parts = b.partitions(label)
        for xi, eta in product(parts, parts):
            yield label, parts, xi, eta


def _triples(b):
    for label, m in _state_items(b):
        parts = b.partitions(label)
        for xi, eta, zeta in product(parts, parts, parts):
            yield label, xi, eta, zeta


def _per_pair(fn):
    def run(b):
        for label, _, xi, eta in _pairs(b):
            yield from _tag(fn(xi, eta), f"{label} ξ={xi.names()} η={eta.names()}")

    return run


def _per_triple(fn, claim_id=None):
    def run(b):
        for label, xi, eta, zeta in _triples(b):
            res = fn(xi, eta, zeta)
            if claim_id is not None:
                res = [r for r in res if r.claim_id == claim_id]
            yield from _tag(res, f"{label} ξ={xi.names()} η={eta.names()} ζ={zeta.names()}")

    return run


def _memo_triples(fn):
    """Run a multi-claim checker once per triple and serve each claim from the cache."""
    cache = {}

    def get(b):
        key = id(b)
        if key not in cache:
            out = {}
            for label, xi, eta, zeta in _triples(b):
                tag = f"{label} ξ={xi.names()} η={eta.names()} ζ={zeta.names()}"
                for r in _tag(fn(xi, eta, zeta), tag):
                    out.setdefault(r.claim_id, []).append(r)
            cache.clear()
            cache[key] = out
        return cache[key]

    def for_claim(claim_id):
        return lambda b: get(b).get(claim_id, [])

    return for_claim


_interior = _memo_triples(check_interior_properties)
_inequalities = _memo_triples(check_entropy_inequalities)
_info = _memo_triples(check_info_gain_calculus)


def _run_condition_on_unit(b):
    for label, m in _state_items(b):
        for xi in b.partitions(label):
            yield from _tag(check_condition_on_unit(xi), f"{label} ξ={xi.names()}")


def _run_join_chain(cid):
    def run(b):
        for label, xi, eta, zeta in _triples(b):
            res = [r for r in check_join_chain([xi, eta], zeta) if r.claim_id == cid]
            yield from _tag(res, f"{label} ξ1={xi.names()} ξ2={eta.names()} η={zeta.names()}")

    return run


def _sys_items(b):
    return list(b.systems.items())


def _sys_parts(b, sys):
    return distinct_partitions(sys.m, b.dyn_max_blocks)


def _memo_systems(fn):
    cache = {}

    def get(b):
        if id(b) not in cache:
            out = {}
            for label, sys in _sys_items(b):
                parts = _sys_parts(b, sys)
                for r in fn(b, label, sys, parts):
                    out.setdefault(r.claim_id, []).append(r)
            cache.clear()
            cache[id(b)] = out
        return cache[id(b)]

    return lambda cid: (lambda b: get(b).get(cid, []))


def _dyn_pairs(b, label, sys, parts):
    for xi, eta in product(parts, parts):
        tag = f"{label} ξ={xi.names()} η={eta.names()}"
        yield from _tag(check_image_lemma(sys, xi, eta, b.N), tag)
        yield from _tag(check_rate_properties(sys, xi, eta, b.N), tag)
    for xi in parts:
        yield from _tag(check_rate_sequence(sys, xi, b.N), f"{label} ξ={xi.names()}")
        yield from _tag(check_generator_theorem(sys, xi, 1, b.N, b.dyn_max_blocks), f"{label} ξ={xi.names()}")


_dyn = _memo_systems(_dyn_pairs)


def _run_identity_zero(b):
    for label, m in _state_items(b):
        yield from _tag(check_identity_zero(m, b.dyn_max_blocks, b.N), label)


def _run_power(cid):
    def run(b):
        for label, sys in _sys_items(b):
            for k in b.power_ks:
                yield from _tag([r for r in check_power_rule(sys, k, b.N, b.dyn_max_blocks) if r.claim_id == cid], f"{label} k={k}")
                if sys.T.is_bijective:
                    yield from _tag(
                        [r for r in check_power_rule(sys, -k, b.N, b.dyn_max_blocks) if r.claim_id == cid],
                        f"{label} k={-k}",
                    )

    return run


def _run_iso(cid):
    def run(b):
        for label, s1, s2, phi in b.iso_pairs:
            yield from _tag([r for r in check_isomorphism_invariance(s1, s2, phi, b.N, b.dyn_max_blocks) if r.claim_id == cid], label)

    return run


def _C(cid, statement, module, runner, note=""):
    return Claim(cid, statement, module, runner, note)


REGISTRY: tuple = (
    _C("algebra.tables_validate", "the three worked tables satisfy axioms (1)-(5)", "core", _run_tables_validate),
    _C("algebra.table4_discrepancy", "the fourth table is offered as an L-algebra but breaks axiom (5)", "core", _run_table4),
    _C("algebra.partial_order", "x ≤ y iff x→y = 1 is a partial order with top 1", "core", _run_partial_order),
    _C("algebra.swap_identity", "x→(y→x) = y→(x→y)", "core", _law("algebra.swap_identity", "swap_identity")),
    _C("algebra.unit_distribution", "(x→y)→1 = (x→1)→(y→1) and 1→(x→y) = (1→x)→(1→y)", "core", _law("algebra.unit_distribution", "unit_distribution")),
    _C("algebra.right_monotone", "x ≤ y implies z→x ≤ z→y", "core", _law("algebra.right_monotone", "right_monotone")),
    _C("algebra.equivalent_conditions", "x ≤ y→x, left antitonicity and the nested inequality are equivalent", "core", _run_equivalence),
    _C("algebra.example_homomorphism", "the a/b swap on the second table is a homomorphism", "core", _run_homomorphism),
    _C("closure.example_operator", "the sample operator on the third table is a closure operator with simple elements {1,b,c}", "closure", _run_example_operator),
    _C("closure.inf_simple", "l(a) = inf{x simple : a ≤ x}", "closure", _run_inf_simple),
    _C("closure.inf_is_glb", "the pointwise infimum of closure operators is their greatest lower bound in Ω(L)", "closure", _run_inf_glb),
    _C("closure.complete_lattice", "Ω(L) is a complete lattice with top ω_L", "closure", _run_complete_lattice),
    _C("closure.sup_fixed_points", "Fix(sup F) = ∩ Fix(l), l ∈ F", "closure", _run_sup_fix),
    _C("closure.l_a_maximal", "every l_a (a ≠ 1) is a maximal element of Ω(L)", "closure", _run_l_a_maximal),
    _C("closure.maximal_is_l_a", "every maximal element of Ω(L) is some l_a", "closure", _run_maximal_is_l_a),
    _C("partition.example_state", "the sample 0/1 valuation on the fourth table is a state", "states", _run_example_state),
    _C("partition.example_interior_equal", "the sample partitions (0,a) and (0,b) satisfy ξ =° η", "states", _run_example_interior),
    _C("partition.common_refinement", "ξ∨η is a partition refining ξ and η", "states", _run_common_refinement, REFINEMENT_NOTE),
    _C("partition.bayes_decomposition", "Bayes property implies Σ m(x_i⊙y) = m(y)", "states", _run_bayes_decomposition),
    _C("entropy.unit_partition_zero", "H((1)) = 0", "entropy", _run_special_values),
    _C("entropy.uniform_max", "uniform n-block partition has H = log n", "entropy", lambda b: [r for r in _run_special_values(b) if r.claim_id == "entropy.uniform_max"]),
    _C("entropy.chain_rule", "H(ξ∨η) = H(ξ|η) + H(η)", "entropy", _per_pair(check_chain_rule)),
    _C("entropy.interior_iff_zero", "ξ ⊆° η iff H(ξ|η) = 0", "entropy", _interior("entropy.interior_iff_zero")),
    _C("entropy.interior_equal_entropy", "ξ =° η implies H(ξ) = H(η)", "entropy", _interior("entropy.interior_equal_entropy")),
    _C("entropy.interior_equal_conditional", "ξ =° η implies H(ξ|ζ) = H(η|ζ)", "entropy", _interior("entropy.interior_equal_conditional")),
    _C("entropy.interior_equal_condition", "η =° ζ implies H(ξ|ζ) = H(ξ|η)", "entropy", _interior("entropy.interior_equal_condition")),
    _C("entropy.condition_on_unit", "H(ξ|(1)) = H(ξ)", "entropy", _run_condition_on_unit),
    _C("entropy.three_partition_chain", "H(ξ∨η|ζ) = H(ξ|ζ) + H(η|ξ∨ζ)", "entropy", _per_triple(check_three_partition_chain)),
    _C("entropy.join_chain", "H(ξ1∨…∨ξn) = Σ H(ξi | ⋁_{k<i} ξk)", "entropy", _run_join_chain("entropy.join_chain")),
    _C("entropy.join_chain_conditional", "H(⋁ξi | η) = Σ H(ξi | (⋁_{k<i} ξk)∨η)", "entropy", _run_join_chain("entropy.join_chain_conditional")),
    _C("entropy.refinement_monotone", "a refinement does not lower entropy", "entropy", _inequalities("entropy.refinement_monotone"), REFINEMENT_NOTE),
    _C("entropy.conditioning_reduces", "H(ξ|η) ≤ H(ξ)", "entropy", _inequalities("entropy.conditioning_reduces")),
    _C("entropy.refinement_conditional_monotone", "η refines ξ implies H(ξ|ζ) ≤ H(η|ζ)", "entropy", _inequalities("entropy.refinement_conditional_monotone"), REFINEMENT_NOTE),
    _C("entropy.subadditivity", "H(ξ∨η) ≤ H(ξ) + H(η)", "entropy", _inequalities("entropy.subadditivity")),
    _C("entropy.independence_equivalence", "H(ξ|η) = H(ξ) iff H(ξ∨η) = H(ξ)+H(η) iff ξ, η independent", "entropy", _inequalities("entropy.independence_equivalence")),
    _C("dynamics.image_partition", "Tⁿξ is a partition", "dynamics", _dyn("dynamics.image_partition")),
    _C("dynamics.image_entropy", "H(Tⁿξ) = H(ξ)", "dynamics", _dyn("dynamics.image_entropy")),
    _C("dynamics.image_conditional", "H(Tⁿξ|Tⁿη) = H(ξ|η)", "dynamics", _dyn("dynamics.image_conditional")),
    _C("dynamics.join_decomposition", "H(⋁_{i<n} Tⁱξ) = H(ξ) + Σ_{j<n} H(ξ | ⋁_{1≤i≤j} Tⁱξ)", "dynamics", _dyn("dynamics.join_decomposition")),
    _C("dynamics.subadditive_limit", "a_{n+p} ≤ a_n + a_p", "dynamics", _dyn("dynamics.subadditive_limit")),
    _C("dynamics.conditional_monotone", "H(ξ | ⋁_{1≤i≤n} Tⁱξ) is non-increasing in n", "dynamics", _dyn("dynamics.conditional_monotone")),
    _C("dynamics.rate_bounded", "h(T,ξ) ≤ H(ξ)", "dynamics", _dyn("dynamics.rate_bounded")),
    _C("dynamics.rate_subadditive", "h(T,ξ∨η) ≤ h(T,ξ) + h(T,η)", "dynamics", _dyn("dynamics.rate_subadditive")),
    _C("dynamics.rate_interior_monotone", "ξ ⊆° η implies h(T,ξ) ≤ h(T,η)", "dynamics", _dyn("dynamics.rate_interior_monotone")),
    _C("dynamics.rate_conditional_bound", "h(T,ξ) ≤ h(T,η) + H(ξ|η)", "dynamics", _dyn("dynamics.rate_conditional_bound")),
    _C("dynamics.rate_image_invariant", "h(T,Tξ) = h(T,ξ)", "dynamics", _dyn("dynamics.rate_image_invariant")),
    _C("dynamics.rate_join_invariant", "h(T, ⋁_{i<k} Tⁱξ) = h(T,ξ)", "dynamics", _dyn("dynamics.rate_join_invariant")),
    _C("dynamics.conditional_rate", "h(T,ξ) = lim H(ξ | ⋁_{1≤i≤n} Tⁱξ)", "dynamics", _dyn("dynamics.conditional_rate")),
    _C("dynamics.zero_rate_iff_interior", "h(T,ξ) = 0 iff ξ ⊆° ⋁_{i≥1} Tⁱξ", "dynamics", _dyn("dynamics.zero_rate_iff_interior")),
    _C("dynamics.identity_zero", "h(id) = 0", "dynamics", _run_identity_zero),
    _C("dynamics.generator_theorem", "a generator ξ gives h(T) = h(T,ξ)", "dynamics", _dyn("dynamics.generator_theorem"), REFINEMENT_NOTE),
    _C("dynamics.isomorphism_facts", "an isomorphism preserves 0, 1, ⊕, ⊙ and the order", "dynamics", _run_iso("dynamics.isomorphism_facts")),
    _C("dynamics.isomorphism_invariance", "isomorphic systems have equal entropy", "dynamics", _run_iso("dynamics.isomorphism_invariance")),
    _C("dynamics.power_rule", "h(T^k) = k h(T)", "dynamics", _run_power("dynamics.power_rule")),
    _C("dynamics.power_rule_inverse", "h(T^k) = |k| h(T) for invertible T", "dynamics", _run_power("dynamics.power_rule_inverse")),
    _C("info.alternative_form", "I(ξ,η) = H(ξ) + H(η) − H(ξ∨η)", "entropy", _info("info.alternative_form")),
    _C("info.symmetry", "I(ξ,η) = I(η,ξ)", "entropy", _info("info.symmetry")),
    _C("info.bounds", "0 ≤ I(ξ,η) ≤ min(H(ξ), H(η))", "entropy", _info("info.bounds")),
    _C("info.interior_equal_invariance", "ξ =° η implies I(ξ,ζ) = I(η,ζ)", "entropy", _info("info.interior_equal_invariance")),
    _C("info.example_zero", "I(ξ,η) = 0 for the sample partitions (0,a), (0,b)", "entropy", _run_example_info),
    _C("info.join_chain", "I(ξ1∨ξ2, η) = I(ξ1,η) + I(ξ2,η|ξ1)", "entropy", _info("info.join_chain")),
    _C("info.independent_product", "I(ξ,η) = H(ξ)H(η) for an independent state", "entropy", _info("info.independent_product")),
    _C("info.conditional_independence_symmetry", "ξ→(η→ζ) implies ζ→(η→ξ)", "entropy", _info("info.conditional_independence_symmetry")),
    _C("info.conditional_chain", "I(ξ,η∨ζ) = I(ξ,η) + I(ξ,ζ|η) = I(ξ,ζ) + I(ξ,η|ζ)", "entropy", _info("info.conditional_chain")),
    _C("info.cond_independence_join", "ξ→(η→ζ) implies I(ξ∨η,ζ) = I(η,ζ)", "entropy", _info("info.cond_independence_join")),
    _C("info.cond_independence_split", "ξ→(η→ζ) implies I(η,ζ) = I(ξ,ζ) + I(ζ,η|ξ)", "entropy", _info("info.cond_independence_split")),
    _C("info.cond_independence_bound", "ξ→(η→ζ) implies I(ξ,η|ζ) ≤ I(ξ,η)", "entropy", _info("info.cond_independence_bound")),
)

CLAIM_IDS = tuple(c.claim_id for c in REGISTRY)


# --- report ------------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimSummary:
    claim: Claim
    verdict: str
    counts: dict
    witness: ClaimResult | None

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim.claim_id,
            "statement": self.claim.statement,
            "module": self.claim.module,
            "verdict": self.verdict,
            "counts": self.counts,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "note": self.claim.note,
        }


@dataclass(frozen=True)
class VerifyReport:
    bundle: str
    lenient_scenarios: tuple
    summaries: tuple

    @property
    def failures(self) -> list:
        return [s for s in self.summaries if s.verdict == FAILS]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def verdicts(self) -> dict:
        return {s.claim.claim_id: s.verdict for s in self.summaries}

    def traceability(self) -> list:
        """Rows ``(claim_id, module, statement, verdict, note)`` in registry order."""
        return [(s.claim.claim_id, s.claim.module, s.claim.statement, s.verdict, s.claim.note) for s in self.summaries]

    def to_dict(self) -> dict:
        return {
            "bundle": self.bundle,
            "lenient_scenarios": list(self.lenient_scenarios),
            "claims": [s.to_dict() for s in self.summaries],
            "totals": _totals(self.summaries),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, default=str)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["claim_id", "module", "verdict", "holds", "fails", "hypothesis-not-met", "not-assertable", "statement", "note"])
        for s in self.summaries:
            c = s.counts
            w.writerow([s.claim.claim_id, s.claim.module, s.verdict, c.get(HOLDS, 0), c.get(FAILS, 0), c.get(NOT_MET, 0), c.get(NOT_ASSERTABLE, 0), s.claim.statement, s.claim.note])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"bundle: {self.bundle}"]
        if self.lenient_scenarios:
            lines.append("lenient mode used for: " + ", ".join(self.lenient_scenarios))
        for s in self.summaries:
            line = f"{s.claim.claim_id:<42} {s.verdict:<19} {s.claim.statement}"
            if s.verdict == FAILS and s.witness is not None:
                w = s.witness
                extra = w.detail or f"lhs={w.lhs} rhs={w.rhs}"
                line += f"\n    witness [{w.scenario}]: {extra}"
            lines.append(line)
        t = _totals(self.summaries)
        lines.append("totals: " + ", ".join(f"{k}={v}" for k, v in t.items()))
        return "\n".join(lines) + "\n"


def _totals(summaries) -> dict:
    out = {v: 0 for v in (HOLDS, FAILS, NOT_MET, NOT_ASSERTABLE)}
    for s in summaries:
        out[s.verdict] += 1
    return out


def verify_bundle(bundle: str | Bundle = "paper", claims: Iterable[str] | None = None) -> VerifyReport:
    """Run the registry (or the named subset) on a bundle."""
    b = BUNDLES[bundle]() if isinstance(bundle, str) else bundle
    wanted = set(claims) if claims is not None else None
    summaries = []
    if b.algebras or b.states or b.systems:
        for claim in REGISTRY:
            if wanted is not None and claim.claim_id not in wanted:
                continue
            results = list(claim.runner(b))
            counts = {}
            for r in results:
                counts[r.verdict] = counts.get(r.verdict, 0) + 1
            verdict = aggregate(results)
            witness = next((r for r in results if r.verdict == verdict), None)
            summaries.append(ClaimSummary(claim, verdict, counts, witness))
    lenient = tuple(label for label, L in b.algebras.items() if L.lenient)
    return VerifyReport(b.name, lenient, tuple(summaries))
