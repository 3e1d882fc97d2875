"""Measure-preserving dynamics on bounded L-algebras and truncated entropy rates.

Limits are never claimed.  An :class:`EntropyRateEstimate` records the sequence
``a_n = H(⋁_{i<n} Tⁱξ)`` up to a truncation ``N`` together with the conditional
sequence ``H(ξ | ⋁_{i=1}^{n} Tⁱξ)``, convergence flags and a subadditivity certificate.
Measure-zero blocks are dropped after every join; they only ever contribute ``φ(0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .closure import UnaryOperator
from .core import FiniteLAlgebra, _as_map
from .entropy import bayes, conditional_entropy, entropy
from .errors import (
    CapacityError,
    ContractError,
    LSystemError,
    MeasureNotOne,
    OrthogonalityViolation,
    StructuralError,
)
from .report import FAILS, HOLDS, ClaimResult, approx_eq, approx_le, exact_eq, gated
from .states import (
    Partition,
    State,
    enumerate_partitions,
    interior_subset,
    is_self_distributive,
    join,
    marginals,
    odot,
    oplus,
    orthogonal,
    refines,
    validate_partition,
    validate_state,
)

DEFAULT_N = 8
DEFAULT_MAX_BLOCKS = 4
RATE_TOL = 1e-6
STRUCT_TOL = 1e-9
PARTITION_SPACE_CAP = 200_000


@dataclass(frozen=True)
class LSystem:
    algebra: FiniteLAlgebra
    T: UnaryOperator
    m: State

    def power(self, k: int) -> "LSystem":
        return LSystem(self.algebra, self.T.power(k), self.m)


def system_violations(L: FiniteLAlgebra, T: UnaryOperator, m: State) -> list:
    """``(condition, witness)`` for each failing system condition, first witness only."""
    out = []
    r = range(L.n)
    w = next(((a, b) for a, b in product(r, r) if T(L.imp(a, b)) != L.imp(T(a), T(b))), None)
    if w:
        out.append(("i", tuple(L.names(w))))
    if T(L.unit) != L.unit:
        out.append(("ii", (L.name(L.unit),)))
    w = next((a for a in r if m(T(a)) != m(a)), None)
    if w is not None:
        out.append(("iii", (L.name(w),)))
    return out


def validate_system(L: FiniteLAlgebra, T, m) -> LSystem:
    """Build an :class:`LSystem`, raising :class:`LSystemError` with witnesses on failure.

    ``T`` may be a :class:`UnaryOperator` or a name/index map; ``m`` a :class:`State`
    or a raw valuation.
    """
    if not isinstance(T, UnaryOperator):
        T = UnaryOperator.from_map(L, T)
    if not isinstance(m, State):
        m = validate_state(L, m)
    if T.algebra != L or m.algebra != L:
        raise StructuralError("map, state and algebra do not match")
    bad = system_violations(L, T, m)
    if bad:
        raise LSystemError(bad)
    return LSystem(L, T, m)


def _apply(T: UnaryOperator, xi: Partition) -> Partition:
    return Partition(xi.state, tuple(T(x) for x in xi.blocks), False)


def image_partition(sys: LSystem, xi: Partition, n: int = 1) -> Partition:
    """``Tⁿξ`` re-validated as a partition of unity."""
    img = _apply(sys.T.power(n), xi)
    return validate_partition(img.blocks, sys.m)


def _images(sys: LSystem, xi: Partition, start: int, stop: int):
    cur = _apply(sys.T.power(start), xi)
    for _ in range(start, stop):
        yield cur
        cur = _apply(sys.T, cur)


def _fold_joins(parts) -> list:
    """Prefix joins ``P_1, P_1∨P_2, ...`` with zero blocks pruned after every join."""
    out = []
    acc = None
    for p in parts:
        acc = p if acc is None else join(acc, p, prune=True)
        out.append(acc)
    return out


def iterated_join(sys: LSystem, xi: Partition, n: int, start: int = 0) -> Partition:
    """``⋁_{i=start}^{start+n-1} Tⁱξ`` as a left fold, pruned; not re-validated."""
    if n < 1:
        raise ContractError("iterated_join needs n >= 1")
    return _fold_joins(_images(sys, xi, start, start + n))[-1]


@dataclass(frozen=True)
class EntropyRateEstimate:
    """Truncated estimates of ``h(T, ξ)``.

    ``values[n-1] = a_n``; ``conditional[n-1] = H(ξ | ⋁_{i=1}^{n} Tⁱξ)``.
    """

    values: tuple
    rate: float
    converged: bool
    conditional: tuple
    conditional_converged: bool
    tolerance: float

    @property
    def N(self) -> int:
        return len(self.values)

    @property
    def conditional_rate(self) -> float:
        return self.conditional[-1]

    def subadditivity_violations(self, tol: float = STRUCT_TOL) -> list:
        a = self.values
        return [
            (n, p)
            for n in range(1, len(a))
            for p in range(1, len(a) - n + 1)
            if a[n + p - 1] > a[n - 1] + a[p - 1] + tol
        ]

    def conditional_increases(self, tol: float = STRUCT_TOL) -> list:
        c = self.conditional
        return [n + 1 for n in range(len(c) - 1) if c[n + 1] > c[n] + tol]


def entropy_rate(sys: LSystem, xi: Partition, N: int = DEFAULT_N, tolerance: float = RATE_TOL) -> EntropyRateEstimate:
    if N < 1:
        raise ContractError("entropy_rate needs N >= 1")
    joins = _fold_joins(_images(sys, xi, 0, N))
    a = tuple(entropy(j).value for j in joins)
    tail = _fold_joins(_images(sys, xi, 1, N + 1))
    c = tuple(conditional_entropy(xi, t).value for t in tail)
    rate = a[-1] / N
    conv = N == 1 or abs(rate - a[-2] / (N - 1)) <= tolerance
    cconv = N == 1 or abs(c[-1] - c[-2]) <= tolerance
    return EntropyRateEstimate(a, rate, conv, c, cconv, tolerance)


def _space_guard(L: FiniteLAlgebra, max_blocks: int, cap: int):
    size = sum(L.n**k for k in range(1, max_blocks + 1))
    if size > cap:
        raise CapacityError("partition_space", size, cap)


def distinct_partitions(m: State, max_blocks: int) -> list:
    """Valid partitions up to ``max_blocks`` blocks, one per block multiset."""
    seen = set()
    out = []
    for p in enumerate_partitions(m, max_blocks):
        key = tuple(sorted(p.blocks))
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


@dataclass(frozen=True)
class SystemEntropy:
    value: float
    argmax: Partition | None
    partitions: int
    max_blocks: int
    N: int


def system_entropy(
    sys: LSystem,
    max_blocks: int = DEFAULT_MAX_BLOCKS,
    N: int = DEFAULT_N,
    *,
    cap: int = PARTITION_SPACE_CAP,
) -> SystemEntropy:
    """Largest truncated rate ``a_N / N`` over partitions with at most ``max_blocks`` blocks."""
    _space_guard(sys.algebra, max_blocks, cap)
    parts = distinct_partitions(sys.m, max_blocks)
    best, arg = 0.0, None
    for p in parts:
        r = entropy_rate(sys, p, N).rate
        if arg is None or r > best:
            best, arg = r, p
    return SystemEntropy(best, arg, len(parts), max_blocks, N)


def is_generator(sys: LSystem, xi: Partition, n: int, max_blocks: int = DEFAULT_MAX_BLOCKS) -> bool:
    """Every partition with at most ``max_blocks`` blocks is coarser than ``⋁_{i=1}^{n} Tⁱξ``."""
    fine = iterated_join(sys, xi, n, start=1)
    return all(refines(fine, eta) for eta in distinct_partitions(sys.m, max_blocks))


# --- isomorphism -------------------------------------------------------------------


@dataclass(frozen=True)
class IsomorphismReport:
    conditions: dict
    derived: dict

    @property
    def holds(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self):
        return self.holds


def are_isomorphic(sys1: LSystem, sys2: LSystem, phi) -> IsomorphismReport:
    """Check the three conditions on ``φ`` plus the facts they are supposed to imply."""
    A, B = sys1.algebra, sys2.algebra
    f = _as_map(phi, A, B)
    r = range(A.n)
    cond = {
        "arrow": all(f[A.imp(a, b)] == B.imp(f[a], f[b]) for a, b in product(r, r)),
        "intertwines": all(f[sys1.T(a)] == sys2.T(f[a]) for a in r),
        "measure": all(sys2.m(f[a]) == sys1.m(a) for a in r),
    }
    derived = {
        "unit": f[A.unit] == B.unit,
        "zero": A.zero is not None and B.zero is not None and f[A.zero] == B.zero,
        "order": all(B.le(f[a], f[b]) for a, b in product(r, r) if A.le(a, b)),
    }
    if derived["zero"]:
        derived["oplus"] = all(
            orthogonal(B, f[a], f[b]) and f[oplus(A, a, b)] == oplus(B, f[a], f[b])
            for a, b in product(r, r)
            if orthogonal(A, a, b)
        )

        def odot_ok(a, b):
            x, y = odot(A, a, b), odot(B, f[a], f[b])
            if not (x.defined and y.defined):
                return x.defined == y.defined
            return f[x.value] == y.value

        derived["odot"] = all(odot_ok(a, b) for a, b in product(r, r))
    return IsomorphismReport(cond, derived)


def map_partition(phi_map: tuple, xi: Partition, target: State) -> Partition:
    return Partition(target, tuple(phi_map[x] for x in xi.blocks), False)


# --- claim checks ------------------------------------------------------------------


def check_image_lemma(sys: LSystem, xi: Partition, eta: Partition, N: int = DEFAULT_N, *, tol=STRUCT_TOL) -> list:
    """``Tⁿξ`` is a partition, ``H(Tⁿξ) = H(ξ)`` and ``H(Tⁿξ | Tⁿη) = H(ξ|η)`` for ``n <= N``."""
    out = []
    bad = []
    for n in range(1, N + 1):
        try:
            image_partition(sys, xi, n)
        except (OrthogonalityViolation, MeasureNotOne) as exc:
            bad.append((n, str(exc)))
    out.append(
        ClaimResult(
            "dynamics.image_partition", FAILS if bad else HOLDS, {}, detail=str(bad[0]) if bad else ""
        )
    )

    def measures_equal():
        for n in range(1, N + 1):
            img = _apply(sys.T.power(n), xi)
            if sorted(img.measures) != sorted(xi.measures):
                return False, n, None, None
        return True, entropy(xi).value, entropy(xi).value, 0.0

    out.append(gated("dynamics.image_entropy", {}, measures_equal))

    def conditional_equal():
        worst = 0.0
        base = conditional_entropy(xi, eta).value
        for n in range(1, N + 1):
            Tn = sys.T.power(n)
            worst = max(worst, abs(conditional_entropy(_apply(Tn, xi), _apply(Tn, eta)).value - base))
        return worst <= tol, base, base, worst

    out.append(gated("dynamics.image_conditional", {}, conditional_equal))
    return out


def check_rate_sequence(sys: LSystem, xi: Partition, N: int = DEFAULT_N, *, tol=RATE_TOL) -> list:
    """Subadditivity certificate, conditional monotonicity, the join decomposition and
    agreement of the two estimators."""
    est = entropy_rate(sys, xi, N, tol)
    out = []
    sub = est.subadditivity_violations()
    out.append(
        ClaimResult(
            "dynamics.subadditive_limit",
            FAILS if sub else HOLDS,
            {},
            list(est.values),
            None,
            None,
            f"violations at (n, p) = {sub[:3]}" if sub else "",
        )
    )
    inc = est.conditional_increases()
    out.append(
        ClaimResult(
            "dynamics.conditional_monotone",
            FAILS if inc else HOLDS,
            {},
            list(est.conditional),
            None,
            None,
            f"increases at n = {inc[:3]}" if inc else "",
        )
    )
    # H(⋁_{0}^{n-1}) = H(ξ) + Σ_{j=1}^{n-1} H(ξ | ⋁_{1}^{j})
    tails = _fold_joins(_images(sys, xi, 1, N))
    hyps = {f"bayes ξ|⋁1..{j}": bayes(xi, t) for j, t in enumerate(tails, start=1)}
    rhs = entropy(xi).value + sum(est.conditional[: N - 1])
    out.append(gated("dynamics.join_decomposition", hyps, lambda: approx_eq(est.values[-1], rhs, STRUCT_TOL)))
    out.append(
        gated(
            "dynamics.conditional_rate",
            {"cesaro converged": est.converged, "conditional converged": est.conditional_converged},
            lambda: approx_eq(est.rate, est.conditional_rate, tol),
        )
    )
    tailN = iterated_join(sys, xi, N, start=1)
    zero = conditional_entropy(xi, tailN).is_zero
    out.append(
        gated(
            "dynamics.zero_rate_iff_interior",
            {f"bayes ξ|⋁1..{N}": bayes(xi, tailN)},
            lambda: exact_eq(zero, interior_subset(xi, tailN)),
        )
    )
    return out


def check_rate_properties(sys: LSystem, xi: Partition, eta: Partition, N: int = DEFAULT_N, *, tol=RATE_TOL, k: int = 2) -> list:
    """The six listed properties of ``h(T, ·)`` at truncation ``N``."""
    out = []
    rx = entropy_rate(sys, xi, N, tol)
    ry = entropy_rate(sys, eta, N, tol)
    out.append(gated("dynamics.rate_bounded", {}, lambda: approx_le(rx.rate, entropy(xi).value, tol)))

    jx, jy = iterated_join(sys, xi, N), iterated_join(sys, eta, N)
    rows, cols = marginals(jx, jy)
    out.append(
        gated(
            "dynamics.rate_subadditive",
            {"bayes ⋁ξ|⋁η": cols, "row sums ⋁ξ|⋁η": rows},
            lambda: approx_le(entropy_rate(sys, join(xi, eta), N, tol).rate, rx.rate + ry.rate, tol),
        )
    )
    out.append(
        gated(
            "dynamics.rate_interior_monotone",
            {"ξ ⊆° η": interior_subset(xi, eta), "bayes ξ|η": bayes(xi, eta)},
            lambda: approx_le(rx.rate, ry.rate, tol),
        )
    )
    out.append(
        gated(
            "dynamics.rate_conditional_bound",
            {"self-distributive": bool(is_self_distributive(sys.algebra))},
            lambda: approx_le(rx.rate, ry.rate + conditional_entropy(xi, eta).value, tol),
        )
    )
    inv = sys.T.is_bijective
    out.append(
        gated(
            "dynamics.rate_image_invariant",
            {"T invertible": inv},
            lambda: approx_eq(entropy_rate(sys, _apply(sys.T, xi), N, tol).rate, rx.rate, tol),
        )
    )

    def join_invariant():
        zk = iterated_join(sys, xi, k)
        a = entropy_rate(sys, zk, N, tol).values[-1]
        M = N + k - 1
        return approx_eq(a / M, entropy_rate(sys, xi, M, tol).rate, tol)

    out.append(gated("dynamics.rate_join_invariant", {}, join_invariant))
    return out


def check_identity_zero(m: State, max_blocks: int = DEFAULT_MAX_BLOCKS, N: int = DEFAULT_N, *, tol=STRUCT_TOL) -> list:
    sys = LSystem(m.algebra, UnaryOperator.identity(m.algebra), m)
    h = system_entropy(sys, max_blocks, N)
    return [
        gated(
            "dynamics.identity_zero",
            {},
            lambda: (abs(h.value) <= tol, h.value, 0.0, abs(h.value)),
            detail=f"arg-max {h.argmax!r}",
        )
    ]


def check_power_rule(sys: LSystem, k: int, N: int = DEFAULT_N, max_blocks: int = DEFAULT_MAX_BLOCKS, *, tol=RATE_TOL) -> list:
    """``h_N(T^k)`` against ``|k|·h_{|k|N}(T)``; negative ``k`` needs an invertible map."""
    if k < 0 and not sys.T.is_bijective:
        raise ContractError("negative powers need an invertible map")
    lhs = system_entropy(sys.power(k), max_blocks, N).value
    rhs = abs(k) * system_entropy(sys, max_blocks, max(1, abs(k)) * N).value
    cid = "dynamics.power_rule" if k >= 0 else "dynamics.power_rule_inverse"
    return [gated(cid, {}, lambda: approx_eq(lhs, rhs, tol), detail=f"k={k}, N={N}")]


def check_generator_theorem(sys: LSystem, xi: Partition, n: int = 1, N: int = DEFAULT_N, max_blocks: int = DEFAULT_MAX_BLOCKS, *, tol=RATE_TOL) -> list:
    gen = is_generator(sys, xi, n, max_blocks)
    return [
        gated(
            "dynamics.generator_theorem",
            {"generator": gen},
            lambda: approx_eq(system_entropy(sys, max_blocks, N).value, entropy_rate(sys, xi, N).rate, tol),
        )
    ]


def check_isomorphism_invariance(sys1: LSystem, sys2: LSystem, phi, N: int = DEFAULT_N, max_blocks: int = DEFAULT_MAX_BLOCKS, *, tol=RATE_TOL) -> list:
    rep = are_isomorphic(sys1, sys2, phi)
    f = _as_map(phi, sys1.algebra, sys2.algebra)
    out = [
        gated(
            "dynamics.isomorphism_facts",
            {"isomorphic": rep.holds},
            lambda: (all(rep.derived.values()), rep.derived, None, None),
        )
    ]

    def invariance():
        h1 = system_entropy(sys1, max_blocks, N).value
        h2 = system_entropy(sys2, max_blocks, N).value
        worst = 0.0
        for p in distinct_partitions(sys1.m, max_blocks):
            r1 = entropy_rate(sys1, p, N).rate
            r2 = entropy_rate(sys2, map_partition(f, p, sys2.m), N).rate
            worst = max(worst, abs(r1 - r2))
        d = max(abs(h1 - h2), worst)
        return d <= tol, h1, h2, d

    out.append(gated("dynamics.isomorphism_invariance", {"isomorphic": rep.holds}, invariance))
    return out
