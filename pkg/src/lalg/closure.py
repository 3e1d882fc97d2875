"""L-operators, closure operators and the lattice Ω(L) of closure operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from .core import FiniteLAlgebra, greatest_lower_bound, _as_map
from .errors import (
    CapacityError,
    ContractError,
    InfNotClosure,
    InfUndefined,
    StructuralError,
    SupUndefined,
)

DEFAULT_OPERATOR_CAP = 8


@dataclass(frozen=True)
class UnaryOperator:
    """A total self-map on the elements of one algebra, stored as an index tuple."""

    algebra: FiniteLAlgebra
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        if len(vals) != self.algebra.n or any(
            not isinstance(v, int) or not 0 <= v < self.algebra.n for v in vals
        ):
            raise StructuralError(f"operator values {vals} are not a total map on {self.algebra.n} elements")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_map(cls, L: FiniteLAlgebra, mapping) -> "UnaryOperator":
        return cls(L, _as_map(mapping, L, L))

    @classmethod
    def identity(cls, L: FiniteLAlgebra) -> "UnaryOperator":
        return cls(L, tuple(range(L.n)))

    @classmethod
    def constant(cls, L: FiniteLAlgebra, c) -> "UnaryOperator":
        return cls(L, (L.ix(c),) * L.n)

    @classmethod
    def omega(cls, L: FiniteLAlgebra) -> "UnaryOperator":
        """The constant-unit operator, top of Ω(L)."""
        return cls(L, (L.unit,) * L.n)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def compose(self, other: "UnaryOperator") -> "UnaryOperator":
        """``self ∘ other``."""
        _same_algebra(self, other)
        return UnaryOperator(self.algebra, tuple(self.values[v] for v in other.values))

    def power(self, k: int) -> "UnaryOperator":
        if k < 0:
            return self.inverse().power(-k)
        out = UnaryOperator.identity(self.algebra)
        for _ in range(k):
            out = self.compose(out)
        return out

    @property
    def is_bijective(self) -> bool:
        return len(set(self.values)) == self.algebra.n

    def inverse(self) -> "UnaryOperator":
        if not self.is_bijective:
            raise ContractError("operator is not invertible")
        inv = [0] * self.algebra.n
        for i, v in enumerate(self.values):
            inv[v] = i
        return UnaryOperator(self.algebra, tuple(inv))

    def as_names(self) -> dict:
        L = self.algebra
        return {L.name(i): L.name(v) for i, v in enumerate(self.values)}

    def __repr__(self):
        return f"UnaryOperator({self.as_names()})"


def _same_algebra(*ops):
    first = ops[0].algebra
    for op in ops[1:]:
        if op.algebra != first:
            raise StructuralError("operators live on different algebras")
    return first


def l_operator_failure(l: UnaryOperator):
    """First failing L-operator condition as ``(name, witness)``, or None."""
    L = l.algebra
    r = range(L.n)
    for x in r:
        if not L.le(x, l(x)):
            return ("extensive", (x,))
    for x, y in product(r, r):
        if L.le(x, y) and not L.le(l(x), l(y)):
            return ("monotone", (x, y))
    for x in r:
        if l(l(x)) != l(x):
            return ("idempotent", (x,))
    return None


def closure_failure(l: UnaryOperator):
    bad = l_operator_failure(l)
    if bad is not None:
        return bad
    L = l.algebra
    for x, y in product(range(L.n), repeat=2):
        if not L.le(l(L.imp(x, y)), L.imp(l(x), l(y))):
            return ("closure", (x, y))
    return None


def is_l_operator(l: UnaryOperator) -> bool:
    """Extensive, monotone and idempotent."""
    return l_operator_failure(l) is None


def is_closure_operator(l: UnaryOperator) -> bool:
    """An L-operator with ``l(x→y) ≤ l(x)→l(y)``."""
    return closure_failure(l) is None


def simple_elements(l: UnaryOperator) -> frozenset:
    """Fixed points of an L-operator."""
    if not is_l_operator(l):
        raise ContractError(f"{l} is not an L-operator: {l_operator_failure(l)}")
    return frozenset(x for x in range(l.algebra.n) if l(x) == x)


@dataclass(frozen=True)
class InfSimpleReport:
    """Per element: ``"ok"``, ``"mismatch"`` or ``"no-glb"`` (the infimum does not exist in L)."""

    status: dict
    glb: dict

    @property
    def holds(self) -> bool:
        return all(s != "mismatch" for s in self.status.values())

    @property
    def undefined(self) -> list:
        return [a for a, s in self.status.items() if s == "no-glb"]


def check_inf_simple_characterization(l: UnaryOperator) -> InfSimpleReport:
    """Compare ``l(a)`` with the infimum of the simple elements above ``a``."""
    L = l.algebra
    simple = simple_elements(l)
    status, glbs = {}, {}
    for a in range(L.n):
        above = [x for x in simple if L.le(a, x)]
        g = greatest_lower_bound(L, above)
        glbs[a] = g
        if g is None:
            status[a] = "no-glb"
        else:
            status[a] = "ok" if g == l(a) else "mismatch"
    return InfSimpleReport(status, glbs)


def leq_operator(l: UnaryOperator, l2: UnaryOperator) -> bool:
    """Pointwise order: ``l(x) ≤ l2(x)`` for all x."""
    L = _same_algebra(l, l2)
    return all(L.le(a, b) for a, b in zip(l.values, l2.values))


@dataclass(frozen=True)
class OperatorPoset:
    """The materialized Ω(L): all closure operators, sorted by value tuple."""

    algebra: FiniteLAlgebra
    operators: tuple

    @cached_property
    def _index(self) -> dict:
        return {op.values: i for i, op in enumerate(self.operators)}

    @cached_property
    def order(self) -> tuple:
        ops = self.operators
        return tuple(tuple(leq_operator(a, b) for b in ops) for a in ops)

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def __contains__(self, op) -> bool:
        return op.algebra == self.algebra and op.values in self._index

    def index(self, op: UnaryOperator) -> int:
        try:
            return self._index[op.values]
        except KeyError:
            raise StructuralError(f"{op} is not in Ω(L)") from None

    @property
    def omega(self) -> UnaryOperator:
        return UnaryOperator.omega(self.algebra)

    def upper_bounds(self, family) -> list:
        idx = [self.index(op) for op in family]
        return [j for j in range(len(self)) if all(self.order[i][j] for i in idx)]

    def lower_bounds(self, family) -> list:
        idx = [self.index(op) for op in family]
        return [j for j in range(len(self)) if all(self.order[j][i] for i in idx)]

    def greatest(self) -> UnaryOperator | None:
        top = [j for j in range(len(self)) if all(self.order[i][j] for i in range(len(self)))]
        return self.operators[top[0]] if len(top) == 1 else None

    def least(self) -> UnaryOperator | None:
        bot = [j for j in range(len(self)) if all(self.order[j][i] for i in range(len(self)))]
        return self.operators[bot[0]] if len(bot) == 1 else None


def enumerate_closure_operators(L: FiniteLAlgebra, *, cap: int = DEFAULT_OPERATOR_CAP) -> OperatorPoset:
    """Materialize Ω(L) by scanning extensive maps (``l(x)`` ranges over the up-set of x)."""
    if L.n > cap:
        raise CapacityError("operator_cap", L.n, cap)
    upsets = [[y for y in range(L.n) if L.le(x, y)] for x in range(L.n)]
    ops = []
    for values in product(*upsets):
        op = UnaryOperator(L, values)
        if closure_failure(op) is None:
            ops.append(op)
    ops.sort(key=lambda op: op.values)
    return OperatorPoset(L, tuple(ops))


def inf_operators(family: Sequence[UnaryOperator]) -> UnaryOperator:
    """Pointwise infimum of a nonempty family of closure operators.

    Raises :class:`InfUndefined` where the pointwise infimum does not exist in L and
    :class:`InfNotClosure` when it exists but is not a closure operator.
    """
    family = list(family)
    if not family:
        raise ContractError("inf of an empty family")
    L = _same_algebra(*family)
    for op in family:
        bad = closure_failure(op)
        if bad is not None:
            raise ContractError(f"{op} is not a closure operator: {bad}")
    vals = []
    for x in range(L.n):
        pts = {op(x) for op in family}
        g = greatest_lower_bound(L, pts)
        if g is None:
            raise InfUndefined(x, pts)
        vals.append(g)
    result = UnaryOperator(L, tuple(vals))
    bad = closure_failure(result)
    if bad is not None:
        raise InfNotClosure(result, bad)
    return result


def sup_operators(family: Sequence[UnaryOperator], omega_l: OperatorPoset | None = None) -> UnaryOperator:
    """Least upper bound of a family inside the materialized Ω(L).

    Taken as the infimum of the common upper bounds; when that infimum is not available
    pointwise, the least common upper bound in the operator order is used.  Raises
    :class:`SupUndefined` if the upper bounds have no least element.
    """
    family = list(family)
    if not family:
        raise ContractError("sup of an empty family")
    L = _same_algebra(*family)
    poset = omega_l if omega_l is not None else enumerate_closure_operators(L)
    ups = poset.upper_bounds(family)
    candidates = [poset.operators[j] for j in ups]
    try:
        result = inf_operators(candidates)
        if result in poset and poset.index(result) in ups:
            return result
    except (InfUndefined, InfNotClosure):
        pass
    least = [j for j in ups if all(poset.order[j][k] for k in ups)]
    if len(least) != 1:
        raise SupUndefined(f"no least upper bound among {len(ups)} upper bounds")
    return poset.operators[least[0]]


def fixed_points(l: UnaryOperator) -> frozenset:
    return frozenset(x for x in range(l.algebra.n) if l(x) == x)


@dataclass(frozen=True)
class SupFixReport:
    holds: bool
    sup: UnaryOperator | None
    fix_sup: frozenset
    common_fix: frozenset
    witnesses: tuple = ()  # elements in exactly one of the two sets
    error: str | None = None


def check_sup_fixed_points(family: Sequence[UnaryOperator], omega_l: OperatorPoset | None = None) -> SupFixReport:
    """Check that the fixed points of ``sup family`` are exactly the common fixed points."""
    family = list(family)
    common = frozenset.intersection(*(fixed_points(op) for op in family))
    try:
        s = sup_operators(family, omega_l)
    except SupUndefined as exc:
        return SupFixReport(False, None, frozenset(), common, (), str(exc))
    fs = fixed_points(s)
    diff = tuple(sorted(fs ^ common))
    return SupFixReport(not diff, s, fs, common, diff)


def l_a_operator(L: FiniteLAlgebra, a) -> UnaryOperator:
    """The two-valued operator: ``a`` on the down-set of ``a``, the unit elsewhere.

    Whether the result is a closure operator depends on L; callers check it.
    """
    a = L.ix(a)
    if a == L.unit:
        raise ContractError("l_a needs a ≠ 1")
    return UnaryOperator(L, tuple(a if L.le(x, a) else L.unit for x in range(L.n)))


@dataclass(frozen=True)
class MaximalReport:
    """Maximal elements of Ω(L) \\ {ω_L} compared with the family ``l_a``.

    ``maximal`` uses strict betweenness (no ``l < l' < ω_L``).  Under the literal
    non-strict reading nothing below ω_L could be maximal; ``literal_maximal`` records
    that reading for completeness.
    """

    maximal: tuple
    l_a: dict  # a -> operator
    l_a_closure: dict  # a -> bool
    l_a_maximal: dict  # a -> bool
    unmatched_maximal: tuple  # maximal operators that are not any l_a
    literal_maximal: tuple = field(default=())

    @property
    def every_maximal_is_l_a(self) -> bool:
        return not self.unmatched_maximal

    @property
    def every_l_a_maximal(self) -> bool:
        return all(self.l_a_maximal.values())

    @property
    def holds(self) -> bool:
        return self.every_maximal_is_l_a and self.every_l_a_maximal


def maximal_operators(L: FiniteLAlgebra, omega_l: OperatorPoset | None = None) -> MaximalReport:
    poset = omega_l if omega_l is not None else enumerate_closure_operators(L)
    top = poset.index(UnaryOperator.omega(L))
    order = poset.order
    below_top = [i for i in range(len(poset)) if i != top]
    maximal = [
        i
        for i in below_top
        if not any(order[i][j] and j != i for j in below_top)
    ]
    literal = [
        i for i in below_top if not any(order[i][j] and order[j][top] for j in range(len(poset)))
    ]
    maximal_ops = tuple(poset.operators[i] for i in maximal)
    l_as, l_a_closure, l_a_max = {}, {}, {}
    for a in range(L.n):
        if a == L.unit:
            continue
        op = l_a_operator(L, a)
        l_as[a] = op
        l_a_closure[a] = op in poset
        l_a_max[a] = op in poset and poset.index(op) in maximal
    l_a_values = {op.values for op in l_as.values()}
    unmatched = tuple(op for op in maximal_ops if op.values not in l_a_values)
    return MaximalReport(
        maximal=maximal_ops,
        l_a=l_as,
        l_a_closure=l_a_closure,
        l_a_maximal=l_a_max,
        unmatched_maximal=unmatched,
        literal_maximal=tuple(poset.operators[i] for i in literal),
    )
