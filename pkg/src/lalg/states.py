"""Orthogonality arithmetic, states and partitions of unity on bounded L-algebras.

With ``y′ = y → 0``:

* ``x ⊥ y`` iff ``x ≤ y′``, and then ``x ⊕ y = y′ → x``;
* ``x − w`` is the ``z`` with ``z ⊥ w`` and ``z ⊕ w = x`` (searched exhaustively);
* ``x ⊙ y = x − y′`` when ``y′ ≤ x``, else ``0``.

State values are :class:`fractions.Fraction` throughout; every relation in this module
is decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .core import FiniteLAlgebra
from .errors import (
    AmbiguousDifference,
    CapacityError,
    ContractError,
    MeasureNotOne,
    NoDifference,
    OdotError,
    OrthogonalityViolation,
    RangeError,
    StateError,
    StructuralError,
)

DEFAULT_REFINE_CAP = 14


def _require_bounded(L: FiniteLAlgebra) -> int:
    if L.zero is None:
        raise ContractError("operation needs a bounded L-algebra (no least element)")
    return L.zero


def prime(L: FiniteLAlgebra, x) -> int:
    """``x′ = x → 0``."""
    return L.imp(L.ix(x), _require_bounded(L))


def orthogonal(L: FiniteLAlgebra, x, y) -> bool:
    x, y = L.ix(x), L.ix(y)
    return L.le(x, prime(L, y))


def oplus(L: FiniteLAlgebra, x, y) -> int:
    """``x ⊕ y = y′ → x`` for orthogonal ``x, y``."""
    x, y = L.ix(x), L.ix(y)
    if not orthogonal(L, x, y):
        raise OrthogonalityViolation(L.name(x), L.name(y))
    return L.imp(prime(L, y), x)


@dataclass(frozen=True)
class OdotResult:
    """Outcome of ``−`` or ``⊙``.

    ``kind`` is ``"value"`` (unique difference), ``"zero"`` (the ``0`` branch of ⊙),
    ``"ambiguous"`` or ``"none"``.  ``candidates`` lists every difference found.
    """

    kind: str
    value: int | None
    candidates: tuple = ()

    @property
    def defined(self) -> bool:
        return self.kind in ("value", "zero")


@lru_cache(maxsize=256)
def _minus_table(L: FiniteLAlgebra) -> tuple:
    _require_bounded(L)
    n = L.n
    sums = [[None] * n for _ in range(n)]
    for z, w in product(range(n), repeat=2):
        if orthogonal(L, z, w):
            sums[z][w] = oplus(L, z, w)
    table = []
    for x in range(n):
        row = []
        for w in range(n):
            cands = tuple(z for z in range(n) if sums[z][w] == x)
            if len(cands) == 1:
                row.append(OdotResult("value", cands[0], cands))
            elif cands:
                row.append(OdotResult("ambiguous", None, cands))
            else:
                row.append(OdotResult("none", None, ()))
        table.append(tuple(row))
    return tuple(table)


def minus(L: FiniteLAlgebra, x, w) -> OdotResult:
    """All ``z`` with ``z ⊥ w`` and ``z ⊕ w = x``; unique, ambiguous or none."""
    return _minus_table(L)[L.ix(x)][L.ix(w)]


@lru_cache(maxsize=256)
def _odot_table(L: FiniteLAlgebra) -> tuple:
    zero = _require_bounded(L)
    table = []
    for x in range(L.n):
        row = []
        for y in range(L.n):
            yp = prime(L, y)
            if L.le(yp, x):
                row.append(minus(L, x, yp))
            else:
                row.append(OdotResult("zero", zero, ()))
        table.append(tuple(row))
    return tuple(table)


def odot(L: FiniteLAlgebra, x, y) -> OdotResult:
    return _odot_table(L)[L.ix(x)][L.ix(y)]


def odot_value(L: FiniteLAlgebra, x, y, pair=None) -> int:
    """Element ``x ⊙ y``; raises :class:`AmbiguousDifference` / :class:`NoDifference`."""
    r = _odot_table(L)[x][y]
    if r.kind == "ambiguous":
        raise AmbiguousDifference(L.name(x), L.name(y), L.names(r.candidates), pair)
    if r.kind == "none":
        raise NoDifference(L.name(x), L.name(y), (), pair)
    return r.value


# --- states ------------------------------------------------------------------------


@dataclass(frozen=True)
class State:
    """A validated state; ``values[i]`` is the measure of element ``i``."""

    algebra: FiniteLAlgebra
    values: tuple

    def __call__(self, x) -> Fraction:
        return self.values[x]

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.algebra, self.values))
            self.__dict__["_hash"] = h
        return h

    def as_names(self) -> dict:
        return {self.algebra.name(i): v for i, v in enumerate(self.values)}


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        # floats are accepted only when they are exactly representable short decimals
        return Fraction(str(v))
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError):
        raise StructuralError(f"not a rational value: {v!r}") from None


def _valuation(L: FiniteLAlgebra, raw) -> tuple:
    if isinstance(raw, Mapping):
        vals = [None] * L.n
        for k, v in raw.items():
            vals[L.ix(k)] = _to_fraction(v)
        missing = [L.name(i) for i, v in enumerate(vals) if v is None]
        if missing:
            raise StructuralError(f"valuation is undefined on {missing}")
        return tuple(vals)
    vals = tuple(_to_fraction(v) for v in raw)
    if len(vals) != L.n:
        raise StructuralError(f"valuation has {len(vals)} values for {L.n} elements")
    return vals


def state_violations(L: FiniteLAlgebra, values: Sequence[Fraction]) -> list:
    """Every failing state condition with its first witness, as ``(condition, witness)``."""
    _require_bounded(L)
    out = []
    if values[L.unit] != 1:
        out.append(("i", (L.name(L.unit),)))
    r = range(L.n)
    w = next(
        (
            (x, y)
            for x, y in product(r, r)
            if orthogonal(L, x, y) and values[oplus(L, x, y)] != values[x] + values[y]
        ),
        None,
    )
    if w:
        out.append(("ii", tuple(L.names(w))))
    w = next(((x, y) for x, y in product(r, r) if L.le(x, y) and values[x] > values[y]), None)
    if w:
        out.append(("iii", tuple(L.names(w))))
    return out


def validate_state(L: FiniteLAlgebra, raw) -> State:
    """Check a raw valuation against the state conditions and return a :class:`State`.

    ``raw`` maps element names (or indices) to rationals given as ``Fraction``, int or
    ``"p/q"`` strings.  Raises :class:`RangeError` for values outside [0, 1] and
    :class:`StateError` listing the violated conditions otherwise.
    """
    vals = _valuation(L, raw)
    for i, v in enumerate(vals):
        if not 0 <= v <= 1:
            raise RangeError(L.name(i), v)
    bad = state_violations(L, vals)
    if bad:
        raise StateError(bad)
    return State(L, vals)


def is_faithful(m: State) -> bool:
    L = m.algebra
    return all(x == L.zero for x in range(L.n) if m(x) == 0)


def enumerate_states(L: FiniteLAlgebra, denominators: Iterable[int]) -> Iterator[State]:
    """All states whose values lie on the given grid of denominators (brute force)."""
    grid = sorted({Fraction(k, d) for d in denominators for k in range(d + 1)})
    for vals in product(grid, repeat=L.n):
        if not state_violations(L, vals):
            yield State(L, vals)


# --- partitions --------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """An ordered block sequence under a state.

    Values returned by :func:`validate_partition` are partitions of unity.  Joins built
    by :func:`join` carry the same type but are not re-validated; ``checked`` tells which.
    """

    state: State
    blocks: tuple
    checked: bool = True

    @property
    def algebra(self) -> FiniteLAlgebra:
        return self.state.algebra

    @property
    def measures(self) -> tuple:
        return tuple(self.state(x) for x in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def names(self) -> list:
        return self.algebra.names(self.blocks)

    def pruned(self) -> "Partition":
        """Drop measure-zero blocks."""
        return Partition(self.state, tuple(x for x in self.blocks if self.state(x) != 0), False)

    def __repr__(self):
        return f"Partition({self.names()})"


def fold_oplus(L: FiniteLAlgebra, blocks: Sequence[int]) -> int:
    """Left-to-right ``⊕`` of a block sequence; the empty sum is ``0``."""
    if not blocks:
        return _require_bounded(L)
    acc = blocks[0]
    for k, x in enumerate(blocks[1:], start=1):
        if not orthogonal(L, acc, x):
            raise OrthogonalityViolation(L.name(acc), L.name(x), index=k)
        acc = oplus(L, acc, x)
    return acc


def validate_partition(blocks, m: State) -> Partition:
    """Check cumulative orthogonality and total measure one.

    Raises :class:`OrthogonalityViolation` (with the first failing block index) or
    :class:`MeasureNotOne`.
    """
    L = m.algebra
    blocks = tuple(L.ix(b) for b in blocks)
    if not blocks:
        raise ContractError("a partition needs at least one block")
    total = fold_oplus(L, blocks)
    if m(total) != 1:
        raise MeasureNotOne(m(total))
    return Partition(m, blocks)


def unit_partition(m: State) -> Partition:
    """The one-block partition ``(1)``."""
    return Partition(m, (m.algebra.unit,))


def enumerate_partitions(m: State, max_blocks: int = 3, *, distinct: bool = False) -> Iterator[Partition]:
    """Every valid partition with at most ``max_blocks`` blocks, shortest first."""
    L = m.algebra
    for k in range(1, max_blocks + 1):
        for blocks in product(range(L.n), repeat=k):
            if distinct and len(set(blocks)) < k:
                continue
            try:
                yield validate_partition(blocks, m)
            except (OrthogonalityViolation, MeasureNotOne):
                continue


def _same_state(xi: Partition, eta: Partition) -> State:
    if xi.state != eta.state:
        raise StructuralError("partitions live under different states")
    return xi.state


@lru_cache(maxsize=1 << 16)
def odot_grid(xi: Partition, eta: Partition) -> tuple:
    """``grid[i][j] = x_i ⊙ y_j``; raises :class:`OdotError` naming the block pair."""
    _same_state(xi, eta)
    L = xi.algebra
    return tuple(
        tuple(odot_value(L, x, y, pair=(i, j)) for j, y in enumerate(eta.blocks))
        for i, x in enumerate(xi.blocks)
    )


@lru_cache(maxsize=1 << 16)
def join(xi: Partition, eta: Partition, *, prune: bool = False) -> Partition:
    """Blocks ``x_i ⊙ y_j`` in row-major order, not re-validated."""
    m = _same_state(xi, eta)
    blocks = tuple(v for row in odot_grid(xi, eta) for v in row)
    if prune:
        blocks = tuple(b for b in blocks if m(b) != 0)
    return Partition(m, blocks, False)


def common_refinement(xi: Partition, eta: Partition) -> Partition:
    """``ξ ∨ η`` re-validated as a partition of unity.

    Raises :class:`OdotError` when some ``x_i ⊙ y_j`` is ambiguous, and
    :class:`OrthogonalityViolation` / :class:`MeasureNotOne` when the blocks do not
    form a partition under the state.
    """
    j = join(xi, eta)
    return validate_partition(j.blocks, j.state)


def refines(fine: Partition, coarse: Partition, *, cap: int = DEFAULT_REFINE_CAP) -> bool:
    """Whether ``fine`` is a refinement of ``coarse``.

    Each block of ``fine`` is assigned to exactly one block of ``coarse`` so that the
    ``⊕``-fold of each group, in block order, equals its coarse block (an empty group
    stands for ``0``).  Assignments whose folds hit a non-orthogonal pair are rejected.
    """
    L = fine.algebra
    if fine.state != coarse.state:
        raise StructuralError("partitions live under different states")
    if len(fine) > cap:
        raise CapacityError("refine_blocks", len(fine), cap)
    zero = _require_bounded(L)
    targets = coarse.blocks
    k = len(targets)
    acc = [None] * k

    def rec(j):
        if j == len(fine.blocks):
            return all((zero if a is None else a) == t for a, t in zip(acc, targets))
        y = fine.blocks[j]
        for g in range(k):
            prev = acc[g]
            if prev is None:
                acc[g] = y
            elif orthogonal(L, prev, y):
                acc[g] = oplus(L, prev, y)
            else:
                continue
            if rec(j + 1):
                acc[g] = prev
                return True
            acc[g] = prev
        return False

    return rec(0)


@dataclass(frozen=True)
class RefinementCheck:
    """Outcome of building ``ξ ∨ η`` and checking it refines both inputs."""

    valid: bool
    refines_xi: bool | None
    refines_eta: bool | None
    error: str | None = None

    @property
    def holds(self) -> bool:
        return bool(self.valid and self.refines_xi and self.refines_eta)


def check_common_refinement(xi: Partition, eta: Partition) -> RefinementCheck:
    try:
        jn = common_refinement(xi, eta)
    except (OrthogonalityViolation, MeasureNotOne) as exc:
        return RefinementCheck(False, None, None, str(exc))
    fine = jn.pruned()
    return RefinementCheck(True, refines(fine, xi), refines(fine, eta))


# --- Bayes, interior subsets, independence -----------------------------------------


@dataclass(frozen=True)
class BayesReport:
    """``definition``: ``m((⊕ x_i) ⊙ y) = m(y)``; ``decomposes``: ``Σ m(x_i ⊙ y) = m(y)``."""

    definition: bool
    decomposes: bool
    lhs: Fraction
    total: Fraction
    target: Fraction


def bayes_report(m: State, xi: Partition, y) -> BayesReport:
    L = m.algebra
    y = L.ix(y)
    s = fold_oplus(L, xi.blocks)
    lhs = m(odot_value(L, s, y))
    total = sum((m(odot_value(L, x, y)) for x in xi.blocks), Fraction(0))
    return BayesReport(lhs == m(y), total == m(y), lhs, total, m(y))


def has_bayes_property(m: State, xi: Partition, y) -> bool:
    return bayes_report(m, xi, y).definition


def bayes_decomposes(xi: Partition, eta: Partition) -> bool:
    """``Σ_i m(x_i ⊙ y_j) = m(y_j)`` for every block ``y_j`` of ``eta``."""
    m = _same_state(xi, eta)
    grid = odot_grid(xi, eta)
    return all(
        sum((m(grid[i][j]) for i in range(len(xi))), Fraction(0)) == m(y)
        for j, y in enumerate(eta.blocks)
    )


@lru_cache(maxsize=1 << 16)
def interior_subset(xi: Partition, eta: Partition) -> bool:
    """Every ``y_j`` has some ``x_i`` with ``m(x_i ⊙ y_j) = m(y_j)``."""
    m = _same_state(xi, eta)
    grid = odot_grid(xi, eta)
    return all(
        any(m(grid[i][j]) == m(y) for i in range(len(xi))) for j, y in enumerate(eta.blocks)
    )


def interior_equal(xi: Partition, eta: Partition) -> bool:
    return interior_subset(xi, eta) and interior_subset(eta, xi)


@lru_cache(maxsize=1 << 16)
def independent(xi: Partition, eta: Partition) -> bool:
    """``m(x_i ⊙ y_j) = m(x_i) m(y_j)`` for all block pairs."""
    m = _same_state(xi, eta)
    grid = odot_grid(xi, eta)
    return all(
        m(grid[i][j]) == m(x) * m(y)
        for i, x in enumerate(xi.blocks)
        for j, y in enumerate(eta.blocks)
    )


@dataclass(frozen=True)
class SelfDistributivityReport:
    left: bool  # x⊙(y⊙z) = (x⊙y)⊙(x⊙z)
    right: bool  # (x⊙y)⊙z = (x⊙z)⊙(y⊙z)
    undefined: tuple  # pairs where ⊙ is not defined
    left_witness: tuple | None = None
    right_witness: tuple | None = None

    def __bool__(self):
        return self.left or self.right


def _odot_partial(L):
    t = _odot_table(L)
    return [[r.value if r.defined else None for r in row] for row in t]


@lru_cache(maxsize=256)
def is_self_distributive(L: FiniteLAlgebra) -> SelfDistributivityReport:
    """Exhaustive triple scan; truthy when either distributive variant holds.

    Triples touching an undefined ``⊙`` count as failures of both variants.
    """
    P = _odot_partial(L)
    n = L.n
    undefined = tuple((L.name(x), L.name(y)) for x in range(n) for y in range(n) if P[x][y] is None)

    def op(a, b):
        return None if a is None or b is None else P[a][b]

    left_w = right_w = None
    for x, y, z in product(range(n), repeat=3):
        if left_w is None:
            lhs, rhs = op(x, op(y, z)), op(op(x, y), op(x, z))
            if lhs is None or rhs is None or lhs != rhs:
                left_w = tuple(L.names((x, y, z)))
        if right_w is None:
            lhs, rhs = op(op(x, y), z), op(op(x, z), op(y, z))
            if lhs is None or rhs is None or lhs != rhs:
                right_w = tuple(L.names((x, y, z)))
        if left_w and right_w:
            break
    return SelfDistributivityReport(left_w is None, right_w is None, undefined, left_w, right_w)


@lru_cache(maxsize=256)
def is_odot_commutative(L: FiniteLAlgebra) -> bool:
    P = _odot_partial(L)
    return all(
        P[x][y] is not None and P[x][y] == P[y][x] for x in range(L.n) for y in range(L.n)
    )


@lru_cache(maxsize=256)
def is_odot_associative(L: FiniteLAlgebra) -> bool:
    P = _odot_partial(L)
    r = range(L.n)
    for x, y, z in product(r, r, r):
        a = P[x][y]
        b = P[y][z]
        if a is None or b is None or P[a][z] is None or P[a][z] != P[x][b]:
            return False
    return True


@lru_cache(maxsize=1 << 16)
def grid_measures(xi: Partition, eta: Partition) -> tuple:
    """``p[i][j] = m(x_i ⊙ y_j)`` as exact rationals."""
    m = _same_state(xi, eta)
    return tuple(tuple(m(v) for v in row) for row in odot_grid(xi, eta))


@lru_cache(maxsize=1 << 16)
def marginals(xi: Partition, eta: Partition) -> tuple:
    """``(rows, cols)``: whether ``Σ_j p_ij = m(x_i)`` for all ``i`` and ``Σ_i p_ij = m(y_j)`` for all ``j``."""
    p = grid_measures(xi, eta)
    rows = all(sum(p[i], Fraction(0)) == xi.measures[i] for i in range(len(xi)))
    cols = all(
        sum((p[i][j] for i in range(len(xi))), Fraction(0)) == eta.measures[j]
        for j in range(len(eta))
    )
    return rows, cols
