"""Finite L-algebras as Cayley tables.

An L-algebra is a set with a binary operation ``→`` and a logical unit ``1`` such that

1. ``x → x = 1``
2. ``x → 1 = 1``
3. ``1 → x = x``
4. ``(x → y) → (x → z) = (y → x) → (y → z)``
5. ``x → y = y → x = 1`` implies ``x = y``

Elements carry opaque string names but every table is stored over dense indices
``0..n-1``.  :class:`FiniteLAlgebra` validates on construction, so downstream code may
assume the laws; :func:`check_axioms` inspects raw tables without raising.
"""

from __future__ import annotations

import os
import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AxiomError, CapacityError, StructuralError

DEFAULT_MAX_ORDER = 5

AXIOM_NAMES = {
    1: "x→x = 1",
    2: "x→1 = 1",
    3: "1→x = x",
    4: "(x→y)→(x→z) = (y→x)→(y→z)",
    5: "x→y = y→x = 1 implies x = y",
}


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    violations: tuple  # of (axiom index, witness tuple of element names)

    def failed_axioms(self) -> list[int]:
        return [ax for ax, _ in self.violations]

    def witness(self, axiom: int):
        for ax, w in self.violations:
            if ax == axiom:
                return w
        return None

    def describe(self) -> str:
        if self.passed:
            return "all axioms hold"
        return "; ".join(f"axiom ({ax}) fails at {w}" for ax, w in self.violations)


def _parse_table(arrow, unit, elements=None):
    """Normalise a raw table to (names, index rows, unit index)."""
    if elements is None:
        n = len(arrow)
        names = tuple(str(i) for i in range(n))
        index = {i: i for i in range(n)}
    else:
        names = tuple(str(e) for e in elements)
        n = len(names)
        if len(set(names)) != n:
            raise StructuralError(f"duplicate element names in {list(names)}")
        if any(not name for name in names):
            raise StructuralError("element names must be nonempty")
        index = {name: i for i, name in enumerate(names)}
    if n == 0:
        raise StructuralError("an L-algebra needs at least one element")
    if len(arrow) != n:
        raise StructuralError(f"table has {len(arrow)} rows for {n} elements")
    rows = []
    for r, row in enumerate(arrow):
        if len(row) != n:
            raise StructuralError(f"row {r} has {len(row)} cells, expected {n}")
        try:
            rows.append(tuple(index[v if elements is None else str(v)] for v in row))
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"row {r} holds an unknown element {exc}") from None
    try:
        u = index[unit if elements is None else str(unit)]
    except (KeyError, TypeError):
        raise StructuralError(f"unknown unit {unit!r}") from None
    return names, tuple(rows), u


def _violations(T, u, skip=()):
    """Axiom violations on an index table, witnesses lexicographically first."""
    n = len(T)
    out = []
    if 1 not in skip:
        w = next(((x,) for x in range(n) if T[x][x] != u), None)
        if w:
            out.append((1, w))
    if 2 not in skip:
        w = next(((x,) for x in range(n) if T[x][u] != u), None)
        if w:
            out.append((2, w))
    if 3 not in skip:
        w = next(((x,) for x in range(n) if T[u][x] != x), None)
        if w:
            out.append((3, w))
    if 4 not in skip:
        w = next(
            (
                (x, y, z)
                for x, y, z in product(range(n), repeat=3)
                if T[T[x][y]][T[x][z]] != T[T[y][x]][T[y][z]]
            ),
            None,
        )
        if w:
            out.append((4, w))
    if 5 not in skip:
        w = next(
            (
                (x, y)
                for x, y in product(range(n), repeat=2)
                if x != y and T[x][y] == u and T[y][x] == u
            ),
            None,
        )
        if w:
            out.append((5, w))
    return out


def check_axioms(arrow, unit, elements=None, *, skip=()) -> AxiomReport:
    """Check axioms (1)–(5) on a raw table.

    ``arrow[i][j]`` is the value of ``elements[i] → elements[j]``; cells name elements.
    Without ``elements`` the table is read over indices ``0..n-1``.  Structural problems
    raise :class:`StructuralError`; axiom failures are reported, never raised.
    """
    names, T, u = _parse_table(arrow, unit, elements)
    found = _violations(T, u, skip)
    return AxiomReport(
        passed=not found,
        violations=tuple((ax, tuple(names[i] for i in w)) for ax, w in found),
    )


@dataclass(frozen=True)
class FiniteLAlgebra:
    """A validated finite L-algebra.

    ``arrow`` holds indices; use :meth:`from_table` to build from element names.
    ``lenient=True`` skips axiom (5), which is only meant for reproducing tables that
    violate it; the flag is carried by every value derived from the algebra.
    """

    elements: tuple
    arrow: tuple
    unit: int
    zero: int | None = None
    lenient: bool = False

    def __post_init__(self):
        names, T, u = _parse_table(self.arrow, self.unit)
        if len(self.elements) != len(T):
            raise StructuralError(f"{len(self.elements)} names for a {len(T)}-row table")
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        object.__setattr__(self, "arrow", T)
        if len(set(self.elements)) != len(T):
            raise StructuralError(f"duplicate element names in {list(self.elements)}")
        found = _violations(T, u, skip=(5,) if self.lenient else ())
        if found:
            raise AxiomError(
                AxiomReport(
                    False,
                    tuple((ax, tuple(self.elements[i] for i in w)) for ax, w in found),
                )
            )
        if self.zero is None:
            object.__setattr__(self, "zero", _least(T, u))
        else:
            z = self.zero
            if not isinstance(z, int) or not 0 <= z < len(T):
                raise StructuralError(f"unknown zero {z!r}")
            bad = next((x for x in range(len(T)) if T[z][x] != u), None)
            if bad is not None:
                raise StructuralError(
                    f"declared zero {self.elements[z]} is not below {self.elements[bad]}"
                )

    @classmethod
    def from_table(cls, elements, arrow, unit, zero=None, lenient=False) -> "FiniteLAlgebra":
        names, T, u = _parse_table(arrow, unit, elements)
        z = None
        if zero is not None:
            if str(zero) not in names:
                raise StructuralError(f"unknown zero {zero!r}")
            z = names.index(str(zero))
        return cls(names, T, u, z, lenient)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def bounded(self) -> bool:
        return self.zero is not None

    @cached_property
    def _index(self) -> dict:
        return {name: i for i, name in enumerate(self.elements)}

    @cached_property
    def le_matrix(self) -> tuple:
        u = self.unit
        return tuple(tuple(v == u for v in row) for row in self.arrow)

    def ix(self, e) -> int:
        """Index of an element given by name or index."""
        if isinstance(e, str):
            try:
                return self._index[e]
            except KeyError:
                raise StructuralError(f"unknown element {e!r}") from None
        if isinstance(e, int) and not isinstance(e, bool) and 0 <= e < self.n:
            return e
        raise StructuralError(f"unknown element {e!r}")

    def ixs(self, *es) -> frozenset:
        return frozenset(self.ix(e) for e in es)

    def name(self, i: int) -> str:
        return self.elements[i]

    def names(self, idx: Iterable[int]) -> list:
        return [self.elements[i] for i in idx]

    def imp(self, x: int, y: int) -> int:
        return self.arrow[x][y]

    def le(self, x: int, y: int) -> bool:
        return self.arrow[x][y] == self.unit

    def relabel(self, perm: Sequence[int], names=None) -> "FiniteLAlgebra":
        """Isomorphic copy where old index ``i`` becomes ``perm[i]``."""
        n = self.n
        T = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                T[perm[x]][perm[y]] = perm[self.arrow[x][y]]
        if names is None:
            names = [None] * n
            for i, p in enumerate(perm):
                names[p] = self.elements[i]
        zero = None if self.zero is None else perm[self.zero]
        return FiniteLAlgebra(tuple(names), tuple(map(tuple, T)), perm[self.unit], zero, self.lenient)

    def to_document(self) -> dict:
        doc = {
            "elements": list(self.elements),
            "unit": self.elements[self.unit],
            "arrow": [[self.elements[v] for v in row] for row in self.arrow],
        }
        if self.zero is not None:
            doc["zero"] = self.elements[self.zero]
        return doc

    def __hash__(self):
        # memoized: algebras key several per-algebra caches
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.elements, self.arrow, self.unit, self.zero, self.lenient))
            self.__dict__["_hash"] = h
        return h

    def __repr__(self):
        return f"FiniteLAlgebra({list(self.elements)}, unit={self.elements[self.unit]!r})"


def _least(T, u):
    n = len(T)
    cands = [x for x in range(n) if all(T[x][y] == u for y in range(n))]
    return cands[0] if len(cands) == 1 else None


@dataclass(frozen=True)
class OrderRelation:
    n: int
    pairs: frozenset

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def is_reflexive(self) -> bool:
        return all((x, x) in self.pairs for x in range(self.n))

    def is_antisymmetric(self) -> bool:
        return all(x == y for x, y in self.pairs if (y, x) in self.pairs)

    def is_transitive(self) -> bool:
        succ = {x: {y for a, y in self.pairs if a == x} for x in range(self.n)}
        return all(succ[y] <= succ[x] for x, y in self.pairs)

    def is_partial_order(self) -> bool:
        return self.is_reflexive() and self.is_antisymmetric() and self.is_transitive()

    def upset(self, x: int) -> frozenset:
        return frozenset(y for a, y in self.pairs if a == x)

    def downset(self, y: int) -> frozenset:
        return frozenset(x for x, b in self.pairs if b == y)


def leq(L: FiniteLAlgebra, x, y) -> bool:
    """``x ≤ y`` iff ``x → y = 1``."""
    return L.le(L.ix(x), L.ix(y))


def induced_order(L: FiniteLAlgebra) -> OrderRelation:
    return OrderRelation(
        L.n, frozenset((x, y) for x in range(L.n) for y in range(L.n) if L.le(x, y))
    )


def least_element(L: FiniteLAlgebra) -> int | None:
    return _least(L.arrow, L.unit)


def greatest_lower_bound(L: FiniteLAlgebra, xs: Iterable[int]) -> int | None:
    """Greatest lower bound of ``xs`` in the induced order, or None if it does not exist."""
    xs = list(xs)
    lower = [z for z in range(L.n) if all(L.le(z, x) for x in xs)]
    top = [z for z in lower if all(L.le(w, z) for w in lower)]
    return top[0] if len(top) == 1 else None


def least_upper_bound(L: FiniteLAlgebra, xs: Iterable[int]) -> int | None:
    xs = list(xs)
    upper = [z for z in range(L.n) if all(L.le(x, z) for x in xs)]
    bottom = [z for z in upper if all(L.le(z, w) for w in upper)]
    return bottom[0] if len(bottom) == 1 else None


def is_subalgebra(L: FiniteLAlgebra, K) -> bool:
    K = {L.ix(k) for k in K}
    if L.unit not in K:
        return False
    return all(L.imp(x, y) in K for x in K for y in K)


def _as_map(f, src: FiniteLAlgebra, dst: FiniteLAlgebra) -> tuple:
    """Normalise an element map (dict by name/index, or index sequence) to an index tuple."""
    if isinstance(f, Mapping):
        out = [None] * src.n
        for k, v in f.items():
            out[src.ix(k)] = dst.ix(v)
        missing = [src.name(i) for i, v in enumerate(out) if v is None]
        if missing:
            raise StructuralError(f"map is undefined on {missing}")
        return tuple(out)
    f = tuple(f)
    if len(f) != src.n:
        raise StructuralError(f"map has {len(f)} values for {src.n} elements")
    return tuple(dst.ix(v) for v in f)


def is_homomorphism(f, src: FiniteLAlgebra, dst: FiniteLAlgebra) -> bool:
    f = _as_map(f, src, dst)
    if f[src.unit] != dst.unit:
        return False
    return all(
        f[src.imp(x, y)] == dst.imp(f[x], f[y]) for x in range(src.n) for y in range(src.n)
    )


@dataclass(frozen=True)
class DerivedLawsReport:
    """Counterexamples to the derived identities; each field is None when the law holds."""

    swap_identity: tuple | None  # x→(y→x) = y→(x→y)
    unit_distribution: tuple | None  # (x→y)→1 = (x→1)→(y→1) and 1→(x→y) = (1→x)→(1→y)
    right_monotone: tuple | None  # x ≤ y implies z→x ≤ z→y
    equivalence: dict = field(default_factory=dict)  # truth of the three equivalent conditions

    @property
    def holds(self) -> bool:
        return (
            self.swap_identity is None
            and self.unit_distribution is None
            and self.right_monotone is None
            and len(set(self.equivalence.values())) <= 1
        )


def check_derived_laws(L: FiniteLAlgebra) -> DerivedLawsReport:
    n, imp, le, u = L.n, L.imp, L.le, L.unit
    r = range(n)
    swap = next(
        ((x, y) for x, y in product(r, r) if imp(x, imp(y, x)) != imp(y, imp(x, y))), None
    )
    unit_dist = next(
        (
            (x, y)
            for x, y in product(r, r)
            if imp(imp(x, y), u) != imp(imp(x, u), imp(y, u))
            or imp(u, imp(x, y)) != imp(imp(u, x), imp(u, y))
        ),
        None,
    )
    mono = next(
        (
            (x, y, z)
            for x, y, z in product(r, r, r)
            if le(x, y) and not le(imp(z, x), imp(z, y))
        ),
        None,
    )
    # The three conditions are universally quantified statements; the law is that
    # they have the same truth value on L.
    c1 = all(le(x, imp(y, x)) for x, y in product(r, r))
    c2 = all(
        le(imp(z, y), imp(x, y)) for x, y, z in product(r, r, r) if le(x, z)
    )
    c3 = all(
        le(imp(imp(imp(x, y), z), z), imp(imp(imp(x, y), z), imp(imp(y, x), z)))
        for x, y, z in product(r, r, r)
    )
    return DerivedLawsReport(
        swap_identity=None if swap is None else tuple(L.names(swap)),
        unit_distribution=None if unit_dist is None else tuple(L.names(unit_dist)),
        right_monotone=None if mono is None else tuple(L.names(mono)),
        equivalence={"x≤y→x": c1, "antitone_left": c2, "nested": c3},
    )


# --- enumeration -----------------------------------------------------------------


def enumeration_names(n: int) -> tuple:
    """Element names used for enumerated algebras: letters for non-units, ``1`` last."""
    if n - 1 > len(string.ascii_lowercase):
        raise CapacityError("order", n, len(string.ascii_lowercase) + 1)
    return tuple(string.ascii_lowercase[: n - 1]) + ("1",)


def _free_cells(n):
    u = n - 1
    return [(x, y) for x in range(u) for y in range(u) if x != y]


def _seed_table(n):
    u = n - 1
    T = [[None] * n for _ in range(n)]
    for x in range(n):
        T[x][x] = u
        T[x][u] = u
        T[u][x] = x
    return T


def _consistent(T, n, u, x0, y0) -> bool:
    """Check axioms (4) and (5) on every instance that is fully determined so far."""
    if x0 != y0 and T[x0][y0] == u and T[y0][x0] == u:
        return False
    r = range(n)
    for x in r:
        Tx = T[x]
        for y in r:
            xy, yx = Tx[y], T[y][x]
            if xy is None or yx is None:
                continue
            Ty, Txy, Tyx = T[y], T[xy], T[yx]
            for z in r:
                xz, yz = Tx[z], Ty[z]
                if xz is None or yz is None:
                    continue
                lhs, rhs = Txy[xz], Tyx[yz]
                if lhs is not None and rhs is not None and lhs != rhs:
                    return False
    return True


def _search(n, prefix=()):
    """Yield every valid table (as a tuple of rows) whose first free cells equal ``prefix``."""
    u = n - 1
    cells = _free_cells(n)
    T = _seed_table(n)
    for (x, y), v in zip(cells, prefix):
        T[x][y] = v
        if not _consistent(T, n, u, x, y):
            return

    def rec(k):
        if k == len(cells):
            yield tuple(tuple(row) for row in T)
            return
        x, y = cells[k]
        for v in range(n):
            T[x][y] = v
            if _consistent(T, n, u, x, y):
                yield from rec(k + 1)
        T[x][y] = None

    yield from rec(len(prefix))


def _search_shard(args):
    n, prefix = args
    return list(_search(n, prefix))


def canonical_table(T) -> tuple:
    """Least flattened table over all relabelings fixing the last index (the unit)."""
    n = len(T)
    u = n - 1
    best = None
    for p in permutations(range(u)):
        perm = p + (u,)
        R = [[0] * n for _ in range(n)]
        for x in range(n):
            px = perm[x]
            row = T[x]
            for y in range(n):
                R[px][perm[y]] = perm[row[y]]
        flat = tuple(v for row in R for v in row)
        if best is None or flat < best:
            best = flat
    return best


def canonical_form(L: FiniteLAlgebra) -> tuple:
    """Isomorphism invariant: least flattened table over unit-fixing relabelings."""
    u = L.unit
    order = [i for i in range(L.n) if i != u] + [u]
    pos = {old: new for new, old in enumerate(order)}
    T = [[pos[L.arrow[old_x][old_y]] for old_y in order] for old_x in order]
    return canonical_table(T)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LALG_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_l_algebras(
    n: int, up_to_iso: bool = False, *, cap: int = DEFAULT_MAX_ORDER, workers: int | None = None
) -> Iterator[FiniteLAlgebra]:
    """Yield every L-algebra on ``n`` labelled elements with the unit fixed last.

    Tables come out in lexicographic order of their free cells.  With ``up_to_iso``
    only the canonical representative of each isomorphism class is kept.  ``workers``
    (default from ``LALG_THREADS``) shards the search on the first free cell; shards
    are concatenated in order, so the output sequence does not depend on it.
    """
    if n < 1:
        raise CapacityError("order", n, "positive")
    if n > cap:
        raise CapacityError("order", n, cap)
    names = enumeration_names(n)
    workers = _threads() if workers is None else workers
    cells = _free_cells(n)
    if workers > 1 and cells:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = pool.map(_search_shard, [(n, (v,)) for v in range(n)])
            tables = (t for shard in shards for t in shard)
            yield from _emit(tables, names, n, up_to_iso)
    else:
        yield from _emit(_search(n), names, n, up_to_iso)


def _emit(tables, names, n, up_to_iso):
    for T in tables:
        if up_to_iso and tuple(v for row in T for v in row) != canonical_table(T):
            continue
        yield FiniteLAlgebra(names, T, n - 1)


def are_isomorphic_algebras(A: FiniteLAlgebra, B: FiniteLAlgebra) -> bool:
    return A.n == B.n and canonical_form(A) == canonical_form(B)
