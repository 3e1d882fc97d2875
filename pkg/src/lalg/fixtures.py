"""Bundled algebras, maps, states and partitions.

The four small tables are the worked examples used throughout the tests and the
``verify`` harness.  Table 4 breaks axiom (5) and only loads in lenient mode.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .core import FiniteLAlgebra

TABLE1 = FiniteLAlgebra.from_table(
    ["a", "b", "c", "1"],
    [
        ["1", "1", "a", "1"],
        ["a", "1", "c", "1"],
        ["a", "1", "1", "1"],
        ["a", "b", "c", "1"],
    ],
    unit="1",
)

TABLE2 = FiniteLAlgebra.from_table(
    ["0", "c", "a", "b", "1"],
    [
        ["1", "1", "1", "1", "1"],
        ["0", "1", "1", "1", "1"],
        ["0", "b", "1", "b", "1"],
        ["0", "a", "a", "1", "1"],
        ["0", "c", "a", "b", "1"],
    ],
    unit="1",
    zero="0",
)

TABLE3 = FiniteLAlgebra.from_table(
    ["1", "a", "b", "c", "d"],
    [
        ["1", "a", "b", "c", "d"],
        ["1", "1", "b", "c", "b"],
        ["1", "a", "1", "b", "a"],
        ["1", "a", "1", "1", "a"],
        ["1", "1", "1", "b", "1"],
    ],
    unit="1",
)

TABLE4_ELEMENTS = ["0", "a", "b", "1"]
TABLE4_ARROW = [
    ["1", "1", "1", "1"],
    ["0", "1", "1", "1"],
    ["0", "1", "1", "1"],
    ["0", "a", "b", "1"],
]

TABLE4 = FiniteLAlgebra.from_table(TABLE4_ELEMENTS, TABLE4_ARROW, unit="1", zero="0", lenient=True)

# homomorphism of TABLE2 swapping a and b
SWAP_AB_MAP = {"0": "0", "1": "1", "a": "b", "b": "a", "c": "c"}

# closure operator on TABLE3
SAMPLE_CLOSURE_MAP = {"a": "1", "1": "1", "b": "b", "d": "b", "c": "c"}

# state on TABLE4
TABLE4_STATE = {"0": "0", "a": "1", "b": "1", "1": "1"}

# interior-equal under TABLE4_STATE, with zero information gain
ZERO_A_PARTITION = ["0", "a"]
ZERO_B_PARTITION = ["0", "b"]

SINGLETON = FiniteLAlgebra.from_table(["1"], [["1"]], unit="1")


def lukasiewicz_chain(k: int, names=None) -> FiniteLAlgebra:
    """The k-element Łukasiewicz chain ``{0, 1/(k-1), ..., 1}`` with ``x→y = min(1, 1-x+y)``."""
    if k < 2:
        raise ValueError("a Łukasiewicz chain needs at least two elements")
    vals = [Fraction(i, k - 1) for i in range(k)]
    if names is None:
        names = [str(v) for v in vals]
    T = [[vals.index(min(Fraction(1), 1 - x + y)) for y in vals] for x in vals]
    return FiniteLAlgebra(tuple(names), tuple(map(tuple, T)), k - 1, 0)


def lukasiewicz_state(L: FiniteLAlgebra) -> dict:
    """``m(x) = x`` on a chain built by :func:`lukasiewicz_chain`."""
    k = L.n
    return {L.name(i): Fraction(i, k - 1) for i in range(k)}


def boolean_algebra(atoms) -> FiniteLAlgebra:
    """Power set of ``atoms`` with ``x→y = (not x) or y``; elements named by joined atoms.

    The bottom is named ``0`` and the top ``1``.
    """
    atoms = list(atoms)
    k = len(atoms)
    full = (1 << k) - 1
    masks = list(range(1 << k))

    def name(mask):
        if mask == 0:
            return "0"
        if mask == full:
            return "1"
        return "".join(a for i, a in enumerate(atoms) if mask >> i & 1)

    T = [[(~x & full) | y for y in masks] for x in masks]
    return FiniteLAlgebra(tuple(name(m) for m in masks), tuple(map(tuple, T)), full, 0)


def product_algebra(A: FiniteLAlgebra, B: FiniteLAlgebra) -> FiniteLAlgebra:
    """Direct product with componentwise arrow; element ``(x, y)`` named ``"x,y"``."""
    pairs = list(product(range(A.n), range(B.n)))
    pos = {p: i for i, p in enumerate(pairs)}
    T = [[pos[(A.imp(x1, x2), B.imp(y1, y2))] for (x2, y2) in pairs] for (x1, y1) in pairs]
    names = tuple(f"{A.name(x)},{B.name(y)}" for x, y in pairs)
    zero = None
    if A.zero is not None and B.zero is not None:
        zero = pos[(A.zero, B.zero)]
    return FiniteLAlgebra(names, tuple(map(tuple, T)), pos[(A.unit, B.unit)], zero, A.lenient or B.lenient)


BOOLEAN2 = boolean_algebra(["p"])  # the two-element chain {0, 1}
BOOLEAN4 = boolean_algebra(["p", "q"])
LUK3 = lukasiewicz_chain(3, names=("0", "h", "1"))
LUK5 = lukasiewicz_chain(5)
