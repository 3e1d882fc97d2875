"""JSON documents for algebras, operators, states, partitions and systems.

Documents nest: a partition document holds a state document, which holds an algebra
document.  Anywhere an algebra document is expected, the name of a bundled fixture
(``"table1"``, ``"luk3"``, ...) may be given instead.  Rationals are strings such as
``"1/2"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from . import fixtures
from .closure import UnaryOperator
from .core import FiniteLAlgebra
from .dynamics import LSystem, validate_system
from .errors import StructuralError
from .states import Partition, State, validate_partition, validate_state

NAMED_ALGEBRAS = {
    "table1": lambda: fixtures.TABLE1,
    "table2": lambda: fixtures.TABLE2,
    "table3": lambda: fixtures.TABLE3,
    "table4": lambda: fixtures.TABLE4,
    "boolean2": lambda: fixtures.BOOLEAN2,
    "boolean4": lambda: fixtures.BOOLEAN4,
    "luk3": lambda: fixtures.LUK3,
    "luk5": lambda: fixtures.LUK5,
    "singleton": lambda: fixtures.SINGLETON,
}


def read_json(path) -> dict:
    """Parse a JSON file; syntax errors become :class:`StructuralError` with line/column."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _need(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise StructuralError(f"{kind} document needs a {key!r} field")
    return doc[key]


def algebra_from_doc(doc, *, lenient: bool = False) -> FiniteLAlgebra:
    """Build a validated algebra.  ``lenient`` skips the antisymmetry axiom only."""
    if isinstance(doc, str):
        try:
            L = NAMED_ALGEBRAS[doc.lower()]()
        except KeyError:
            raise StructuralError(f"unknown bundled algebra {doc!r}") from None
        if L.lenient and not lenient:
            # re-validate strictly so the caller sees the axiom failure
            return FiniteLAlgebra.from_table(L.elements, algebra_to_doc(L)["arrow"], L.elements[L.unit])
        return L
    elements = _need(doc, "elements", "algebra")
    arrow = _need(doc, "arrow", "algebra")
    unit = _need(doc, "unit", "algebra")
    return FiniteLAlgebra.from_table(elements, arrow, unit, zero=doc.get("zero"), lenient=lenient)


def raw_algebra(doc):
    """``(elements, arrow, unit)`` without validation, for axiom reports."""
    if isinstance(doc, str):
        L = algebra_from_doc(doc, lenient=True)
        d = algebra_to_doc(L)
        return d["elements"], d["arrow"], d["unit"]
    return _need(doc, "elements", "algebra"), _need(doc, "arrow", "algebra"), _need(doc, "unit", "algebra")


def algebra_to_doc(L: FiniteLAlgebra) -> dict:
    return L.to_document()


def operator_from_doc(doc, *, lenient=False) -> UnaryOperator:
    L = algebra_from_doc(_need(doc, "algebra", "operator"), lenient=lenient)
    return UnaryOperator.from_map(L, _need(doc, "map", "operator"))


def state_from_doc(doc, *, lenient=False, algebra: FiniteLAlgebra | None = None) -> State:
    L = algebra if algebra is not None else algebra_from_doc(_need(doc, "algebra", "state"), lenient=lenient)
    return validate_state(L, _need(doc, "values", "state"))


def state_to_doc(m: State) -> dict:
    return {
        "algebra": algebra_to_doc(m.algebra),
        "values": {k: str(Fraction(v)) for k, v in m.as_names().items()},
    }


def partition_from_doc(doc, *, lenient=False, state: State | None = None) -> Partition:
    m = state if state is not None else state_from_doc(_need(doc, "state", "partition"), lenient=lenient)
    return validate_partition(_need(doc, "blocks", "partition"), m)


def partition_to_doc(p: Partition) -> dict:
    return {"state": state_to_doc(p.state), "blocks": p.names()}


def system_from_doc(doc, *, lenient=False) -> LSystem:
    L = algebra_from_doc(_need(doc, "algebra", "system"), lenient=lenient)
    state = _need(doc, "state", "system")
    values = state["values"] if isinstance(state, dict) and "values" in state else state
    return validate_system(L, _need(doc, "T", "system"), values)


def system_to_doc(sys: LSystem) -> dict:
    return {
        "algebra": algebra_to_doc(sys.algebra),
        "T": sys.T.as_names(),
        "state": {k: str(Fraction(v)) for k, v in sys.m.as_names().items()},
    }
