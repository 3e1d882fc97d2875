"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LAlgebraError(Exception):
    """Base class for all errors raised by :mod:`lalg`."""


class StructuralError(LAlgebraError, ValueError):
    """Malformed input: non-square table, unknown element, partial map, mismatched algebras."""


class ContractError(LAlgebraError, ValueError):
    """A documented precondition does not hold (e.g. an unbounded algebra where 0 is needed)."""


class CapacityError(LAlgebraError):
    """A search space exceeds its configured cap."""

    def __init__(self, cap_name: str, requested, cap):
        self.cap_name = cap_name
        self.requested = requested
        self.cap = cap
        super().__init__(f"{cap_name}={requested} exceeds cap {cap}")


class AxiomError(LAlgebraError):
    """Raised when building a :class:`FiniteLAlgebra` from a table that fails the axioms."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"not an L-algebra: {report.describe()}")


class InfUndefined(LAlgebraError):
    """The pointwise greatest lower bound does not exist at element ``x``."""

    def __init__(self, x, values):
        self.x = x
        self.values = values
        super().__init__(f"no greatest lower bound of {sorted(values)} at element {x}")


class InfNotClosure(LAlgebraError):
    """The pointwise infimum exists but is not a closure operator."""

    def __init__(self, op, reason):
        self.op = op
        self.reason = reason
        super().__init__(f"pointwise infimum {op.values} is not a closure operator: {reason}")


class SupUndefined(LAlgebraError):
    """The family has no least upper bound inside the materialized operator lattice."""


class OrthogonalityViolation(LAlgebraError):
    """``x ⊥ y`` is required but fails; ``index`` names the offending block when folding."""

    def __init__(self, x, y, index=None):
        self.x = x
        self.y = y
        self.index = index
        where = f" at block {index}" if index is not None else ""
        super().__init__(f"elements {x} and {y} are not orthogonal{where}")


class MeasureNotOne(LAlgebraError):
    def __init__(self, total):
        self.total = total
        super().__init__(f"partition has total measure {total}, expected 1")


class OdotError(LAlgebraError):
    """``x ⊙ y`` is not well defined because the difference ``x − y′`` is not unique."""

    def __init__(self, x, y, candidates, pair=None):
        self.x = x
        self.y = y
        self.candidates = tuple(candidates)
        self.pair = pair
        super().__init__(self._message())

    def _message(self):
        where = f" for blocks {self.pair}" if self.pair is not None else ""
        return f"{self.kind} computing {self.x} ⊙ {self.y}{where}: candidates {list(self.candidates)}"

    kind = "undefined difference"


class AmbiguousDifference(OdotError):
    kind = "ambiguous difference"


class NoDifference(OdotError):
    kind = "no difference"


class StateError(LAlgebraError):
    """A valuation fails one of the state conditions; ``violations`` lists (condition, witness)."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid state: " + "; ".join(f"({c}) at {w}" for c, w in self.violations))


class RangeError(StateError):
    def __init__(self, element, value):
        super().__init__([("range", (element, value))])


class LSystemError(LAlgebraError):
    """A triple (L, T, m) fails one of the dynamical-system conditions."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid L-system: " + "; ".join(f"({c}) at {w}" for c, w in self.violations))
