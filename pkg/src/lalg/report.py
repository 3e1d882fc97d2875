"""Hypothesis-gated claim records shared by the checkers and the verify harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

HOLDS = "holds"
FAILS = "fails"
NOT_MET = "hypothesis-not-met"
NOT_ASSERTABLE = "not-assertable"

VERDICTS = (HOLDS, FAILS, NOT_MET, NOT_ASSERTABLE)


@dataclass(frozen=True)
class ClaimResult:
    """One evaluation of a claim on one scenario.

    ``hypotheses`` maps each hypothesis label to whether it held.  The conclusion is
    only asserted when all of them hold; otherwise the verdict is ``hypothesis-not-met``
    and ``lhs``/``rhs`` are still filled in when they could be computed.
    """

    claim_id: str
    verdict: str
    hypotheses: Mapping[str, bool] = field(default_factory=dict)
    lhs: Any = None
    rhs: Any = None
    delta: float | None = None
    detail: str = ""
    scenario: str = ""

    @property
    def failed(self) -> bool:
        return self.verdict == FAILS

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "scenario": self.scenario,
            "hypotheses": {k: ("met" if v else "unmet") for k, v in self.hypotheses.items()},
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "delta": self.delta,
            "verdict": self.verdict,
            "detail": self.detail,
        }


def _plain(v):
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def gated(
    claim_id: str,
    hypotheses: Mapping[str, bool],
    conclusion: Callable[[], tuple],
    *,
    detail: str = "",
) -> ClaimResult:
    """Evaluate ``conclusion()`` -> ``(ok, lhs, rhs, delta)`` and gate it on ``hypotheses``."""
    ok, lhs, rhs, delta = conclusion()
    if not all(hypotheses.values()):
        verdict = NOT_MET
    else:
        verdict = HOLDS if ok else FAILS
    return ClaimResult(claim_id, verdict, dict(hypotheses), lhs, rhs, delta, detail)


def approx_eq(lhs: float, rhs: float, tol: float):
    d = abs(lhs - rhs)
    return d <= tol, lhs, rhs, d


def approx_le(lhs: float, rhs: float, tol: float):
    return lhs <= rhs + tol, lhs, rhs, lhs - rhs


def exact_eq(lhs, rhs):
    return lhs == rhs, lhs, rhs, None


def aggregate(results) -> str:
    """Combine per-scenario verdicts: any failure fails; otherwise any success holds."""
    verdicts = {r.verdict for r in results}
    for v in (FAILS, HOLDS, NOT_ASSERTABLE):
        if v in verdicts:
            return v
    return NOT_MET
