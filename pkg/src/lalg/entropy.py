"""Entropy, conditional entropy and information gain of partitions.

Block measures stay exact rationals; only the final ``p log p`` sums are floats.
Equalities that are decidable on the rational terms (``H(ξ|η) = 0``, interior subsets)
are decided exactly.

The ``check_*`` functions return lists of :class:`~lalg.report.ClaimResult`.  Each
claim is asserted only when its hypotheses hold.  The Bayes hypothesis is checked in
its operational form: the column sums of the ``m(x_i ⊙ y_j)`` grid reproduce
``m(y_j)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .errors import ContractError
from .report import (
    NOT_ASSERTABLE,
    ClaimResult,
    approx_eq,
    approx_le,
    gated,
)
from .states import (
    Partition,
    grid_measures,
    independent,
    interior_equal,
    interior_subset,
    is_odot_commutative,
    is_self_distributive,
    join,
    marginals,
    refines,
    unit_partition,
)

TOL = 1e-9


def _log(p, base):
    if base == 2:
        return math.log2(p)
    if base == "e":
        return math.log(p)
    return math.log(p, base)


def phi(p, base=2) -> float:
    """``p log p`` with ``phi(0) = 0``."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ContractError(f"phi needs 0 <= p <= 1, got {p}")
    if p == 0:
        return 0.0
    return float(p) * _log(p, base)


@dataclass(frozen=True)
class EntropyValue:
    """``value`` in units of ``base``; ``terms`` are the exact probabilities summed.

    For a conditional entropy the terms are ``(p_ij, q_j)`` pairs with ``q_j > 0``.
    """

    value: float
    terms: tuple
    base: object = 2

    @property
    def bits(self) -> float:
        return self.value if self.base == 2 else self.value / _log(2, self.base)

    @property
    def is_zero(self) -> bool:
        """Exact test: every term contributes ``0``."""
        return all(
            (t == 0 or t == 1) if not isinstance(t, tuple) else (t[0] == 0 or t[0] == t[1])
            for t in self.terms
        )

    def __float__(self):
        return self.value


@lru_cache(maxsize=1 << 16)
def entropy(xi: Partition, base=2) -> EntropyValue:
    """``H(ξ) = −Σ m(x_i) log m(x_i)``."""
    terms = xi.measures
    return EntropyValue(-sum(phi(p, base) for p in terms) + 0.0, terms, base)


@lru_cache(maxsize=1 << 16)
def conditional_entropy(xi: Partition, eta: Partition, base=2) -> EntropyValue:
    """``H(ξ|η) = −Σ_ij p_ij log(p_ij / m(y_j))`` with ``p_ij = m(x_i ⊙ y_j)``.

    Columns with ``m(y_j) = 0`` are omitted and ``p_ij = 0`` terms contribute ``0``.
    """
    p = grid_measures(xi, eta)
    q = eta.measures
    terms = tuple(
        (p[i][j], q[j]) for j in range(len(eta)) if q[j] != 0 for i in range(len(xi))
    )
    total = 0.0
    for pij, qj in terms:
        if pij != 0:
            total -= float(pij) * _log(pij / qj, base)
    return EntropyValue(total + 0.0, terms, base)


@dataclass(frozen=True)
class InfoGainValue:
    """``value = components[0] − components[1]``; ``alternative`` is ``H(ξ)+H(η)−H(ξ∨η)``."""

    value: float
    components: tuple
    alternative: float | None = None


def info_gain(xi: Partition, eta: Partition, base=2) -> InfoGainValue:
    h = entropy(xi, base).value
    hc = conditional_entropy(xi, eta, base).value
    alt = h + entropy(eta, base).value - entropy(join(xi, eta), base).value
    return InfoGainValue(h - hc, (h, hc), alt)


def conditional_info_gain(xi: Partition, eta: Partition, zeta: Partition, base=2) -> InfoGainValue:
    """``I(ξ, η | ζ) = H(ξ|ζ) − H(ξ | η∨ζ)``."""
    a = conditional_entropy(xi, zeta, base).value
    b = conditional_entropy(xi, join(eta, zeta), base).value
    return InfoGainValue(a - b, (a, b))


def conditionally_independent(xi, eta, zeta, *, tol=TOL, base=2) -> bool:
    """``ξ → (η → ζ)``: ``|I(ξ, ζ | η)| <= tol``."""
    return abs(conditional_info_gain(xi, zeta, eta, base).value) <= tol


# --- hypothesis helpers ------------------------------------------------------------


def bayes(xi: Partition, eta: Partition) -> bool:
    """Column sums of the ``ξ``-over-``η`` grid equal ``m(y_j)``."""
    return marginals(xi, eta)[1]


def _bayes_hyps(*pairs) -> dict:
    out = {}
    for label, a, b in pairs:
        out[f"bayes {label}"] = bayes(a, b)
    return out


def _H(xi, base=2):
    return entropy(xi, base).value


def _Hc(xi, eta, base=2):
    return conditional_entropy(xi, eta, base).value


# --- section checks ----------------------------------------------------------------


def check_chain_rule(xi, eta, *, tol=TOL) -> list:
    """``H(ξ∨η) = H(ξ|η) + H(η)``."""
    hyps = _bayes_hyps(("ξ|η", xi, eta))
    return [
        gated(
            "entropy.chain_rule",
            hyps,
            lambda: approx_eq(_H(join(xi, eta)), _Hc(xi, eta) + _H(eta), tol),
        )
    ]


def check_three_partition_chain(xi, eta, zeta, *, tol=TOL) -> list:
    """``H(ξ∨η | ζ) = H(ξ|ζ) + H(η | ξ∨ζ)`` under the four independence hypotheses."""
    xe, xz = join(xi, eta), join(xi, zeta)
    hyps = {
        "independent ξ,ζ": independent(xi, zeta),
        "independent ξ,η": independent(xi, eta),
        "independent ξ∨η,ζ": independent(xe, zeta),
        "independent η,ξ∨ζ": independent(eta, xz),
    }
    hyps.update(_bayes_hyps(("ξ∨η|ζ", xe, zeta), ("ξ|ζ", xi, zeta), ("η|ξ∨ζ", eta, xz)))
    return [
        gated(
            "entropy.three_partition_chain",
            hyps,
            lambda: approx_eq(_Hc(xe, zeta), _Hc(xi, zeta) + _Hc(eta, xz), tol),
        )
    ]


def _join_all(parts, start=None):
    acc = start
    for p in parts:
        acc = p if acc is None else join(acc, p)
    return acc


def check_join_chain(family, given=None, *, tol=TOL) -> list:
    """``H(⋁ξ_i) = Σ H(ξ_i | ⋁_{k<i} ξ_k)`` and its conditional form, with ``ξ_0 = (1)``."""
    family = list(family)
    one = unit_partition(family[0].state)
    prefixes = []
    acc = one
    for p in family:
        prefixes.append(acc)
        acc = join(acc, p)
    hyps = {}
    for i, (p, pre) in enumerate(zip(family, prefixes), start=1):
        hyps[f"bayes ξ{i}|prefix"] = bayes(p, pre)
    out = [
        gated(
            "entropy.join_chain",
            hyps,
            lambda: approx_eq(
                _H(_join_all(family)), sum(_Hc(p, pre) for p, pre in zip(family, prefixes)), tol
            ),
        )
    ]
    if given is not None:
        ghyps = {}
        conds = [join(pre, given) for pre in prefixes]
        for i, (p, c) in enumerate(zip(family, conds), start=1):
            ghyps[f"bayes ξ{i}|prefix∨η"] = bayes(p, c)
        ghyps["bayes ⋁ξ|η"] = bayes(_join_all(family), given)
        out.append(
            gated(
                "entropy.join_chain_conditional",
                ghyps,
                lambda: approx_eq(
                    _Hc(_join_all(family), given),
                    sum(_Hc(p, c) for p, c in zip(family, conds)),
                    tol,
                ),
            )
        )
    return out


def check_interior_properties(xi, eta, zeta, *, tol=TOL) -> list:
    """The four statements tying interior subsets to (conditional) entropy."""
    L = xi.algebra
    sd = bool(is_self_distributive(L))
    out = []
    cond = conditional_entropy(xi, eta)
    out.append(
        gated(
            "entropy.interior_iff_zero",
            _bayes_hyps(("ξ|η", xi, eta)),
            lambda: (interior_subset(xi, eta) == cond.is_zero, interior_subset(xi, eta), cond.is_zero, None),
        )
    )
    eq = interior_equal(xi, eta)
    out.append(
        gated(
            "entropy.interior_equal_entropy",
            {"ξ =° η": eq, **_bayes_hyps(("ξ|η", xi, eta), ("η|ξ", eta, xi))},
            lambda: approx_eq(_H(xi), _H(eta), tol),
        )
    )
    hyps = {
        "self-distributive": sd,
        "independent ξ∨η,ζ": independent(join(xi, eta), zeta),
        "independent η∨ζ,ξ": independent(join(eta, zeta), xi),
        "ξ =° η": eq,
        **_bayes_hyps(("ξ|ζ", xi, zeta), ("η|ζ", eta, zeta), ("ξ|η", xi, eta), ("η|ξ", eta, xi)),
    }
    out.append(
        gated("entropy.interior_equal_conditional", hyps, lambda: approx_eq(_Hc(xi, zeta), _Hc(eta, zeta), tol))
    )
    # statement (iv) with the roles η =° ζ
    hyps = {
        "self-distributive": sd,
        "η =° ζ": interior_equal(eta, zeta),
        **_bayes_hyps(("ξ|η", xi, eta), ("ξ|ζ", xi, zeta), ("η|ζ", eta, zeta), ("ζ|η", zeta, eta)),
    }
    out.append(
        gated("entropy.interior_equal_condition", hyps, lambda: approx_eq(_Hc(xi, zeta), _Hc(xi, eta), tol))
    )
    return out


def check_condition_on_unit(xi, *, tol=TOL) -> list:
    one = unit_partition(xi.state)
    return [gated("entropy.condition_on_unit", {}, lambda: approx_eq(_Hc(xi, one), _H(xi), tol))]


def check_entropy_inequalities(xi, eta, zeta, *, tol=TOL) -> list:
    """Refinement, conditioning and subadditivity inequalities, each hypothesis-gated."""
    L = xi.algebra
    sd = bool(is_self_distributive(L))
    comm = is_odot_commutative(L)
    out = []

    # read as: η refines ξ; the cardinality hypothesis is reported, not required
    fine = refines(eta, xi)
    le = _H(xi) <= _H(eta) + tol
    out.append(
        ClaimResult(
            "entropy.refinement_monotone",
            NOT_ASSERTABLE,
            {"η refines ξ": fine, "card η <= card ξ": len(eta) <= len(xi)},
            _H(xi),
            _H(eta),
            _H(xi) - _H(eta),
            "counterexample" if fine and not le else ("consistent" if fine else "premise absent"),
        )
    )
    out.append(
        gated(
            "entropy.conditioning_reduces",
            {"⊙ commutative": comm, "self-distributive": sd},
            lambda: approx_le(_Hc(xi, eta), _H(xi), tol),
        )
    )
    one = unit_partition(xi.state)
    hyps = {
        "η refines ξ": fine,
        "self-distributive": sd,
        "ζ ≠ (1)": tuple(zeta.blocks) != tuple(one.blocks),
        **_bayes_hyps(("ξ|ζ", xi, zeta), ("η|ζ", eta, zeta)),
    }
    out.append(
        gated("entropy.refinement_conditional_monotone", hyps, lambda: approx_le(_Hc(xi, zeta), _Hc(eta, zeta), tol))
    )
    rows, cols = marginals(xi, eta)
    both = {"bayes ξ|η": cols, "row sums ξ|η": rows}
    out.append(
        gated("entropy.subadditivity", both, lambda: approx_le(_H(join(xi, eta)), _H(xi) + _H(eta), tol))
    )

    def equivalence():
        a = abs(_Hc(xi, eta) - _H(xi)) <= tol
        b = abs(_H(join(xi, eta)) - _H(xi) - _H(eta)) <= tol
        c = independent(xi, eta)
        return a == b == c, (a, b), c, None

    out.append(gated("entropy.independence_equivalence", both, equivalence))
    return out


def check_info_gain_calculus(xi, eta, zeta, *, tol=TOL) -> list:
    """Information-gain identities and inequalities on one triple of partitions."""
    L = xi.algebra
    out = []
    I = lambda a, b: info_gain(a, b).value  # noqa: E731
    Ic = lambda a, b, c: conditional_info_gain(a, b, c).value  # noqa: E731

    out.append(
        gated(
            "info.alternative_form",
            _bayes_hyps(("ξ|η", xi, eta)),
            lambda: approx_eq(I(xi, eta), info_gain(xi, eta).alternative, tol),
        )
    )
    out.append(
        gated(
            "info.symmetry",
            _bayes_hyps(("ξ|η", xi, eta), ("η|ξ", eta, xi)),
            lambda: approx_eq(I(xi, eta), I(eta, xi), tol),
        )
    )
    rows, cols = marginals(xi, eta)

    def bounds():
        v = I(xi, eta)
        hi = min(_H(xi), _H(eta))
        return -tol <= v <= hi + tol, v, hi, v - hi

    out.append(gated("info.bounds", {"bayes ξ|η": cols, "row sums ξ|η": rows}, bounds))

    eq = interior_equal(xi, eta)
    hyps = {
        "ξ =° η": eq,
        "self-distributive": bool(is_self_distributive(L)),
        "independent ξ∨η,ζ": independent(join(xi, eta), zeta),
        "independent η∨ζ,ξ": independent(join(eta, zeta), xi),
        **_bayes_hyps(("ξ|ζ", xi, zeta), ("η|ζ", eta, zeta), ("ξ|η", xi, eta), ("η|ξ", eta, xi)),
    }
    out.append(gated("info.interior_equal_invariance", hyps, lambda: approx_eq(I(xi, zeta), I(eta, zeta), tol)))

    xe = join(xi, eta)
    hyps = _bayes_hyps(("ξ∨η|ζ", xe, zeta), ("ξ|ζ", xi, zeta), ("η|ξ", eta, xi), ("ζ|η", zeta, eta))
    hyps["bayes ξ∨η|(1)"] = bayes(xe, unit_partition(xi.state))
    out.append(
        gated(
            "info.join_chain",
            hyps,
            lambda: approx_eq(I(xe, zeta), I(xi, zeta) + Ic(eta, zeta, xi), tol),
        )
    )

    def cond_chain():
        lhs = I(xi, join(eta, zeta))
        r1 = I(xi, eta) + Ic(xi, zeta, eta)
        r2 = I(xi, zeta) + Ic(xi, eta, zeta)
        d = max(abs(lhs - r1), abs(lhs - r2))
        return d <= tol, lhs, (r1, r2), d

    out.append(gated("info.conditional_chain", {}, cond_chain))

    # descriptive only: "independent state" is undefined
    prod = _H(xi) * _H(eta)
    out.append(
        ClaimResult(
            "info.independent_product",
            NOT_ASSERTABLE,
            {"independent ξ,η": independent(xi, eta), **_bayes_hyps(("ξ|η", xi, eta))},
            I(xi, eta),
            prod,
            I(xi, eta) - prod,
            "evaluated descriptively",
        )
    )

    ci = conditionally_independent(xi, eta, zeta, tol=tol)
    chain_hyps = _bayes_hyps(
        ("ξ|η", xi, eta), ("ζ|η", zeta, eta), ("ξ|η∨ζ", xi, join(eta, zeta)), ("ζ|ξ∨η", zeta, xe),
        ("η∨ζ|(1)", join(eta, zeta), unit_partition(xi.state)),
    )
    out.append(
        gated(
            "info.conditional_independence_symmetry",
            {"ξ→(η→ζ)": ci, **chain_hyps},
            lambda: (conditionally_independent(zeta, eta, xi, tol=tol), ci, conditionally_independent(zeta, eta, xi, tol=tol), None),
        )
    )

    cor_hyps = {"ξ→(η→ζ)": ci, **chain_hyps, **_bayes_hyps(("ξ∨η|ζ", xe, zeta), ("ξ|ζ", xi, zeta))}
    out.append(
        gated("info.cond_independence_join", cor_hyps, lambda: approx_eq(I(xe, zeta), I(eta, zeta), tol))
    )
    out.append(
        gated(
            "info.cond_independence_split",
            cor_hyps,
            lambda: approx_eq(I(eta, zeta), I(xi, zeta) + Ic(zeta, eta, xi), tol),
        )
    )
    out.append(
        gated("info.cond_independence_bound", cor_hyps, lambda: approx_le(Ic(xi, eta, zeta), I(xi, eta), tol))
    )
    return out
