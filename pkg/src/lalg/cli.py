"""``lalg`` command line.

Exit status: 0 when nothing assertable failed, 1 on an axiom/state/claim failure,
2 on structural, parse or capacity errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io as docs
from .closure import (
    check_inf_simple_characterization,
    closure_failure,
    enumerate_closure_operators,
    is_l_operator,
    maximal_operators,
    simple_elements,
)
from .core import check_axioms, check_derived_laws, enumerate_l_algebras, induced_order
from .dynamics import (
    DEFAULT_MAX_BLOCKS,
    DEFAULT_N,
    RATE_TOL,
    entropy_rate,
    system_entropy,
)
from .entropy import conditional_entropy, entropy
from .errors import (
    AxiomError,
    CapacityError,
    LAlgebraError,
    LSystemError,
    MeasureNotOne,
    OrthogonalityViolation,
    StateError,
    StructuralError,
)
from .states import enumerate_partitions, validate_partition
from .verify import BUNDLES, verify_bundle

EXIT_OK, EXIT_FAIL, EXIT_STRUCTURAL = 0, 1, 2


@dataclass
class Output:
    """Collects a report in one of the three formats."""

    fmt: str
    lenient: bool = False
    text: list = field(default_factory=list)
    record: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    header: tuple = ()

    def line(self, s: str = ""):
        self.text.append(s)

    def render(self) -> str:
        if self.fmt == "json":
            rec = dict(self.record)
            rec["mode"] = "lenient" if self.lenient else "strict"
            return json.dumps(rec, indent=2, ensure_ascii=False, default=str) + "\n"
        if self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if self.header:
                w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        lines = list(self.text)
        if self.lenient:
            lines.insert(0, "mode: lenient (axiom (5) not enforced)")
        return "\n".join(lines) + "\n"


def _base(value: str):
    if value == "2":
        return 2
    if value == "e":
        return "e"
    raise argparse.ArgumentTypeError("log base must be 2 or e")


def _positive_float(value: str) -> float:
    v = float(value)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _positive_int(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _load(path_or_name: str):
    """A JSON file, or the name of a bundled algebra."""
    p = Path(path_or_name)
    if p.exists():
        return docs.read_json(p)
    if path_or_name.lower() in docs.NAMED_ALGEBRAS:
        return path_or_name
    raise StructuralError(f"no such file: {path_or_name}")


def _lenient(args) -> bool:
    return getattr(args, "mode", "strict") == "lenient"


# --- commands ----------------------------------------------------------------------


def cmd_check(args, out: Output) -> int:
    doc = _load(args.algebra)
    elements, arrow, unit = docs.raw_algebra(doc)
    rep = check_axioms(arrow, unit, elements, skip=(5,) if _lenient(args) else ())
    out.record = {"valid": rep.passed, "violations": [{"axiom": ax, "witness": list(w)} for ax, w in rep.violations]}
    out.header = ("axiom", "witness")
    out.rows = [(ax, " ".join(w)) for ax, w in rep.violations]
    if rep.passed:
        out.line("L-algebra: valid")
        return EXIT_OK
    out.line("L-algebra: invalid")
    for ax, w in rep.violations:
        out.line(f"  axiom ({ax}) fails at ({', '.join(w)})")
    return EXIT_FAIL


def cmd_order(args, out: Output) -> int:
    L = docs.algebra_from_doc(_load(args.algebra), lenient=_lenient(args))
    o = induced_order(L)
    pairs = [(L.name(x), L.name(y)) for x in range(L.n) for y in range(L.n) if x != y and (x, y) in o]
    laws = check_derived_laws(L)
    checks = {
        "swap_identity": laws.swap_identity,
        "unit_distribution": laws.unit_distribution,
        "right_monotone": laws.right_monotone,
    }
    out.record = {
        "elements": list(L.elements),
        "order": [list(p) for p in pairs],
        "partial_order": o.is_partial_order(),
        "laws": {k: (None if w is None else list(w)) for k, w in checks.items()},
        "equivalent_conditions": laws.equivalence,
    }
    out.header = ("below", "above")
    out.rows = pairs
    out.line("order: " + ", ".join(f"{a} ≤ {b}" for a, b in pairs))
    out.line(f"partial order: {o.is_partial_order()}")
    for k, w in checks.items():
        out.line(f"{k}: " + ("holds" if w is None else f"fails at ({', '.join(w)})"))
    out.line("equivalent conditions: " + ", ".join(f"{k}={v}" for k, v in laws.equivalence.items()))
    return EXIT_OK


def cmd_operators(args, out: Output) -> int:
    doc = _load(args.algebra)
    if isinstance(doc, dict) and "map" in doc:
        op = docs.operator_from_doc(doc, lenient=_lenient(args))
        L = op.algebra
        why = closure_failure(op)
        # simple elements are only defined for L-operators
        simple = L.names(sorted(simple_elements(op))) if is_l_operator(op) else []
        out.record = {"closure_operator": why is None, "simple_elements": simple, "failure": None if why is None else [why[0], L.names(why[1])]}
        out.line("closure operator: " + ("yes" if why is None else f"no ({why[0]} at {L.names(why[1])})"))
        out.line("simple elements: {" + ", ".join(simple) + "}")
        if not args.enumerate:
            return EXIT_OK if why is None else EXIT_FAIL
    else:
        L = docs.algebra_from_doc(doc, lenient=_lenient(args))
    P = enumerate_closure_operators(L)
    rep = maximal_operators(L, P) if L.n > 1 else None
    listing = [op.as_names() for op in P]
    out.record.update({"count": len(P), "operators": listing})
    if rep is not None:
        out.record["maximal"] = [op.as_names() for op in rep.maximal]
        out.record["l_a"] = {
            L.name(a): {"closure": rep.l_a_closure[a], "maximal": rep.l_a_maximal[a]} for a in rep.l_a
        }
    out.header = ("index",) + tuple(L.elements) + ("simple", "inf_simple")
    for i, op in enumerate(P):
        inf_ok = check_inf_simple_characterization(op).holds
        out.rows.append((i, *(L.name(v) for v in op.values), " ".join(L.names(sorted(simple_elements(op)))), inf_ok))
    out.line(f"closure operators: {len(P)}")
    for i, op in enumerate(P):
        out.line(f"  [{i}] " + " ".join(f"{k}->{v}" for k, v in op.as_names().items()))
    if rep is not None:
        out.line(f"maximal below ω: {len(rep.maximal)}")
        for a in rep.l_a:
            out.line(f"  l_{L.name(a)}: closure={rep.l_a_closure[a]} maximal={rep.l_a_maximal[a]}")
    return EXIT_OK


def cmd_partitions(args, out: Output) -> int:
    m = docs.state_from_doc(docs.read_json(args.state), lenient=_lenient(args))
    parts = list(enumerate_partitions(m, args.max_blocks, distinct=args.distinct))
    out.record = {"count": len(parts), "partitions": [p.names() for p in parts]}
    out.header = ("blocks", "measures")
    out.rows = [(" ".join(p.names()), " ".join(str(v) for v in p.measures)) for p in parts]
    out.line(f"partitions with at most {args.max_blocks} blocks: {len(parts)}")
    for p in parts:
        out.line("  (" + ", ".join(p.names()) + ")  m = " + ", ".join(str(v) for v in p.measures))
    return EXIT_OK


def _given(spec: str, m):
    """``--given``: a partition document (its state must match) or an inline JSON list of blocks."""
    p = Path(spec)
    if p.exists():
        doc = docs.read_json(p)
        return docs.partition_from_doc(doc, state=m) if isinstance(doc, dict) else validate_partition(doc, m)
    try:
        blocks = json.loads(spec)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"--given: not a file and not JSON ({exc.msg} at column {exc.colno})") from None
    return validate_partition(blocks, m)


def cmd_entropy(args, out: Output) -> int:
    xi = docs.partition_from_doc(docs.read_json(args.partition), lenient=_lenient(args))
    unit = "bits" if args.base == 2 else "nats"
    if args.given:
        eta = _given(args.given, xi.state)
        h = conditional_entropy(xi, eta, args.base)
        label = f"H(ξ|η) = {h.value!r} {unit}"
        out.record = {"xi": xi.names(), "eta": eta.names(), "conditional_entropy": h.value, "zero": h.is_zero, "base": str(args.base)}
    else:
        h = entropy(xi, args.base)
        label = f"H(ξ) = {h.value!r} {unit}"
        out.record = {"xi": xi.names(), "entropy": h.value, "zero": h.is_zero, "base": str(args.base)}
    out.header = tuple(out.record)
    out.rows = [tuple(out.record.values())]
    out.line(label)
    out.line(f"exactly zero: {h.is_zero}")
    return EXIT_OK


def cmd_dynamics(args, out: Output) -> int:
    sysm = docs.system_from_doc(docs.read_json(args.system), lenient=_lenient(args))
    out.record = {"N": args.N, "max_blocks": args.max_blocks, "tolerance": args.tol}
    if args.xi:
        xi = _given(args.xi, sysm.m)
        est = entropy_rate(sysm, xi, args.N, args.tol)
        out.record.update(
            {
                "xi": xi.names(),
                "a_n": list(est.values),
                "rate": est.rate,
                "converged": est.converged,
                "conditional": list(est.conditional),
                "conditional_rate": est.conditional_rate,
                "conditional_converged": est.conditional_converged,
                "subadditivity_violations": [list(v) for v in est.subadditivity_violations()],
            }
        )
        out.header = ("n", "a_n", "a_n/n", "conditional")
        out.rows = [
            (n, a, a / n, est.conditional[n - 1] if n - 1 < len(est.conditional) else "")
            for n, a in enumerate(est.values, start=1)
        ]
        out.line(f"h_N(T, ξ) = {est.rate!r}  (N = {args.N}, converged: {est.converged})")
        out.line(f"conditional estimate = {est.conditional_rate!r}  (converged: {est.conditional_converged})")
        out.line(f"subadditivity certificate: {est.subadditivity_violations() or 'ok'}")
    se = system_entropy(sysm, args.max_blocks, args.N)
    out.record.update({"system_entropy": se.value, "argmax": se.argmax.names() if se.argmax else None, "partitions": se.partitions})
    if not args.xi:
        out.header = ("system_entropy", "argmax", "partitions", "max_blocks", "N")
        out.rows = [(se.value, " ".join(se.argmax.names()) if se.argmax else "", se.partitions, args.max_blocks, args.N)]
    out.line(f"h(T) ≈ {se.value!r} over {se.partitions} partitions with ≤ {args.max_blocks} blocks")
    return EXIT_OK


def cmd_enumerate(args, out: Output) -> int:
    algebras = list(enumerate_l_algebras(args.order, up_to_iso=args.up_to_iso, cap=args.max_order))
    out.record = {"order": args.order, "up_to_iso": args.up_to_iso, "count": len(algebras), "algebras": [L.to_document() for L in algebras]}
    out.header = ("index", "table")
    out.rows = [(i, json.dumps(L.to_document()["arrow"])) for i, L in enumerate(algebras)]
    kind = "isomorphism classes" if args.up_to_iso else "labelled tables"
    out.line(f"L-algebras of order {args.order}: {len(algebras)} {kind}")
    if args.list:
        for i, L in enumerate(algebras):
            out.line(f"  [{i}] " + json.dumps(L.to_document()["arrow"]))
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    rep = verify_bundle(args.bundle)
    out.lenient = out.lenient or bool(rep.lenient_scenarios)
    out.record = rep.to_dict()
    out.header = ("claim_id", "module", "verdict", "holds", "fails", "hypothesis-not-met", "not-assertable", "statement", "note")
    reader = csv.reader(io.StringIO(rep.to_csv()))
    next(reader, None)
    out.rows = list(reader)
    out.text = rep.to_text().rstrip("\n").split("\n")
    return rep.exit_code


COMMANDS = {
    "check": cmd_check,
    "order": cmd_order,
    "operators": cmd_operators,
    "partitions": cmd_partitions,
    "entropy": cmd_entropy,
    "dynamics": cmd_dynamics,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--mode", choices=("strict", "lenient"), default="strict")
    common.add_argument("--lenient", dest="mode", action="store_const", const="lenient", help="same as --mode lenient")

    p = argparse.ArgumentParser(prog="lalg", description="Exact computation on finite L-algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="check axioms (1)-(5) on a table")
    s.add_argument("algebra", help="algebra JSON file or bundled name (table1, luk3, ...)")

    s = sub.add_parser("order", parents=[common], help="induced order and derived laws")
    s.add_argument("algebra")

    s = sub.add_parser("operators", parents=[common], help="closure operators of an algebra, or test one operator")
    s.add_argument("algebra", help="algebra document, or an operator document {algebra, map}")
    s.add_argument("--enumerate", action="store_true", help="also list Ω(L) when given an operator document")

    s = sub.add_parser("partitions", parents=[common], help="enumerate partitions of unity under a state")
    s.add_argument("state", help="state JSON {algebra, values}")
    s.add_argument("--max-blocks", type=_positive_int, default=3)
    s.add_argument("--distinct", action="store_true", help="only partitions with pairwise distinct blocks")

    s = sub.add_parser("entropy", parents=[common], help="entropy or conditional entropy of a partition")
    s.add_argument("partition", help="partition JSON {state, blocks}")
    s.add_argument("--given", help="conditioning partition: JSON file or inline block list")
    s.add_argument("--base", type=_base, default=2, help="2 (bits) or e (nats)")

    s = sub.add_parser("dynamics", parents=[common], help="entropy rate and system entropy")
    s.add_argument("system", help="system JSON {algebra, T, state}")
    s.add_argument("--xi", help="partition: JSON file or inline block list")
    s.add_argument("--N", type=_positive_int, default=DEFAULT_N)
    s.add_argument("--max-blocks", type=_positive_int, default=DEFAULT_MAX_BLOCKS)
    s.add_argument("--tol", type=_positive_float, default=RATE_TOL)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate L-algebras of a given order")
    s.add_argument("--order", type=_positive_int, required=True)
    s.add_argument("--up-to-iso", action="store_true")
    s.add_argument("--max-order", type=_positive_int, default=5)
    s.add_argument("--list", action="store_true", help="print every table")

    s = sub.add_parser("verify", parents=[common], help="run the claim registry on a scenario bundle")
    s.add_argument("--bundle", choices=sorted(BUNDLES), default="paper")
    return p


def _emit(text: str, dest: str | None):
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format, lenient=_lenient(args))
    try:
        code = COMMANDS[args.command](args, out)
    except (AxiomError, StateError, LSystemError, MeasureNotOne, OrthogonalityViolation) as exc:
        out.record = {"error": type(exc).__name__, "detail": str(exc)}
        out.rows = [(type(exc).__name__, str(exc))]
        out.header = ("error", "detail")
        out.text = [f"{type(exc).__name__}: {exc}"]
        _emit(out.render(), args.out)
        return EXIT_FAIL
    except (StructuralError, CapacityError, LAlgebraError, OSError) as exc:
        sys.stderr.write(f"lalg: {type(exc).__name__}: {exc}\n")
        return EXIT_STRUCTURAL
    _emit(out.render(), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
