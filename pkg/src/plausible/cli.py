"""Command line front end.

Exit codes: 0 success (coherent / valid / no violations), 1 incoherent or a
violation, 2 malformed input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .algebra import Event, atoms_of
from .axioms import cox_check, dt_check, kolmogorov_check
from .coherence import assessment_preorder, check_coherence
from .documents import (
    SYSTEMS,
    dumps,
    expectation_to_dict,
    parse_document,
    parse_vector,
    read_json,
    witness_to_dict,
)
from .errors import IncoherentAssessmentError, InputError, ResourceLimitError
from .expectation import conditional_expectation
from .oracle import oracle_expectation
from .rules import fuzz_rules

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _doc(path, system: Optional[str] = None):
    raw = read_json(path)
    if system is not None and isinstance(raw, dict) and isinstance(raw.get("table"), dict):
        raw = dict(raw)
        raw["table"] = dict(raw["table"], system=system)
    return parse_document(raw)


def _incoherent(w):
    _emit({"verdict": "incoherent", "witness": witness_to_dict(w)})
    return EXIT_FAIL


def cmd_check(args) -> int:
    doc = _doc(args.file)
    if doc.assessment is None:
        raise InputError("document has no entries")
    verdict = check_coherence(doc.assessment)
    if verdict.coherent:
        _emit({"verdict": "coherent"})
        return EXIT_OK
    return _incoherent(verdict.witness)


def _query(doc, args):
    x = parse_vector(args.x, doc.dim)
    given = Event.one(doc.dim) if args.given is None else parse_vector(args.given, doc.dim)
    if any(c not in (0, 1) for c in given):
        raise InputError("--given must be a 0/1 vector")
    given = Event(given)
    if given.mask == 0:
        raise InputError("--given must be a nonzero event")
    return x, given


def _expect_with(p, x, given, args, cone: bool) -> int:
    res = conditional_expectation(p, x, given)
    out = expectation_to_dict(res, decimal=args.decimal)
    code = EXIT_OK
    if getattr(args, "oracle", False):
        if not cone:
            raise InputError("--oracle needs a preorder section")
        other = oracle_expectation(p, x, given)
        agree = other == res
        out["oracle"] = {"agrees": agree, **expectation_to_dict(other)}
        if not agree:
            code = EXIT_FAIL
    _emit(out)
    return code


def cmd_expect(args) -> int:
    doc = _doc(args.file)
    x, given = _query(doc, args)
    if doc.preorder is not None:
        return _expect_with(doc.preorder, x, given, args, cone=True)
    if doc.assessment is not None:
        return _extend_doc(doc, x, given, args)
    raise InputError("document needs a preorder section or entries")


def _extend_doc(doc, x, given, args) -> int:
    try:
        p = assessment_preorder(doc.assessment)
    except IncoherentAssessmentError as exc:
        return _incoherent(exc.witness)
    return _expect_with(p, x, given, args, cone=False)


def cmd_extend(args) -> int:
    doc = _doc(args.file)
    if doc.assessment is None:
        raise InputError("document has no entries")
    x, given = _query(doc, args)
    return _extend_doc(doc, x, given, args)


def cmd_rules(args) -> int:
    doc = _doc(args.file)
    if doc.preorder is not None:
        p = doc.preorder
    elif doc.assessment is not None:
        try:
            p = assessment_preorder(doc.assessment)
        except IncoherentAssessmentError as exc:
            return _incoherent(exc.witness)
    else:
        raise InputError("document needs a preorder section or entries")
    report = fuzz_rules(p, trials=args.trials, seed=args.seed)
    if args.json:
        _emit(report.as_dict())
    else:
        sys.stdout.write(report.as_text() + "\n")
    return EXIT_OK if report.clean else EXIT_FAIL


_CHECKERS = {"kolmogorov": kolmogorov_check, "cox": cox_check, "dupre-tipler": dt_check}


def cmd_axioms(args) -> int:
    system = None
    if args.system is not None:
        system = SYSTEMS.get(args.system.lower())
        if system is None:
            raise InputError(f"unknown system {args.system!r}")
    doc = _doc(args.file, system)
    if doc.table is None:
        raise InputError("document has no table section")
    if doc.system is None:
        raise InputError("table has no known system tag")
    report = _CHECKERS[doc.system](doc.table)
    _emit(report.as_dict())
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_atoms(args) -> int:
    doc = _doc(args.file)
    if not doc.events:
        raise InputError("document has no events")
    atoms = atoms_of(doc.events, doc.dim)
    _emit({"atoms": [[int(c) for c in a] for a in atoms]})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plausible",
        description="Exact plausible preorders, conditional expectations and coherence.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide coherence of the document's entries")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    for name, func, text in (
        ("expect", cmd_expect, "E(X|C) under the preorder, or extension of the entries"),
        ("extend", cmd_extend, "E(X|C) of the coherent extension of the entries"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--x", required=True, help="comma-separated rationals, e.g. 3,5")
        p.add_argument("--given", help="0/1 condition vector (default: sure event)")
        p.add_argument("--decimal", action="store_true", help="add rounded (inexact) decimals")
        if name == "expect":
            p.add_argument("--oracle", action="store_true", help="cross-check with the elimination oracle")
        p.set_defaults(func=func)

    p = sub.add_parser("rules", help="fuzz every rule on the document's preorder")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("axioms", help="check the document's plausible-value table")
    p.add_argument("file")
    p.add_argument("--system", help="kolmogorov, cox or dupre-tipler (default: table tag)")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("atoms", help="atoms of the algebra generated by the events")
    p.add_argument("file")
    p.set_defaults(func=cmd_atoms)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RESOURCE
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
