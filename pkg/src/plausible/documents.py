"""JSON problem documents and deterministic serialisation of results.

A document is one JSON object::

    {
      "dim": 2,
      "preorder":   {"generators": [[1, -1]], "relation": [[X, Y], ...],
                     "equivalences": [[X, Y], ...], "named": "coin"},
      "entries":    [{"x": [1, 0], "given": [1, 1], "value": "1/2"}, ...],
      "table":      {"system": "kolmogorov" | "cox" | "dupre-tipler",
                     "entries": [...], "conditions": [[1, 1], ...]},
      "events":     [[1, 1, 0], [0, 1, 1]]
    }

Every section except ``dim`` is optional.  Numbers are JSON integers or
strings such as ``"-3/4"``, ``"0.25"``, ``"inf"``; JSON floats are refused
because they are already rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .algebra import Event, RandomQuantity
from .assessment import Assessment, AssessmentEntry, BetTerm, EventTerm, Witness
from .axioms import CoxTable, DTTable, KolmogorovTable
from .errors import InputError
from .exact import format_ext, format_rational, is_finite, parse_ext, parse_rational
from .preorder import (
    ConePreorder,
    coin_preorder,
    greatest_preorder,
    orthant_preorder,
)

__all__ = [
    "ProblemDocument",
    "SYSTEMS",
    "load_document",
    "read_json",
    "parse_document",
    "parse_vector",
    "witness_to_dict",
    "witness_from_dict",
    "expectation_to_dict",
    "to_decimal",
    "dumps",
]

SYSTEMS = {
    "kolmogorov": "kolmogorov",
    "kolmogorovian": "kolmogorov",
    "cox": "cox",
    "coxian": "cox",
    "dupre-tipler": "dupre-tipler",
    "dupre-tiplerian": "dupre-tipler",
    "dt": "dupre-tipler",
}


@dataclass
class ProblemDocument:
    dim: int
    preorder: Optional[ConePreorder] = None
    assessment: Optional[Assessment] = None
    table: object = None
    system: Optional[str] = None
    events: Optional[list] = None


def _number(v, ext=False):
    if isinstance(v, bool) or isinstance(v, float):
        raise InputError(f"number {v!r} must be an integer or a quoted rational")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_ext(v) if ext else parse_rational(v)
    raise InputError(f"expected a number, got {v!r}")


def _vector(v, n, what) -> RandomQuantity:
    if not isinstance(v, list):
        raise InputError(f"{what} must be a list")
    if len(v) != n:
        raise InputError(f"{what} has length {len(v)}, expected {n}")
    return RandomQuantity([_number(c) for c in v])


def _event(v, n, what) -> Event:
    q = _vector(v, n, what)
    if any(c not in (0, 1) for c in q):
        raise InputError(f"{what} must be a 0/1 vector")
    return Event(q)


def parse_vector(text: str, n: Optional[int] = None) -> RandomQuantity:
    """Comma-separated rationals, as given on the command line."""
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise InputError(f"malformed vector {text!r}")
    q = RandomQuantity([parse_rational(p) for p in parts])
    if n is not None and q.dim != n:
        raise InputError(f"vector {text!r} has length {q.dim}, expected {n}")
    return q


def _preorder(sec, n) -> ConePreorder:
    if not isinstance(sec, dict):
        raise InputError("preorder section must be an object")
    unknown = set(sec) - {"generators", "relation", "equivalences", "named"}
    if unknown:
        raise InputError(f"unknown preorder keys {sorted(unknown)}")
    gens = []
    if "named" in sec:
        named = {"coin": coin_preorder, "orthant": orthant_preorder, "greatest": greatest_preorder}
        key = sec["named"]
        if key not in named:
            raise InputError(f"unknown named preorder {key!r}")
        if key == "coin":
            if n != 2:
                raise InputError("the coin preorder has dimension 2")
            gens.extend(coin_preorder().generators)
        else:
            gens.extend(named[key](n).generators)
    for i, g in enumerate(sec.get("generators", [])):
        gens.append(_vector(g, n, f"generator {i}"))
    for i, pair in enumerate(sec.get("relation", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"relation pair {i} must be [X, Y]")
        gens.append(_vector(pair[1], n, "Y") - _vector(pair[0], n, "X"))
    for i, pair in enumerate(sec.get("equivalences", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"equivalence pair {i} must be [X, Y]")
        d = _vector(pair[1], n, "Y") - _vector(pair[0], n, "X")
        gens.extend([d, -d])
    return ConePreorder(n, gens)


def _entries(items, n) -> Assessment:
    if not isinstance(items, list):
        raise InputError("entries must be a list")
    out = []
    for i, e in enumerate(items):
        if not isinstance(e, dict) or not {"x", "given", "value"} <= set(e):
            raise InputError(f"entry {i} needs x, given and value")
        out.append(AssessmentEntry(
            _vector(e["x"], n, f"entry {i} x"),
            _event(e["given"], n, f"entry {i} given"),
            _number(e["value"], ext=True),
        ))
    return Assessment(n, tuple(out))


def _table(sec, n):
    if not isinstance(sec, dict):
        raise InputError("table section must be an object")
    system = SYSTEMS.get(str(sec.get("system", "")).lower())
    items = sec.get("entries", [])
    if not isinstance(items, list):
        raise InputError("table entries must be a list")

    def val(e, i):
        v = _number(e.get("value"), ext=True)
        if not is_finite(v):
            raise InputError(f"table entry {i} must have a finite value")
        return v

    if system == "kolmogorov":
        vals = {}
        for i, e in enumerate(items):
            vals[_event(e.get("event"), n, f"table entry {i} event")] = val(e, i)
        return KolmogorovTable(n, vals), system
    if system == "cox":
        vals = {}
        for i, e in enumerate(items):
            key = (_event(e.get("event"), n, f"table entry {i} event"),
                   _event(e.get("given"), n, f"table entry {i} given"))
            vals[key] = val(e, i)
        return CoxTable(n, vals), system
    if system == "dupre-tipler":
        vals = {}
        for i, e in enumerate(items):
            key = (_vector(e.get("x"), n, f"table entry {i} x"),
                   _event(e.get("given"), n, f"table entry {i} given"))
            vals[key] = val(e, i)
        conds = sec.get("conditions")
        if conds is not None:
            conds = [_event(c, n, "condition") for c in conds]
        return DTTable(n, vals, conds), system
    # unknown tag: keep the raw section so the caller decides how to fail
    return sec, None


def parse_document(obj) -> ProblemDocument:
    if not isinstance(obj, dict):
        raise InputError("document must be a JSON object")
    n = obj.get("dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError("document needs a positive integer dim")
    doc = ProblemDocument(dim=n)
    if "preorder" in obj:
        doc.preorder = _preorder(obj["preorder"], n)
    if "entries" in obj:
        doc.assessment = _entries(obj["entries"], n)
    if "table" in obj:
        doc.table, doc.system = _table(obj["table"], n)
    if "events" in obj:
        if not isinstance(obj["events"], list):
            raise InputError("events must be a list")
        doc.events = [_event(e, n, f"event {i}") for i, e in enumerate(obj["events"])]
    return doc


def read_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def load_document(source) -> ProblemDocument:
    """Parse a document from a path or an already-decoded object."""
    if isinstance(source, (str, Path)):
        return parse_document(read_json(source))
    return parse_document(source)


# -- output ------------------------------------------------------------------


def _bits(e: Event) -> list:
    return [int(c) for c in e]


def witness_to_dict(w: Witness) -> dict:
    return {
        "event_terms": [{"q": format_rational(t.q), "event": _bits(t.event)} for t in w.event_terms],
        "bet_terms": [
            {"entry": b.entry, "r": format_rational(b.r), "s": format_rational(b.s)}
            for b in w.bet_terms
        ],
    }


def witness_from_dict(d: dict, n: int) -> Witness:
    events = tuple(EventTerm(parse_rational(t["q"]), _event(t["event"], n, "witness event"))
                   for t in d.get("event_terms", []))
    bets = tuple(BetTerm(int(b["entry"]), parse_rational(b["r"]), parse_rational(b["s"]))
                 for b in d.get("bet_terms", []))
    return Witness(events, bets)


def to_decimal(x, digits: int = 20) -> str:
    """Rounded decimal rendering; inexact by construction."""
    if not is_finite(x):
        return format_ext(x)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def expectation_to_dict(res, decimal: bool = False) -> dict:
    out = {
        "defined": bool(res.defined),
        "value": format_ext(res.value) if res.defined else None,
        "lower": format_ext(res.lower),
        "upper": format_ext(res.upper),
    }
    if decimal:
        out["decimal_inexact"] = {
            k: (to_decimal(getattr(res, k)) if getattr(res, k) is not None else None)
            for k in ("value", "lower", "upper")
        }
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True)
