"""Checkers for three axiom systems of plausible values.

* Kolmogorovian: unconditional values on an event family closed under
  negation and conjunction; nonnegative, unitary, finitely additive.
* Coxian: values on ``F x F0``; positivity, negation formula, Bayes' rule.
  Derived facts (basic properties, sum rule, subadditivity) are reported
  separately as diagnostics.
* Dupre-Tiplerian: a partial table on quantities times a family of
  conditions closed under disjunction.  Event values must exist for every
  condition; homogeneity, additivity and Bayes' rule are checked wherever
  all their terms are in the table.

Each checker returns an :class:`AxiomReport`; ``report.valid`` is true when
no listed axiom is violated.  :func:`to_assessment` recasts any table as an
assessment for the coherence engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import Event, RandomQuantity, all_events, as_event
from .assessment import Assessment, AssessmentEntry
from .errors import InputError
from .exact import format_rational

__all__ = [
    "KolmogorovTable",
    "CoxTable",
    "DTTable",
    "AxiomViolation",
    "AxiomReport",
    "kolmogorov_check",
    "cox_check",
    "dt_check",
    "to_assessment",
]


def _bits(e: Event) -> str:
    return "".join(str(int(c)) for c in e)


def _vec(x: RandomQuantity) -> str:
    return "(" + ", ".join(format_rational(c) for c in x) + ")"


@dataclass(frozen=True)
class KolmogorovTable:
    dim: int
    values: Mapping  # Event -> Fraction

    def __post_init__(self):
        vals = {}
        for k, v in dict(self.values).items():
            e = as_event(k)
            if e.dim != self.dim:
                raise InputError(f"event {_bits(e)} does not have dimension {self.dim}")
            vals[e] = Fraction(v)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class CoxTable:
    dim: int
    values: Mapping  # (Event A, Event C) -> Fraction

    def __post_init__(self):
        vals = {}
        for (a, c), v in dict(self.values).items():
            a, c = as_event(a), as_event(c)
            if a.dim != self.dim or c.dim != self.dim:
                raise InputError(f"pair ({_bits(a)}, {_bits(c)}) does not have dimension {self.dim}")
            if c.mask == 0:
                raise InputError("conditioning event must be nonzero")
            vals[(a, c)] = Fraction(v)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class DTTable:
    """Partial table on quantities times ``conditions``.

    ``conditions`` defaults to the set of conditions occurring in ``values``.
    """

    dim: int
    values: Mapping  # (RandomQuantity X, Event C) -> Fraction
    conditions: tuple = None

    def __post_init__(self):
        vals = {}
        for (x, c), v in dict(self.values).items():
            x = x if isinstance(x, RandomQuantity) else RandomQuantity(x)
            x = RandomQuantity(x.components)  # events and quantities share keys
            c = as_event(c)
            if x.dim != self.dim or c.dim != self.dim:
                raise InputError(f"pair does not have dimension {self.dim}")
            if c.mask == 0:
                raise InputError("conditioning event must be nonzero")
            vals[(x, c)] = Fraction(v)
        conds = self.conditions
        if conds is None:
            conds = {c for _, c in vals}
        conds = tuple(sorted({as_event(c) for c in conds}, key=lambda e: e.mask))
        for c in conds:
            if c.dim != self.dim or c.mask == 0:
                raise InputError("conditions must be nonzero events of the table dimension")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "conditions", conds)


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    instance: str


@dataclass
class AxiomReport:
    system: str
    violations: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, axiom, instance):
        self.violations.append(AxiomViolation(axiom, instance))

    def note(self, fact, instance):
        self.diagnostics.append(AxiomViolation(fact, instance))

    def as_dict(self) -> dict:
        return {
            "system": self.system,
            "valid": self.valid,
            "violations": [{"axiom": v.axiom, "instance": v.instance} for v in self.violations],
            "diagnostics": [{"fact": d.axiom, "instance": d.instance} for d in self.diagnostics],
        }


# -- Kolmogorovian -----------------------------------------------------------


def kolmogorov_check(t: KolmogorovTable) -> AxiomReport:
    rep = AxiomReport("kolmogorov")
    pv = t.values
    fam = sorted(pv, key=lambda e: e.mask)
    if not fam:
        rep.add("closure", "empty domain")
        return rep
    for a in fam:
        if ~a not in pv:
            rep.add("closure", f"negation of {_bits(a)} missing")
    for a, b in itertools.combinations_with_replacement(fam, 2):
        if (a & b) not in pv:
            rep.add("closure", f"conjunction of {_bits(a)} and {_bits(b)} missing")
    for a in fam:
        if pv[a] < 0:
            rep.add("nonnegativity", f"PV({_bits(a)}) = {format_rational(pv[a])}")
    one = Event.one(t.dim)
    if pv.get(one) != 1:
        got = "missing" if one not in pv else format_rational(pv[one])
        rep.add("unitarity", f"PV(1) = {got}")
    for a, b in itertools.combinations_with_replacement(fam, 2):
        if (a & b).mask != 0:
            continue
        u = a | b
        if u not in pv:
            continue  # already reported as a closure failure
        if pv[u] != pv[a] + pv[b]:
            rep.add(
                "additivity",
                f"PV({_bits(u)}) = {format_rational(pv[u])} != "
                f"{format_rational(pv[a])} + {format_rational(pv[b])}",
            )
    return rep


# -- Coxian ------------------------------------------------------------------


def _cox_family(t: CoxTable):
    fam = set()
    for a, c in t.values:
        fam.add(a)
        fam.add(c)
    if not fam:
        raise InputError("empty table")
    for a in list(fam):
        for b in list(fam):
            if (a & b) not in fam or ~a not in fam:
                raise InputError("event family is not closed under negation and conjunction")
    fam = sorted(fam, key=lambda e: e.mask)
    for a in fam:
        for c in fam:
            if c.mask and (a, c) not in t.values:
                raise InputError(f"table has no value at ({_bits(a)} | {_bits(c)})")
    return fam


def cox_check(t: CoxTable) -> AxiomReport:
    rep = AxiomReport("cox")
    fam = _cox_family(t)
    pv = t.values
    nz = [c for c in fam if c.mask]
    for (a, c), v in sorted(pv.items(), key=lambda kv: (kv[0][0].mask, kv[0][1].mask)):
        if v < 0:
            rep.add("range", f"PV({_bits(a)} | {_bits(c)}) = {format_rational(v)} < 0")
    for c in nz:
        if not pv[(c, c)] > 0:
            rep.add("positivity", f"PV({_bits(c)} | {_bits(c)}) = {format_rational(pv[(c, c)])}")
    for a in fam:
        for c in nz:
            if pv[(~a, c)] != 1 - pv[(a, c)]:
                rep.add("negation", f"PV(1-{_bits(a)} | {_bits(c)}) != 1 - PV({_bits(a)} | {_bits(c)})")
    for a in fam:
        for c in fam:
            for d in nz:
                cd = c & d
                if cd.mask == 0:
                    continue
                lhs = pv[(a & c, d)]
                rhs = pv[(a, cd)] * pv[(c, d)]
                if lhs != rhs:
                    rep.add(
                        "bayes",
                        f"PV({_bits(a & c)} | {_bits(d)}) = {format_rational(lhs)} != "
                        f"PV({_bits(a)} | {_bits(cd)}) PV({_bits(c)} | {_bits(d)}) = {format_rational(rhs)}",
                    )
    _cox_derived(rep, fam, nz, pv)
    return rep


def _cox_derived(rep, fam, nz, pv):
    n = fam[0].dim
    one, zero = Event.one(n), Event.zero(n)
    for c in nz:
        for what, got in (("PV(C|C) = 1", pv[(c, c)]), ("PV(1|C) = 1", pv[(one, c)])):
            if got != 1:
                rep.note("basic properties", f"{what} fails at C={_bits(c)}")
        if pv[(zero, c)] != 0:
            rep.note("basic properties", f"PV(0|C) = 0 fails at C={_bits(c)}")
        for a in fam:
            if pv[(a & c, c)] != pv[(a, c)]:
                rep.note("basic properties", f"PV(AC|C) = PV(A|C) fails at A={_bits(a)}, C={_bits(c)}")
    for a, b in itertools.combinations_with_replacement(fam, 2):
        if (a & b).mask:
            continue
        for c in nz:
            if pv[(a | b, c)] != pv[(a, c)] + pv[(b, c)]:
                rep.note("sum rule", f"A={_bits(a)}, B={_bits(b)}, C={_bits(c)}")
    for size in (2, 3):
        for group in itertools.combinations(fam, size):
            u = zero
            for a in group:
                u = u | a
            for c in nz:
                if pv[(u, c)] > sum(pv[(a, c)] for a in group):
                    rep.note("subadditivity", f"{[_bits(a) for a in group]} given {_bits(c)}")


# -- Dupre-Tiplerian ---------------------------------------------------------


def dt_check(t: DTTable) -> AxiomReport:
    rep = AxiomReport("dupre-tipler")
    conds = t.conditions
    cset = set(conds)
    for c in conds:
        for d in conds:
            if (c | d) not in cset:
                raise InputError(f"conditions not closed under disjunction: {_bits(c)} or {_bits(d)}")
    n = t.dim
    pv = t.values
    for (x, c) in pv:
        if c not in cset:
            raise InputError(f"condition {_bits(c)} is not among the declared conditions")
    for c in conds:
        for a in all_events(n):
            key = (RandomQuantity(a.components), c)
            if key not in pv:
                rep.add("nonnegativity", f"PV({_bits(a)} | {_bits(c)}) missing")
            elif pv[key] < 0:
                rep.add("nonnegativity", f"PV({_bits(a)} | {_bits(c)}) = {format_rational(pv[key])}")
        key = (RandomQuantity(c.components), c)
        if key in pv and not pv[key] > 0:
            rep.add("positivity", f"PV({_bits(c)} | {_bits(c)}) = {format_rational(pv[key])}")
    by_cond = {}
    for (x, c), v in pv.items():
        by_cond.setdefault(c, {})[x] = v
    for c in conds:
        rows = by_cond.get(c, {})
        items = sorted(rows.items(), key=lambda kv: kv[0].components)
        for (x, vx), (y, vy) in itertools.product(items, repeat=2):
            r = _ratio(y, x)
            if r is not None and vy != r * vx:
                rep.add("homogeneity", f"PV({_vec(y)} | {_bits(c)}) != {format_rational(r)} PV({_vec(x)} | {_bits(c)})")
            s = x + y
            if s in rows and rows[s] != vx + vy:
                rep.add("additivity", f"PV({_vec(s)} | {_bits(c)}) != PV({_vec(x)}|.) + PV({_vec(y)}|.)")
    for d in conds:
        for c in all_events(n):
            cd = c & d
            if cd not in cset:
                continue
            for x, v in sorted(by_cond.get(cd, {}).items(), key=lambda kv: kv[0].components):
                xc = RandomQuantity((x * c).components)
                lhs = pv.get((xc, d))
                pc = pv.get((RandomQuantity(c.components), d))
                where = f"X={_vec(x)}, C={_bits(c)}, D={_bits(d)}"
                if lhs is None or pc is None:
                    rep.note("bayes coverage", f"{where}: left side not in table")
                elif lhs != v * pc:
                    rep.add("bayes", f"{where}: {format_rational(lhs)} != {format_rational(v)} * {format_rational(pc)}")
    return rep


def _ratio(y: RandomQuantity, x: RandomQuantity):
    """``r`` with ``y == r x``, or None; ``x`` must be nonzero."""
    r = None
    for a, b in zip(x, y):
        if a == 0:
            if b != 0:
                return None
            continue
        q = b / a
        if r is None:
            r = q
        elif q != r:
            return None
    return r


# -- recasting ---------------------------------------------------------------


def to_assessment(t) -> Assessment:
    """The table read as a list of conditional claims."""
    n = t.dim
    if isinstance(t, KolmogorovTable):
        one = Event.one(n)
        items = [(a, one, v) for a, v in t.values.items()]
    elif isinstance(t, (CoxTable, DTTable)):
        items = [(x, c, v) for (x, c), v in t.values.items()]
    else:
        raise InputError(f"not a plausible-value table: {type(t).__name__}")
    items.sort(key=lambda e: (e[1].mask, tuple(e[0])))
    return Assessment(n, tuple(AssessmentEntry(RandomQuantity(tuple(x)), c, v) for x, c, v in items))
