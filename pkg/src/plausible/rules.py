"""Executable checks of the rules conditional expectation obeys.

Each rule is a function of a preorder and a handful of arguments returning
:class:`Holds`, :class:`PreconditionUnmet` or :class:`Violation`.  A
violation on a genuine plausible preorder means a defect somewhere in this
package.  "Makes sense" preconditions are evaluated with the partial
extended arithmetic, so e.g. ``0 * inf`` leaves a rule unmet.

Existential side conditions ("there is a real ``p`` such that ...") are
searched over a caller-supplied ``p`` or a small fixed candidate list.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .algebra import Event, RandomQuantity, embed_scalar
from .errors import InputError
from .exact import INF, NEG_INF, UNDEFINED, ext_add, ext_div, ext_mul, format_ext, is_finite
from .preorder import Preorder

__all__ = [
    "RuleId",
    "Holds",
    "PreconditionUnmet",
    "Violation",
    "verify_rule",
    "fuzz_rules",
    "RulesReport",
    "POSITIVE_P",
]

POSITIVE_P = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))
_SIGNED_P = POSITIVE_P + tuple(-p for p in POSITIVE_P)


class RuleId(str, enum.Enum):
    CONSISTENCY = "consistency"
    REAL_ADDITIVITY = "real_additivity"
    GENERAL_ADDITIVITY = "general_additivity"
    HOMOGENEITY = "homogeneity"
    MONOTONICITY = "monotonicity"
    MIN_MAX = "min_max"
    COMPLETENESS_ZERO = "completeness_zero"
    COMPLETENESS_ONE = "completeness_one"
    SUBADDITIVITY = "subadditivity"
    BAYES_CHAIN = "bayes_chain"
    BAYES_CHAIN_ZERO_E = "bayes_chain_zero_e"
    BAYES_CHAIN_ZERO_P = "bayes_chain_zero_p"
    BAYES_CHAIN_INF_E = "bayes_chain_inf_e"
    BAYES_COND = "bayes_cond"
    BAYES_COND_ZERO_E = "bayes_cond_zero_e"
    BAYES_COND_INF_E = "bayes_cond_inf_e"
    BAYES_COND_ZERO_P = "bayes_cond_zero_p"
    BAYES_P_FORM = "bayes_p_form"
    BAYES_P_ZERO_E = "bayes_p_zero_e"
    BAYES_P_INF_E = "bayes_p_inf_e"


@dataclass(frozen=True)
class Holds:
    holds = True


@dataclass(frozen=True)
class PreconditionUnmet:
    reason: str
    holds = False


@dataclass(frozen=True)
class Violation:
    details: str
    holds = False


def _fmt(v):
    return format_ext(v) if v is UNDEFINED or not isinstance(v, RandomQuantity) else str(list(map(str, v)))


class _Ctx:
    """Expectation lookups with ``E(X | 0)`` treated as undefined."""

    def __init__(self, p: Preorder):
        self.p = p
        self.n = p.dim

    def e(self, x, c):
        if c.mask == 0:
            return UNDEFINED
        a = self.p.lower_bound(x, c)
        b = self.p.upper_bound(x, c)
        return a if a == b else UNDEFINED

    def prob(self, a, c):
        return self.e(a, c)

    def le(self, c, x, y):
        """``X <~_C Y``."""
        return self.p.nonstrict(x * c, y * c)

    def const(self, r):
        return embed_scalar(r, self.n)


def _is_inf(v):
    return v is INF or v is NEG_INF


def _same(lhs, rhs, what):
    if lhs is UNDEFINED or lhs != rhs:
        return Violation(f"{what}: left {_fmt(lhs)} != right {_fmt(rhs)}")
    return Holds()


def _search(ps, pred):
    for p in ps:
        if pred(p):
            return p
    return None


def _consistency(k, X, C, **_):
    e1, e2 = k.e(X, C), k.e(X * C, C)
    if (e1 is UNDEFINED) != (e2 is UNDEFINED):
        return Violation(f"existence differs: E(X|C)={_fmt(e1)}, E(XC|C)={_fmt(e2)}")
    if e1 is UNDEFINED:
        return Holds()
    return _same(e1, e2, "E(X|C) = E(XC|C)")


def _real_additivity(k, X, C, r, **_):
    e = k.e(X, C)
    if e is UNDEFINED:
        return PreconditionUnmet("E(X|C) undefined")
    return _same(k.e(X + r, C), ext_add(e, r), "E(X+r|C) = E(X|C)+r")


def _general_additivity(k, X, Y, C, **_):
    rhs = ext_add(k.e(X, C), k.e(Y, C))
    if rhs is UNDEFINED:
        return PreconditionUnmet("E(X|C)+E(Y|C) undefined")
    return _same(k.e(X + Y, C), rhs, "E(X+Y|C) = E(X|C)+E(Y|C)")


def _homogeneity(k, X, C, r, **_):
    rhs = ext_mul(r, k.e(X, C))
    if rhs is UNDEFINED:
        return PreconditionUnmet("r E(X|C) undefined")
    return _same(k.e(X * r, C), rhs, "E(rX|C) = rE(X|C)")


def _monotonicity(k, B, C, D, **_):
    if not B <= C:
        return PreconditionUnmet("B not below C")
    pb, pc = k.prob(B, D), k.prob(C, D)
    if pb is UNDEFINED or pc is UNDEFINED:
        return PreconditionUnmet("P(B|D) or P(C|D) undefined")
    if not pb <= pc:
        return Violation(f"P(B|D)={_fmt(pb)} > P(C|D)={_fmt(pc)}")
    return Holds()


def _min_max(k, C, D, **_):
    pc = k.prob(C, D)
    if pc is UNDEFINED:
        return PreconditionUnmet("P(C|D) undefined")
    n = k.n
    p0 = k.prob(Event.zero(n), D)
    pd = k.prob(D, D)
    p1 = k.prob(Event.one(n), D)
    if not (p0 == 0 and pd == 1 and p1 == 1 and 0 <= pc <= 1):
        return Violation(
            f"P(0|D)={_fmt(p0)}, P(C|D)={_fmt(pc)}, P(D|D)={_fmt(pd)}, P(1|D)={_fmt(p1)}"
        )
    return Holds()


def _completeness_zero(k, B, C, D, **_):
    if not C <= B:
        return PreconditionUnmet("C not below B")
    if k.prob(B, D) != 0:
        return PreconditionUnmet("P(B|D) != 0")
    return _same(k.prob(C, D), Fraction(0), "P(C|D) = 0")


def _completeness_one(k, B, C, D, **_):
    if not B <= C:
        return PreconditionUnmet("B not below C")
    if k.prob(B, D) != 1:
        return PreconditionUnmet("P(B|D) != 1")
    return _same(k.prob(C, D), Fraction(1), "P(C|D) = 1")


def _subadditivity(k, events, D, **_):
    if not events:
        return PreconditionUnmet("no events")
    ps = [k.prob(a, D) for a in events]
    union = Event.zero(k.n)
    for a in events:
        union = union | a
    pu = k.prob(union, D)
    if pu is UNDEFINED or any(v is UNDEFINED for v in ps):
        return PreconditionUnmet("some probability undefined")
    total = sum(ps, Fraction(0))
    if not pu <= total:
        return Violation(f"P(union|D)={_fmt(pu)} > sum={_fmt(total)}")
    return Holds()


def _bayes_chain(k, X, C, D, **_):
    rhs = ext_mul(k.e(X, C & D), k.prob(C, D))
    if rhs is UNDEFINED:
        return PreconditionUnmet("E(X|CD) P(C|D) undefined")
    return _same(k.e(X * C, D), rhs, "E(XC|D) = E(X|CD) P(C|D)")


def _bayes_chain_zero_e(k, X, C, D, **_):
    if k.e(X, C & D) != 0:
        return PreconditionUnmet("E(X|CD) != 0")
    return _same(k.e(X * C, D), Fraction(0), "E(XC|D) = 0")


def _bayes_chain_zero_p(k, X, C, D, p=None, **_):
    if k.prob(C, D) != 0:
        return PreconditionUnmet("P(C|D) != 0")
    cd = C & D
    found = _search(
        (p,) if p is not None else POSITIVE_P,
        lambda q: k.le(cd, k.const(-q), X) and k.le(cd, X, k.const(q)),
    )
    if found is None:
        return PreconditionUnmet("no p with -p <~_CD X <~_CD p")
    return _same(k.e(X * C, D), Fraction(0), f"E(XC|D) = 0 (p={found})")


def _bayes_chain_inf_e(k, X, C, D, p=None, **_):
    e = k.e(X, C & D)
    if not _is_inf(e):
        return PreconditionUnmet("E(X|CD) finite or undefined")
    found = _search(
        (p,) if p is not None else POSITIVE_P,
        lambda q: q > 0 and k.le(D, k.const(q), C),
    )
    if found is None:
        return PreconditionUnmet("no p > 0 with p <~_D C")
    return _same(k.e(X * C, D), e, "E(XC|D) = E(X|CD)")


def _bayes_cond(k, X, C, D, **_):
    rhs = ext_div(k.e(X * C, D), k.prob(C, D))
    if rhs is UNDEFINED:
        return PreconditionUnmet("E(XC|D) / P(C|D) undefined")
    return _same(k.e(X, C & D), rhs, "E(X|CD) = E(XC|D) / P(C|D)")


def _bayes_cond_zero_e(k, X, C, D, p=None, **_):
    if k.e(X * C, D) != 0:
        return PreconditionUnmet("E(XC|D) != 0")
    found = _search(
        (p,) if p is not None else POSITIVE_P,
        lambda q: q > 0 and k.le(D, k.const(q), C),
    )
    if found is None:
        return PreconditionUnmet("no p > 0 with p <~_D C")
    return _same(k.e(X, C & D), Fraction(0), "E(X|CD) = 0")


def _bayes_cond_inf_e(k, X, C, D, **_):
    e = k.e(X * C, D)
    if not _is_inf(e):
        return PreconditionUnmet("E(XC|D) finite or undefined")
    return _same(k.e(X, C & D), e, "E(X|CD) = E(XC|D)")


def _bayes_cond_zero_p(k, X, C, D, p=None, **_):
    if k.prob(C, D) != 0:
        return PreconditionUnmet("P(C|D) != 0")
    xc = X * C
    found = _search(
        (p,) if p is not None else _SIGNED_P,
        lambda q: k.le(D, k.const(1), xc * q),
    )
    if found is None:
        return PreconditionUnmet("no p with 1 <~_D pXC")
    if found == 0:
        return Violation("p = 0 satisfies 1 <~_D 0")
    return _same(k.e(X, C & D), ext_div(INF, found), f"E(X|CD) = +inf/p (p={found})")


def _bayes_p_form(k, X, C, D, **_):
    rhs = ext_div(k.e(X * C, D), k.e(X, C & D))
    if rhs is UNDEFINED:
        return PreconditionUnmet("E(XC|D) / E(X|CD) undefined")
    return _same(k.prob(C, D), rhs, "P(C|D) = E(XC|D) / E(X|CD)")


def _bayes_p_zero_e(k, X, C, D, p=None, **_):
    if k.e(X * C, D) != 0:
        return PreconditionUnmet("E(XC|D) != 0")
    cd = C & D
    found = _search(
        (p,) if p is not None else _SIGNED_P,
        lambda q: k.le(cd, k.const(1), X * q),
    )
    if found is None:
        return PreconditionUnmet("no p with 1 <~_CD pX")
    return _same(k.prob(C, D), Fraction(0), f"P(C|D) = 0 (p={found})")


def _bayes_p_inf_e(k, X, C, D, p=None, **_):
    if not _is_inf(k.e(X, C & D)):
        return PreconditionUnmet("E(X|CD) finite or undefined")
    xc = X * C
    found = _search(
        (p,) if p is not None else POSITIVE_P,
        lambda q: k.le(D, k.const(-q), xc) and k.le(D, xc, k.const(q)),
    )
    if found is None:
        return PreconditionUnmet("no p with -p <~_D XC <~_D p")
    return _same(k.prob(C, D), Fraction(0), "P(C|D) = 0")


_RULES: dict = {
    RuleId.CONSISTENCY: (_consistency, ("X", "C")),
    RuleId.REAL_ADDITIVITY: (_real_additivity, ("X", "C", "r")),
    RuleId.GENERAL_ADDITIVITY: (_general_additivity, ("X", "Y", "C")),
    RuleId.HOMOGENEITY: (_homogeneity, ("X", "C", "r")),
    RuleId.MONOTONICITY: (_monotonicity, ("B", "C", "D")),
    RuleId.MIN_MAX: (_min_max, ("C", "D")),
    RuleId.COMPLETENESS_ZERO: (_completeness_zero, ("B", "C", "D")),
    RuleId.COMPLETENESS_ONE: (_completeness_one, ("B", "C", "D")),
    RuleId.SUBADDITIVITY: (_subadditivity, ("events", "D")),
    RuleId.BAYES_CHAIN: (_bayes_chain, ("X", "C", "D")),
    RuleId.BAYES_CHAIN_ZERO_E: (_bayes_chain_zero_e, ("X", "C", "D")),
    RuleId.BAYES_CHAIN_ZERO_P: (_bayes_chain_zero_p, ("X", "C", "D")),
    RuleId.BAYES_CHAIN_INF_E: (_bayes_chain_inf_e, ("X", "C", "D")),
    RuleId.BAYES_COND: (_bayes_cond, ("X", "C", "D")),
    RuleId.BAYES_COND_ZERO_E: (_bayes_cond_zero_e, ("X", "C", "D")),
    RuleId.BAYES_COND_INF_E: (_bayes_cond_inf_e, ("X", "C", "D")),
    RuleId.BAYES_COND_ZERO_P: (_bayes_cond_zero_p, ("X", "C", "D")),
    RuleId.BAYES_P_FORM: (_bayes_p_form, ("X", "C", "D")),
    RuleId.BAYES_P_ZERO_E: (_bayes_p_zero_e, ("X", "C", "D")),
    RuleId.BAYES_P_INF_E: (_bayes_p_inf_e, ("X", "C", "D")),
}

_EVENT_ARGS = ("B", "C", "D")


def _normalize(p: Preorder, args: dict) -> dict:
    n = p.dim
    out = dict(args)
    for name in ("X", "Y"):
        if name in out:
            v = out[name]
            v = v if isinstance(v, RandomQuantity) else RandomQuantity(v)
            if v.dim != n:
                raise InputError(f"{name} has dimension {v.dim}, expected {n}")
            out[name] = v
    for name in _EVENT_ARGS:
        if name in out:
            v = out[name]
            v = v if isinstance(v, Event) else Event(v)
            if v.dim != n:
                raise InputError(f"{name} has dimension {v.dim}, expected {n}")
            out[name] = v
    if "events" in out:
        out["events"] = [e if isinstance(e, Event) else Event(e) for e in out["events"]]
    for name in ("r", "p"):
        if out.get(name) is not None:
            out[name] = Fraction(out[name])
    return out


def verify_rule(p: Preorder, rule, args: Optional[dict] = None, **kwargs):
    """Check one rule on ``p`` with the given arguments.

    ``C`` and ``D`` default to the sure event.
    """
    try:
        rid = RuleId(rule)
    except ValueError:
        raise InputError(f"unknown rule {rule!r}") from None
    fn, needed = _RULES[rid]
    merged = dict(args or {})
    merged.update(kwargs)
    merged.setdefault("C", Event.one(p.dim))
    merged.setdefault("D", Event.one(p.dim))
    missing = [a for a in needed if a not in merged]
    if missing:
        raise InputError(f"rule {rid.value} needs arguments {missing}")
    return fn(_Ctx(p), **_normalize(p, merged))


# -- fuzzing -----------------------------------------------------------------


@dataclass
class RulesReport:
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def record(self, rule: RuleId, outcome, args):
        c = self.counts.setdefault(rule.value, {"holds": 0, "unmet": 0, "violations": 0})
        if isinstance(outcome, Holds):
            c["holds"] += 1
        elif isinstance(outcome, PreconditionUnmet):
            c["unmet"] += 1
        else:
            c["violations"] += 1
            self.violations.append({"rule": rule.value, "details": outcome.details, "args": _describe(args)})

    def merge(self, other: "RulesReport"):
        for rule, c in other.counts.items():
            mine = self.counts.setdefault(rule, {"holds": 0, "unmet": 0, "violations": 0})
            for key, v in c.items():
                mine[key] += v
        self.violations.extend(other.violations)

    def as_dict(self) -> dict:
        return {
            "clean": self.clean,
            "counts": {r.value: self.counts.get(r.value, {"holds": 0, "unmet": 0, "violations": 0}) for r in RuleId},
            "violations": self.violations,
        }

    def as_text(self) -> str:
        lines = []
        for r in RuleId:
            c = self.counts.get(r.value, {"holds": 0, "unmet": 0, "violations": 0})
            lines.append(f"{r.value:<20} holds={c['holds']} unmet={c['unmet']} violations={c['violations']}")
        lines.append(f"violations: {len(self.violations)}")
        for v in self.violations:
            lines.append(f"  {v['rule']}: {v['details']} with {v['args']}")
        return "\n".join(lines)


def _describe(args: dict) -> dict:
    out = {}
    for key in sorted(args):
        v = args[key]
        if isinstance(v, Event):
            out[key] = [int(c) for c in v]
        elif isinstance(v, RandomQuantity):
            out[key] = [format_ext(c) for c in v]
        elif isinstance(v, list):
            out[key] = [[int(c) for c in e] for e in v]
        elif v is None:
            continue
        else:
            out[key] = format_ext(v)
    return out


def _rand_quantity(rng: random.Random, n: int) -> RandomQuantity:
    return RandomQuantity(Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2))) for _ in range(n))


def _rand_event(rng: random.Random, n: int, nonzero=False) -> Event:
    lo = 1 if nonzero else 0
    return Event(n=n, mask=rng.randint(lo, (1 << n) - 1))


def sample_args(p: Preorder, rule: RuleId, rng: random.Random) -> dict:
    """Arguments for ``rule`` biased towards meeting its preconditions."""
    n = p.dim
    k = _Ctx(p)
    X = _rand_quantity(rng, n)
    C = _rand_event(rng, n)
    D = _rand_event(rng, n, nonzero=True) if rng.random() < 0.7 else Event.one(n)
    args = {"X": X, "C": C, "D": D}
    if rule in (RuleId.REAL_ADDITIVITY, RuleId.HOMOGENEITY):
        args["r"] = Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3)))
    elif rule == RuleId.GENERAL_ADDITIVITY:
        args["Y"] = _rand_quantity(rng, n)
    elif rule == RuleId.MONOTONICITY:
        args["B"] = C & _rand_event(rng, n)
    elif rule == RuleId.COMPLETENESS_ZERO:
        B = _rand_event(rng, n) & ~D if rng.random() < 0.5 else _rand_event(rng, n)
        args["B"] = B
        args["C"] = B & _rand_event(rng, n)
    elif rule == RuleId.COMPLETENESS_ONE:
        B = _rand_event(rng, n) | D if rng.random() < 0.5 else _rand_event(rng, n)
        args["B"] = B
        args["C"] = B | _rand_event(rng, n)
    elif rule == RuleId.SUBADDITIVITY:
        args["events"] = [_rand_event(rng, n) for _ in range(rng.randint(1, 4))]
    elif rule in (RuleId.BAYES_CHAIN_ZERO_E,):
        e = k.e(X, C & D)
        if is_finite(e):
            args["X"] = X - e
    elif rule in (RuleId.BAYES_COND_ZERO_E, RuleId.BAYES_P_ZERO_E):
        e = k.e(X * C, D)
        pc = k.prob(C, D)
        if is_finite(e) and is_finite(pc) and pc != 0:
            args["X"] = X - e / pc
        elif rule == RuleId.BAYES_P_ZERO_E and rng.random() < 0.5:
            args["X"] = embed_scalar(1, n)
    return args



def fuzz_rules(p: Preorder, trials: int = 100, seed: int = 0,
               rules=None, progress: Optional[Callable] = None) -> RulesReport:
    """Deterministic sweep of every rule over ``trials`` sampled argument sets."""
    if trials < 1:
        raise InputError("trials must be at least 1")
    rng = random.Random(seed)
    report = RulesReport()
    ids = list(RuleId) if rules is None else [RuleId(r) for r in rules]
    for t in range(trials):
        for rid in ids:
            args = sample_args(p, rid, rng)
            outcome = verify_rule(p, rid, args)
            report.record(rid, outcome, args)
        if progress is not None:
            progress(t)
    return report
