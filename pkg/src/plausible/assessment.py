"""Conditional assessments and the linear programs over their bets.

An assessment is a finite list of claims ``E(X | D) = v``.  A *bet* on entry
``j`` is the quantity ``r * (X_j + s) * D_j`` and is admissible when its
margin ``r * (v_j + s)`` is strictly positive.  Writing ``t = r * s`` makes a
bet linear in ``(r, t)``; for finite ``v`` we further substitute
``t = mu - r * v`` so the margin is the single nonnegative variable ``mu``:

    finite v :  r free,  mu >= 0    bet = r * (X - v) * D + mu * D
    v = +inf :  r >= 0,  t free     bet = r * X * D + t * D
    v = -inf :  rho >= 0, t free    bet = -rho * X * D + t * D

Every question below is then a linear program over those columns.  Sets of
bets that can simultaneously carry strictly positive margins under homogeneous
sign constraints are closed under union, so a unique maximal such set exists;
:func:`max_positive_support` finds it with at most ``m + 1`` LPs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .algebra import Event, RandomQuantity, as_event
from .errors import InputError
from .exact import INF, ExtReal, ext_add, ext_mul, format_ext, is_finite, parse_ext

__all__ = ["AssessmentEntry", "Assessment", "Witness", "BetTerm", "EventTerm"]


@dataclass(frozen=True)
class AssessmentEntry:
    x: RandomQuantity
    given: Event
    value: ExtReal

    def __post_init__(self):
        x = self.x if isinstance(self.x, RandomQuantity) else RandomQuantity(self.x)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "given", as_event(self.given))
        object.__setattr__(self, "value", parse_ext(self.value))
        if self.given.dim != x.dim:
            raise InputError("entry quantity and condition differ in dimension")
        if self.given.mask == 0:
            raise InputError("conditioning event must be nonzero")

    def __str__(self):
        return f"E({list(map(str, self.x))} | {self.given!r}) = {format_ext(self.value)}"


@dataclass(frozen=True)
class Assessment:
    dim: int
    entries: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("dimension must be at least 1")
        entries = tuple(
            e if isinstance(e, AssessmentEntry) else AssessmentEntry(*e) for e in self.entries
        )
        seen = {}
        for e in entries:
            if e.x.dim != self.dim:
                raise InputError(f"entry {e} does not have dimension {self.dim}")
            key = (e.x, e.given)
            if key in seen and seen[key] != e.value:
                raise InputError(f"conflicting values for the same pair: {e}")
            seen[key] = e.value
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, dim, *triples):
        return cls(dim, tuple(AssessmentEntry(x, d, v) for x, d, v in triples))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, j):
        return self.entries[j]


@dataclass(frozen=True)
class EventTerm:
    q: Fraction
    event: Event


@dataclass(frozen=True)
class BetTerm:
    entry: int
    r: Fraction
    s: Fraction


@dataclass(frozen=True)
class Witness:
    """Dutch book: ``sum(q C) + sum(r (X_j + s) D_j) == 0`` with every margin positive."""

    event_terms: tuple
    bet_terms: tuple

    def total(self, assessment: Assessment) -> RandomQuantity:
        n = assessment.dim
        acc = [Fraction(0)] * n
        for t in self.event_terms:
            for k in t.event.indices:
                acc[k] += t.q
        for b in self.bet_terms:
            e = assessment[b.entry]
            for k in e.given.indices:
                acc[k] += b.r * (e.x[k] + b.s)
        return RandomQuantity(acc)


# -- bet columns -------------------------------------------------------------


@dataclass
class _Column:
    contrib: tuple  # effect on each coordinate
    sign: str


@dataclass
class _Candidate:
    columns: list
    margin: int  # index into columns of the margin variable (always nonneg)


def entry_candidate(entry: AssessmentEntry) -> _Candidate:
    n = entry.x.dim
    d = entry.given
    dvec = tuple(Fraction(c) for c in d.components)
    v = entry.value
    if is_finite(v):
        centered = tuple((entry.x[k] - v) * d[k] for k in range(n))
        return _Candidate([_Column(centered, lp.FREE), _Column(dvec, lp.NONNEG)], 1)
    xd = tuple(entry.x[k] * d[k] for k in range(n))
    if v is INF:
        return _Candidate([_Column(xd, lp.NONNEG), _Column(dvec, lp.FREE)], 0)
    return _Candidate([_Column(tuple(-c for c in xd), lp.NONNEG), _Column(dvec, lp.FREE)], 0)


def target_candidate(z: RandomQuantity) -> _Candidate:
    """Column ``-tau * Z`` with ``tau >= 0`` playing the role of a margin."""
    return _Candidate([_Column(tuple(-c for c in z), lp.NONNEG)], 0)


def bet_parameters(entry: AssessmentEntry, values: Sequence[Fraction]):
    """``(r, t)`` of the bet ``r X D + t D`` described by candidate column values."""
    v = entry.value
    if is_finite(v):
        r, mu = values
        return r, mu - r * v
    if v is INF:
        return values[0], values[1]
    return -values[0], values[1]


def _layout(cands: Sequence[_Candidate]):
    offsets, signs, pos = [], [], 0
    for c in cands:
        offsets.append(pos)
        for col in c.columns:
            signs.append(col.sign)
        pos += len(c.columns)
    return offsets, signs, pos


def _coordinate_rows(cands, offsets, nvars, coords, extra=None, rhs=None, width=None):
    """Rows ``sum(contrib_k * vars) (+ extra_k * y) <= rhs_k`` for ``k`` in coords."""
    rows = []
    total = width if width is not None else nvars
    for k in coords:
        coeffs = [Fraction(0)] * total
        for c, off in zip(cands, offsets):
            for i, col in enumerate(c.columns):
                coeffs[off + i] = col.contrib[k]
        if extra is not None:
            coeffs[nvars] = extra[k]
        if not any(coeffs) and (rhs is None or rhs[k] >= 0):
            continue
        rows.append(lp.Constraint(tuple(coeffs), lp.LE, rhs[k] if rhs is not None else 0))
    return rows


def max_positive_support(cands: Sequence[_Candidate], coords: Sequence[int]):
    """Largest index set ``S`` whose candidates admit strictly positive margins.

    Constraints: for each coordinate ``k`` in ``coords`` the summed
    contributions of the candidates in ``S`` are ``<= 0``; candidates outside
    ``S`` are absent.  Returns ``(S, values)`` where ``values[j]`` are the
    column values of candidate ``j`` in a solution realising all of ``S``.
    """
    active = list(range(len(cands)))
    while active:
        sub = [cands[j] for j in active]
        offsets, signs, nvars = _layout(sub)
        width = nvars + len(sub)
        rows = _coordinate_rows(sub, offsets, nvars, coords, width=width)
        for i, (c, off) in enumerate(zip(sub, offsets)):
            coeffs = [Fraction(0)] * width
            coeffs[nvars + i] = Fraction(1)
            coeffs[off + c.margin] = Fraction(-1)
            rows.append(lp.Constraint(tuple(coeffs), lp.LE, 0))
            cap = [Fraction(0)] * width
            cap[nvars + i] = Fraction(1)
            rows.append(lp.Constraint(tuple(cap), lp.LE, 1))
        objective = [Fraction(0)] * nvars + [Fraction(1)] * len(sub)
        problem = lp.LinearProgram(
            width, tuple(rows), objective=tuple(objective), maximize=True,
            signs=tuple(signs) + (lp.NONNEG,) * len(sub),
        )
        out = lp.solve(problem)
        assert isinstance(out, lp.Optimal), "support LP is always feasible and bounded"
        deltas = out.point[nvars:]
        keep = [j for j, dlt in zip(active, deltas) if dlt > 0]
        if len(keep) == len(active):
            values = {}
            for j, c, off in zip(active, sub, offsets):
                values[j] = out.point[off:off + len(c.columns)]
            return tuple(active), values
        active = keep
    return (), {}


def normalized_book(cands: Sequence[_Candidate], coords: Sequence[int]):
    """Column values with every margin ``>= 1`` and contributions ``<= 0``, or ``None``."""
    offsets, signs, nvars = _layout(cands)
    rows = _coordinate_rows(cands, offsets, nvars, coords)
    for c, off in zip(cands, offsets):
        coeffs = [Fraction(0)] * nvars
        coeffs[off + c.margin] = Fraction(1)
        rows.append(lp.Constraint(tuple(coeffs), lp.GE, 1))
    out = lp.solve(lp.LinearProgram(nvars, tuple(rows), signs=tuple(signs)))
    if not isinstance(out, lp.Optimal):
        return None
    return [out.point[off:off + len(c.columns)] for c, off in zip(cands, offsets)]


def max_shift(cands: Sequence[_Candidate], x: RandomQuantity, cond: Event):
    """``sup y`` such that ``(X - y) C - sum(bets) >= 0`` with margins ``>= 0``.

    Returns a Fraction or :data:`INF`.
    """
    n = x.dim
    offsets, signs, nvars = _layout(cands)
    width = nvars + 1
    cvec = [Fraction(c) for c in cond.components]
    rhs = [x[k] * cvec[k] for k in range(n)]
    rows = _coordinate_rows(cands, offsets, nvars, range(n), extra=cvec, rhs=rhs, width=width)
    objective = [Fraction(0)] * nvars + [Fraction(1)]
    out = lp.solve(lp.LinearProgram(
        width, tuple(rows), objective=tuple(objective), maximize=True,
        signs=tuple(signs) + (lp.FREE,),
    ))
    if isinstance(out, lp.Unbounded):
        return INF
    assert isinstance(out, lp.Optimal), "a very negative shift is always feasible"
    return out.value


def margin(entry: AssessmentEntry, r: Fraction, s: Fraction):
    """``r * (v + s)`` in extended arithmetic."""
    return ext_mul(r, ext_add(entry.value, s))

