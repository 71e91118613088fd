"""Coherence of conditional assessments, Dutch-book witnesses and extension.

An assessment is incoherent when some nonempty set of its entries admits bets
with strictly positive margins whose sum, plus a nonnegative combination of
events, vanishes identically.  Margins are positively homogeneous, so
"strictly positive" may be normalised to ">= 1"; the sum vanishing with a
nonnegative event part is the same as the bets summing to something
componentwise ``<= 0``.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import Event
from .assessment import (
    Assessment,
    BetTerm,
    EventTerm,
    Witness,
    bet_parameters,
    entry_candidate,
    margin,
    max_positive_support,
    normalized_book,
)
from .errors import InputError, ResourceLimitError
from .exact import INF, NEG_INF, is_finite
from .expectation import conditional_expectation
from .preorder import AssessmentPreorder

__all__ = [
    "Coherent",
    "Incoherent",
    "check_coherence",
    "validate_witness",
    "bounded_quantity_witness",
    "assessment_preorder",
    "extend",
    "subset_budget",
]

DEFAULT_SUBSET_BUDGET = 16


@dataclass(frozen=True)
class Coherent:
    coherent = True
    witness = None


@dataclass(frozen=True)
class Incoherent:
    witness: Witness
    coherent = False


def subset_budget() -> int:
    raw = os.environ.get("PK_SUBSET_BUDGET")
    if raw is None:
        return DEFAULT_SUBSET_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"PK_SUBSET_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("PK_SUBSET_BUDGET must be positive")
    return value


def bounded_quantity_witness(a: Assessment, j: int) -> Witness:
    """Dutch book against a single infinite claim.

    Every quantity is bounded on ``D``, so betting that ``X`` exceeds
    ``max X + 1`` (or falls below ``min X - 1``) has infinite margin and a
    sure nonpositive payoff.
    """
    e = a[j]
    on = e.given.indices
    if e.value is INF:
        y = max(e.x[k] for k in on) + 1
        bet = BetTerm(j, Fraction(1), -y)
        gaps = [(y - e.x[k], k) for k in on]
    elif e.value is NEG_INF:
        y = min(e.x[k] for k in on) - 1
        bet = BetTerm(j, Fraction(-1), -y)
        gaps = [(e.x[k] - y, k) for k in on]
    else:
        raise InputError("entry value is finite")
    n = a.dim
    terms = tuple(EventTerm(q, Event(n=n, mask=1 << k)) for q, k in gaps)
    return Witness(terms, (bet,))


def _book_witness(a: Assessment, subset, values) -> Witness:
    n = a.dim
    bets = []
    residual = [Fraction(0)] * n
    for j, vals in zip(subset, values):
        e = a[j]
        r, t = bet_parameters(e, vals)
        for k in e.given.indices:
            residual[k] -= r * e.x[k] + t
        if r != 0:
            bets.append(BetTerm(j, r, t / r))
        else:
            # t * D alone is no single bet; split it into two opposite ones
            v = e.value
            bets.append(BetTerm(j, Fraction(1), -v + t / 2))
            bets.append(BetTerm(j, Fraction(-1), -v - t / 2))
    terms = tuple(
        EventTerm(residual[k], Event(n=n, mask=1 << k)) for k in range(n) if residual[k] > 0
    )
    return Witness(terms, tuple(bets))


def _find_witness(a: Assessment, support) -> Witness:
    cands = [entry_candidate(e) for e in a.entries]
    subsets = (
        combo
        for size in range(1, len(support) + 1)
        for combo in itertools.combinations(support, size)
    )
    for subset in subsets:
        if len(subset) == 1 and not is_finite(a[subset[0]].value):
            return bounded_quantity_witness(a, subset[0])
        values = normalized_book([cands[j] for j in subset], range(a.dim))
        if values is not None:
            return _book_witness(a, subset, values)
    raise AssertionError("the maximal bet support always yields a Dutch book")


def check_coherence(a: Assessment, budget: Optional[int] = None):
    """Coherent, or Incoherent with a Dutch book from the first feasible entry subset.

    Subsets are ordered by size, then lexicographically by entry index; only
    entries that can carry a positive margin at all are enumerated.  More than
    ``budget`` entries (default 16, env ``PK_SUBSET_BUDGET``) raises
    :class:`~plausible.errors.ResourceLimitError`.
    """
    if budget is None:
        budget = subset_budget()
    if len(a) > budget:
        raise ResourceLimitError(f"{len(a)} entries exceed the subset budget of {budget}")
    cands = [entry_candidate(e) for e in a.entries]
    support, _ = max_positive_support(cands, range(a.dim))
    if not support:
        return Coherent()
    w = _find_witness(a, support)
    if not validate_witness(a, w):
        raise AssertionError("constructed witness failed validation")
    return Incoherent(w)


def validate_witness(a: Assessment, w: Witness) -> bool:
    """Re-check a Dutch book by substitution, independently of any LP."""
    if not w.bet_terms:
        return False
    for t in w.event_terms:
        if t.event.dim != a.dim:
            raise InputError("witness event has the wrong dimension")
        if not t.q > 0 or t.event.mask == 0:
            return False
    for b in w.bet_terms:
        if not 0 <= b.entry < len(a):
            raise InputError(f"witness refers to missing entry {b.entry}")
        m = margin(a[b.entry], Fraction(b.r), Fraction(b.s))
        if not (m is INF or (is_finite(m) and m > 0)):
            return False
    return w.total(a).is_zero()


@functools.lru_cache(maxsize=128)
def assessment_preorder(a: Assessment) -> AssessmentPreorder:
    return AssessmentPreorder(a)


def extend(a: Assessment, x, c):
    """Value at ``(X, C)`` of the conditional expectation extending ``a``.

    Raises :class:`~plausible.errors.IncoherentAssessmentError` when ``a``
    admits a Dutch book.
    """
    return conditional_expectation(assessment_preorder(a), x, c)
