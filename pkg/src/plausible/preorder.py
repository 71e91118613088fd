"""Plausible preorders on random quantities.

Two presentations are supported:

* :class:`ConePreorder` -- ``0 <~ X`` iff ``X`` lies in the conic hull of the
  generators together with the coordinate atoms.  Membership is one LP.
* :class:`AssessmentPreorder` -- the relation generated by a coherent
  assessment: ``0 < X`` iff ``X`` is a nonzero nonnegative combination of
  events plus bets with strictly positive margins, and ``X <~ Y`` iff
  ``X < Y`` or ``X == Y``.

Both expose the same query surface: :meth:`Preorder.nonstrict`,
:meth:`Preorder.strict`, :meth:`Preorder.equivalent` and
:meth:`Preorder.lower_bound`, the latter being
``sup{y : y C <~ X C}`` on the extended line.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .algebra import Event, RandomQuantity, as_event, coordinate_atoms, embed_scalar
from .assessment import (
    Assessment,
    entry_candidate,
    max_positive_support,
    max_shift,
    target_candidate,
)
from .errors import IncoherentAssessmentError, InputError
from .exact import INF

__all__ = [
    "Preorder",
    "ConePreorder",
    "ConditionalPreorder",
    "AssessmentPreorder",
    "Regularity",
    "cone_from_relation",
    "cone_from_equivalences",
    "orthant_preorder",
    "greatest_preorder",
    "coin_preorder",
    "nonstrict",
    "strict",
    "equivalent",
    "conditional",
    "classify",
    "check_subadditivity",
]


class Regularity(enum.Enum):
    REGULAR = "regular"
    DEGENERATE = "degenerate"
    NEITHER = "neither"


def _quantity(x, n) -> RandomQuantity:
    if isinstance(x, RandomQuantity):
        q = x
    elif isinstance(x, (int, Fraction)):
        return embed_scalar(x, n)
    else:
        q = RandomQuantity(x)
    if q.dim != n:
        raise InputError(f"expected dimension {n}, got {q.dim}")
    return q


def _cond(c, n) -> Event:
    if c is None:
        return Event.one(n)
    e = as_event(c)
    if e.dim != n:
        raise InputError(f"expected dimension {n}, got {e.dim}")
    return e


class Preorder:
    """Common query surface; subclasses supply ``_nonneg`` and ``_lower``."""

    dim: int

    def nonstrict(self, x, y) -> bool:
        """``X <~ Y``."""
        x, y = _quantity(x, self.dim), _quantity(y, self.dim)
        return self._nonneg(y - x)

    def strict(self, x, y) -> bool:
        """``X < Y``: ``X <~ Y`` and not ``Y <~ X``."""
        return self.nonstrict(x, y) and not self.nonstrict(y, x)

    def equivalent(self, x, y) -> bool:
        return self.nonstrict(x, y) and self.nonstrict(y, x)

    def lower_bound(self, x, cond=None):
        """``sup{y : y C <~ X C}`` as a Fraction or ``INF``."""
        x = _quantity(x, self.dim)
        c = _cond(cond, self.dim)
        if c.mask == 0:
            return INF
        return self._lower(x, c)

    def upper_bound(self, x, cond=None):
        """``inf{y : X C <~ y C}``."""
        return -self.lower_bound(-_quantity(x, self.dim), cond)

    def conditional(self, c) -> "ConditionalPreorder":
        return ConditionalPreorder(self, _cond(c, self.dim))

    def _nonneg(self, z: RandomQuantity) -> bool:
        raise NotImplementedError

    def _lower(self, x: RandomQuantity, c: Event):
        raise NotImplementedError


class ConePreorder(Preorder):
    """Preorder whose nonnegative set is ``cone(generators + atoms)``."""

    def __init__(self, dim: int, generators: Iterable = ()):
        if dim < 1:
            raise InputError("dimension must be at least 1")
        self.dim = dim
        self.generators = tuple(_quantity(g, dim) for g in generators)
        # generators inside the orthant add nothing to the hull
        self._active = tuple(dict.fromkeys(g for g in self.generators if not g.is_nonnegative()))
        self._member_cache = {}
        self._lower_cache = {}

    def __repr__(self):
        gens = ", ".join("(" + ", ".join(map(str, g)) + ")" for g in self.generators)
        return f"ConePreorder({self.dim}, [{gens}])"

    def contains(self, z) -> bool:
        """``0 <~ Z``."""
        return self._nonneg(_quantity(z, self.dim))

    def _nonneg(self, z):
        if z.is_nonnegative():
            return True
        key = z.components
        hit = self._member_cache.get(key)
        if hit is None:
            hit = self._member_lp(z)
            self._member_cache[key] = hit
        return hit

    def _member_lp(self, z) -> bool:
        gens = self._active
        if not gens:
            return False
        rows = [
            lp.Constraint(tuple(g[k] for g in gens), lp.LE, z[k]) for k in range(self.dim)
        ]
        out = lp.solve(lp.LinearProgram(len(gens), tuple(rows), signs=(lp.NONNEG,) * len(gens)))
        return isinstance(out, lp.Optimal)

    def _lower(self, x, c):
        key = (x.components, c.mask)
        hit = self._lower_cache.get(key)
        if hit is None:
            hit = self._lower_lp(x, c)
            self._lower_cache[key] = hit
        return hit

    def _lower_lp(self, x, c):
        gens = self._active
        if not gens:
            return min(x[k] for k in c.indices)
        m = len(gens)
        rows = [
            lp.Constraint(tuple(g[k] for g in gens) + (Fraction(c[k]),), lp.LE, x[k] * c[k])
            for k in range(self.dim)
        ]
        objective = (Fraction(0),) * m + (Fraction(1),)
        out = lp.solve(lp.LinearProgram(
            m + 1, tuple(rows), objective=objective, maximize=True,
            signs=(lp.NONNEG,) * m + (lp.FREE,),
        ))
        if isinstance(out, lp.Unbounded):
            return INF
        assert isinstance(out, lp.Optimal)
        return out.value


class ConditionalPreorder(Preorder):
    """``X <~_C Y`` iff ``X C <~ Y C``."""

    def __init__(self, base: Preorder, cond: Event):
        self.base = base
        self.cond = cond
        self.dim = base.dim

    def __repr__(self):
        return f"ConditionalPreorder({self.base!r}, {self.cond!r})"

    def _nonneg(self, z):
        return self.base._nonneg(z * self.cond)

    def _lower(self, x, c):
        joint = c & self.cond
        if joint.mask == 0:
            return INF
        return self.base._lower(x, joint)


class AssessmentPreorder(Preorder):
    """The regular preorder generated by a coherent assessment.

    ``0 < Z`` iff ``Z = sum(p_i C_i) + sum(r_j (X_j + s_j) D_j)`` with
    ``p_i > 0``, nonzero events ``C_i``, strictly positive margins and at
    least one term.  Construction checks coherence unless ``check=False``.
    """

    def __init__(self, assessment: Assessment, check: bool = True):
        self.assessment = assessment
        self.dim = assessment.dim
        self._cands = [entry_candidate(e) for e in assessment.entries]
        self._support_cache = {}
        self._lower_cache = {}
        self._strict_cache = {}
        if check:
            from .coherence import check_coherence

            verdict = check_coherence(assessment)
            if not verdict.coherent:
                raise IncoherentAssessmentError("assessment is incoherent", verdict.witness)

    def __repr__(self):
        return f"AssessmentPreorder(<{len(self.assessment)} entries, dim {self.dim}>)"

    def strictly_positive(self, z) -> bool:
        """``0 < Z``."""
        z = _quantity(z, self.dim)
        key = z.components
        hit = self._strict_cache.get(key)
        if hit is None:
            hit = self._strict_lp(z)
            self._strict_cache[key] = hit
        return hit

    def _strict_lp(self, z):
        if z.is_nonnegative() and not z.is_zero():
            return True
        if not self._cands:
            return False
        cands = self._cands + [target_candidate(z)]
        tau = len(cands) - 1
        support, _ = max_positive_support(cands, range(self.dim))
        return tau in support and len(support) >= 2

    def _nonneg(self, z):
        return z.is_zero() or self.strictly_positive(z)

    def strict(self, x, y) -> bool:
        x, y = _quantity(x, self.dim), _quantity(y, self.dim)
        return self.strictly_positive(y - x)

    def support(self, c: Event) -> tuple:
        """Entries that can bet with positive margin when only ``C`` is at stake."""
        hit = self._support_cache.get(c.mask)
        if hit is None:
            outside = [k for k in range(self.dim) if not c[k]]
            hit, _ = max_positive_support(self._cands, outside)
            self._support_cache[c.mask] = hit
        return hit

    def _lower(self, x, c):
        key = (x.components, c.mask)
        hit = self._lower_cache.get(key)
        if hit is None:
            s = self.support(c)
            if not s:
                hit = min(x[k] for k in c.indices)
            else:
                hit = max_shift([self._cands[j] for j in s], x, c)
            self._lower_cache[key] = hit
        return hit


# -- constructors ------------------------------------------------------------


def cone_from_relation(pairs: Sequence, n: int) -> ConePreorder:
    """Smallest plausible preorder containing every ``(X_i, Y_i)``."""
    return ConePreorder(n, [_quantity(y, n) - _quantity(x, n) for x, y in pairs])


def cone_from_equivalences(pairs: Sequence, n: int) -> ConePreorder:
    """Smallest plausible preorder whose equivalence part contains the pairs."""
    gens = []
    for x, y in pairs:
        d = _quantity(y, n) - _quantity(x, n)
        gens.extend([d, -d])
    return ConePreorder(n, gens)


def orthant_preorder(n: int) -> ConePreorder:
    return ConePreorder(n, ())


def greatest_preorder(n: int) -> ConePreorder:
    return ConePreorder(n, [embed_scalar(-1, n)])


def coin_preorder() -> ConePreorder:
    """``0 <~ (x_H, x_T)`` iff ``x_H + x_T >= 0``."""
    return cone_from_relation([((-1, 1), (1, -1)), ((1, -1), (-1, 1))], 2)


# -- functional surface ------------------------------------------------------


def nonstrict(p: Preorder, x, y) -> bool:
    return p.nonstrict(x, y)


def strict(p: Preorder, x, y) -> bool:
    return p.strict(x, y)


def equivalent(p: Preorder, x, y) -> bool:
    return p.equivalent(x, y)


def conditional(p: Preorder, c) -> ConditionalPreorder:
    return p.conditional(c)


def classify(p: Preorder) -> Regularity:
    n = p.dim
    zero = embed_scalar(0, n)
    if p.equivalent(zero, embed_scalar(1, n)):
        return Regularity.DEGENERATE
    # strictness on every atom extends to every nonzero event by additivity
    if all(p.strict(zero, a) for a in coordinate_atoms(n)):
        return Regularity.REGULAR
    return Regularity.NEITHER


def check_subadditivity(p: Preorder, events: Sequence) -> bool:
    events = [_cond(e, p.dim) for e in events]
    if not events:
        return True
    union = Event.zero(p.dim)
    total = embed_scalar(0, p.dim)
    for e in events:
        union = union | e
        total = total + e
    return p.nonstrict(union, total)
