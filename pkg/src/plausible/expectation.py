"""Expectation and conditional expectation induced by a plausible preorder.

With ``a = sup{y : y C <~ X C}`` and ``b = inf{y : X C <~ y C}`` the strict
lower set ``{y : y C < X C}`` has supremum ``min(a, b)`` and the strict upper
set has infimum ``max(a, b)``.  The expectation exists exactly when the two
agree, i.e. when ``a == b``; otherwise the result reports both bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Event, RandomQuantity, as_event, embed_scalar
from .errors import InputError
from .exact import ExtReal, format_ext
from .preorder import Preorder

__all__ = [
    "Defined",
    "UndefinedExpectation",
    "lower_value",
    "upper_value",
    "expectation",
    "conditional_expectation",
    "probability",
    "sandwich_holds",
]


@dataclass(frozen=True)
class Defined:
    value: ExtReal
    defined = True

    @property
    def lower(self):
        return self.value

    @property
    def upper(self):
        return self.value

    def __str__(self):
        return format_ext(self.value)


@dataclass(frozen=True)
class UndefinedExpectation:
    lower: ExtReal
    upper: ExtReal
    defined = False
    value = None

    def __str__(self):
        return f"undefined [{format_ext(self.lower)}, {format_ext(self.upper)}]"


def _event(c, n):
    if c is None:
        return Event.one(n)
    e = as_event(c)
    if e.dim != n:
        raise InputError(f"expected dimension {n}, got {e.dim}")
    return e


def _quantity(x, n):
    if isinstance(x, RandomQuantity):
        q = x
    elif isinstance(x, (int, Fraction)):
        q = embed_scalar(x, n)
    else:
        q = RandomQuantity(x)
    if q.dim != n:
        raise InputError(f"expected dimension {n}, got {q.dim}")
    return q


def lower_value(p: Preorder, x, c=None) -> ExtReal:
    """``sup{y : y C <~ X C}``; never ``-inf`` for bounded quantities."""
    return p.lower_bound(_quantity(x, p.dim), _event(c, p.dim))


def upper_value(p: Preorder, x, c=None) -> ExtReal:
    return p.upper_bound(_quantity(x, p.dim), _event(c, p.dim))


def _result(a, b):
    if a == b:
        return Defined(a)
    return UndefinedExpectation(min(a, b), max(a, b))


def expectation(p: Preorder, x):
    return _result(lower_value(p, x), upper_value(p, x))


def conditional_expectation(p: Preorder, x, c):
    c = _event(c, p.dim)
    if c.mask == 0:
        raise InputError("conditional expectation needs a nonzero condition")
    return _result(lower_value(p, x, c), upper_value(p, x, c))


def probability(p: Preorder, a, c=None):
    a = _event(a, p.dim)
    return conditional_expectation(p, a, _event(c, p.dim))


def sandwich_holds(p: Preorder, x, value, eps, c=None) -> bool:
    """``-eps <_C X - value <_C eps``, the epsilon form of a finite expectation."""
    c = _event(c, p.dim)
    q = p.conditional(c)
    x = _quantity(x, p.dim)
    eps = Fraction(eps)
    centered = x - Fraction(value)
    return q.strict(embed_scalar(-eps, p.dim), centered) and q.strict(centered, embed_scalar(eps, p.dim))
