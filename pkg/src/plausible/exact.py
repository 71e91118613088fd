"""Exact scalars: rationals and the extended real line.

Rationals are :class:`fractions.Fraction`.  The two infinities are the
singletons :data:`INF` and :data:`NEG_INF`; they compare correctly against
fractions and integers.  Arithmetic on the extended line is partial: the
``ext_*`` functions return :data:`UNDEFINED` instead of raising whenever an
expression has no value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

from .errors import InputError

__all__ = [
    "Fraction",
    "INF",
    "NEG_INF",
    "UNDEFINED",
    "ExtReal",
    "parse_rational",
    "format_rational",
    "parse_ext",
    "format_ext",
    "is_finite",
    "ext_add",
    "ext_neg",
    "ext_mul",
    "ext_div",
    "ext_sup",
    "ext_inf",
]


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __hash__(self):
        return hash(("inf", self.sign))

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def _key(self, other):
        if isinstance(other, _Infinity):
            return other.sign
        if isinstance(other, (int, Fraction)):
            return 0
        return None

    def __lt__(self, other):
        k = self._key(other)
        return NotImplemented if k is None else self.sign < k

    def __le__(self, other):
        k = self._key(other)
        return NotImplemented if k is None else self.sign <= k

    def __gt__(self, other):
        k = self._key(other)
        return NotImplemented if k is None else self.sign > k

    def __ge__(self, other):
        k = self._key(other)
        return NotImplemented if k is None else self.sign >= k

    def __reduce__(self):
        return (_infinity, (self.sign,))


def _infinity(sign):
    return INF if sign > 0 else NEG_INF


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


class _Undefined:
    """Value of an extended-real expression that the arithmetic leaves undefined."""

    __slots__ = ()

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_undefined, ())


def _undefined():
    return UNDEFINED


UNDEFINED = _Undefined()

ExtReal = Union[Fraction, _Infinity]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints are accepted as-is).

    Decimal strings such as ``"0.25"`` are accepted too since they are exact.
    """
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise InputError(f"not a rational: {text!r}")
    m = _RATIONAL.match(text)
    if m:
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise InputError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational: {text!r}") from None
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_ext(text) -> ExtReal:
    if isinstance(text, _Infinity):
        return text
    if isinstance(text, str):
        t = text.strip().lower()
        if t in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        if t in ("-inf", "-infinity"):
            return NEG_INF
    return parse_rational(text)


def format_ext(x) -> str:
    if x is UNDEFINED:
        return "undefined"
    if isinstance(x, _Infinity):
        return str(x)
    return format_rational(x)


def is_finite(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _coerce(x):
    if x is UNDEFINED or isinstance(x, _Infinity):
        return x
    return Fraction(x)


def ext_neg(a):
    a = _coerce(a)
    if a is UNDEFINED:
        return UNDEFINED
    return -a


def ext_add(a, b):
    a, b = _coerce(a), _coerce(b)
    if a is UNDEFINED or b is UNDEFINED:
        return UNDEFINED
    if isinstance(a, _Infinity):
        if isinstance(b, _Infinity) and b is not a:
            return UNDEFINED
        return a
    if isinstance(b, _Infinity):
        return b
    return a + b


def ext_mul(a, b):
    a, b = _coerce(a), _coerce(b)
    if a is UNDEFINED or b is UNDEFINED:
        return UNDEFINED
    a_inf, b_inf = isinstance(a, _Infinity), isinstance(b, _Infinity)
    if not a_inf and not b_inf:
        return a * b
    if a_inf and b_inf:
        # x ranges over the extended line in the sign rules, so x = +-inf is covered
        return INF if a.sign == b.sign else NEG_INF
    inf, x = (a, b) if a_inf else (b, a)
    if x == 0:
        return UNDEFINED
    return inf if x > 0 else -inf


def ext_div(a, b):
    a, b = _coerce(a), _coerce(b)
    if a is UNDEFINED or b is UNDEFINED:
        return UNDEFINED
    a_inf, b_inf = isinstance(a, _Infinity), isinstance(b, _Infinity)
    if b_inf:
        return UNDEFINED if a_inf else Fraction(0)
    if b == 0:
        return UNDEFINED
    if a_inf:
        return a if b > 0 else -a
    return a / b


def ext_sup(values: Iterable) -> ExtReal:
    """Supremum on the extended line; ``sup`` of nothing is ``-inf``."""
    best = NEG_INF
    for v in values:
        if v > best:
            best = _coerce(v)
    return best


def ext_inf(values: Iterable) -> ExtReal:
    """Infimum on the extended line; ``inf`` of nothing is ``+inf``."""
    best = INF
    for v in values:
        if v < best:
            best = _coerce(v)
    return best
