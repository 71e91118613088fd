"""Random quantities on a finite sample space and their events.

A random quantity of dimension ``n`` is a vector of ``n`` exact rationals with
pointwise sum and product; the constant ``1`` is the all-ones vector.  Events
are the idempotent quantities, i.e. 0/1 vectors; :class:`Event` keeps the
indicator as a bitmask so Boolean operations and minterm signatures are cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

__all__ = [
    "RandomQuantity",
    "Event",
    "embed_scalar",
    "is_event",
    "as_event",
    "atoms_of",
    "coordinate_atoms",
    "all_events",
    "positive_combination_nonzero",
]


class RandomQuantity:
    __slots__ = ("components", "_hash")

    def __init__(self, components: Iterable):
        comps = tuple(Fraction(c) for c in components)
        if not comps:
            raise InputError("dimension must be at least 1")
        self.components = comps
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, k):
        return self.components[k]

    def __repr__(self):
        body = ", ".join(str(c) for c in self.components)
        return f"RandomQuantity(({body}))"

    def __eq__(self, other):
        if isinstance(other, RandomQuantity):
            return self.components == other.components
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.components)
        return self._hash

    def _other(self, other):
        if isinstance(other, RandomQuantity):
            if other.dim != self.dim:
                raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other.components
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) * self.dim
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RandomQuantity(a + b for a, b in zip(self.components, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RandomQuantity(a - b for a, b in zip(self.components, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RandomQuantity(b - a for a, b in zip(self.components, o))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RandomQuantity(a * b for a, b in zip(self.components, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RandomQuantity(-a for a in self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.components)


class Event(RandomQuantity):
    """0/1 random quantity; ``&``, ``|`` and ``~`` are conjunction, disjunction, negation."""

    __slots__ = ("mask",)

    def __init__(self, indicator: Iterable = None, *, n: int = None, mask: int = None):
        if mask is not None:
            if n is None or n < 1:
                raise InputError("dimension must be at least 1")
            if mask < 0 or mask >> n:
                raise InputError("mask out of range")
            bits = [(mask >> k) & 1 for k in range(n)]
        else:
            bits = []
            for v in indicator:
                f = Fraction(v)
                if f not in (0, 1):
                    raise InputError(f"event components must be 0 or 1, got {v!r}")
                bits.append(int(f))
            mask = sum(b << k for k, b in enumerate(bits))
        super().__init__(bits)
        self.mask = mask

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "Event":
        mask = 0
        for k in indices:
            if not 0 <= k < n:
                raise InputError(f"index {k} out of range for dimension {n}")
            mask |= 1 << k
        return cls(n=n, mask=mask)

    @classmethod
    def zero(cls, n):
        return cls(n=n, mask=0)

    @classmethod
    def one(cls, n):
        return cls(n=n, mask=(1 << n) - 1)

    @property
    def indices(self) -> tuple:
        return tuple(k for k in range(self.dim) if (self.mask >> k) & 1)

    def __repr__(self):
        return "Event(" + "".join(str(int(c)) for c in self.components) + ")"

    def _check(self, other):
        if not isinstance(other, Event):
            return NotImplemented
        if other.dim != self.dim:
            raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other

    def __and__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Event(n=self.dim, mask=self.mask & o.mask)

    def __or__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Event(n=self.dim, mask=self.mask | o.mask)

    def __invert__(self):
        return Event(n=self.dim, mask=~self.mask & ((1 << self.dim) - 1))

    def __le__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self.mask & o.mask == self.mask

    def __ge__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self.mask & o.mask == o.mask

    __hash__ = RandomQuantity.__hash__


def embed_scalar(r, n: int) -> RandomQuantity:
    """The constant quantity ``r * 1`` of dimension ``n``."""
    if n < 1:
        raise InputError("dimension must be at least 1")
    return RandomQuantity([Fraction(r)] * n)


def is_event(x: RandomQuantity) -> bool:
    return all(c * c == c for c in x.components)


def as_event(x) -> Event:
    if isinstance(x, Event):
        return x
    if not is_event(RandomQuantity(x) if not isinstance(x, RandomQuantity) else x):
        raise InputError(f"not an event: {x!r}")
    return Event(x)


def coordinate_atoms(n: int) -> list:
    return [Event(n=n, mask=1 << k) for k in range(n)]


def all_events(n: int) -> list:
    return [Event(n=n, mask=m) for m in range(1 << n)]


def atoms_of(events: Sequence[Event], n: int = None) -> list:
    """Atoms of the Boolean algebra generated by ``events``.

    Each coordinate is classified by its membership signature across the
    generators; coordinates sharing a signature form one nonzero minterm.
    Atoms are returned ordered by their lowest coordinate.
    """
    events = [as_event(e) for e in events]
    if n is None:
        if not events:
            raise InputError("dimension required when no events are given")
        n = events[0].dim
    for e in events:
        if e.dim != n:
            raise InputError("events must share a dimension")
    groups = {}
    for k in range(n):
        sig = tuple((e.mask >> k) & 1 for e in events)
        groups[sig] = groups.get(sig, 0) | (1 << k)
    atoms = [Event(n=n, mask=m) for m in groups.values()]
    atoms.sort(key=lambda a: (a.mask & -a.mask))
    return atoms


def positive_combination_nonzero(p: Sequence, events: Sequence[Event]) -> Event:
    """Atom below the first event on which ``sum(p_i * C_i)`` is strictly positive.

    Constructive witness that a positive combination of nonzero events is
    nonzero: every other generator either contains the atom or misses it, so
    the combination is at least ``p[0]`` there.
    """
    if not events or len(p) != len(events):
        raise InputError("need equally many positive weights and events, at least one")
    p = [Fraction(v) for v in p]
    events = [as_event(e) for e in events]
    if any(v <= 0 for v in p):
        raise InputError("weights must be positive")
    if any(e.mask == 0 for e in events):
        raise InputError("events must be nonzero")
    first = events[0]
    atom = next(a for a in atoms_of(events) if a <= first)
    k = atom.indices[0]
    value = sum(v * e[k] for v, e in zip(p, events))
    assert value >= p[0] > 0
    return atom
