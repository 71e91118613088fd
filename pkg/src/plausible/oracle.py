"""Independent, brute-force cross-checks.

Nothing here touches the simplex code.  Cone membership is decided from an
inequality description obtained by Fourier-Motzkin elimination, expectations
are located by bracketing and exact facet boundary solves, and unconditional
probability tables are extended through atom decompositions.

Everything is capped at desk scale: elimination blows up doubly
exponentially.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Event, RandomQuantity, as_event, atoms_of, coordinate_atoms
from .axioms import KolmogorovTable, kolmogorov_check
from .errors import InputError, ResourceLimitError
from .exact import INF
from .expectation import Defined, UndefinedExpectation
from .preorder import ConePreorder

__all__ = [
    "InequalityDescription",
    "fm_description",
    "oracle_member",
    "oracle_expectation",
    "phi",
    "nu",
    "KolmogorovExtension",
    "kolmogorov_extension",
    "MAX_DIM",
    "MAX_GENERATORS",
]

MAX_DIM = 4
MAX_GENERATORS = 8
MAX_EXPECTATION_DIM = 3


@dataclass(frozen=True)
class InequalityDescription:
    """``x`` is in the cone iff ``row . x >= 0`` for every row."""

    dim: int
    rows: tuple

    def contains(self, x) -> bool:
        return all(sum(a * b for a, b in zip(row, x)) >= 0 for row in self.rows)


def _primitive(row):
    """Scale to coprime integers, keeping the sign."""
    den = 1
    for c in row:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in row]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return None
    return tuple(Fraction(v // g) for v in ints)


def _rank(vectors) -> int:
    rows = [list(v) for v in vectors]
    rank, col = 0, 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / p
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def fm_description(p: ConePreorder) -> InequalityDescription:
    """Facets of ``cone(generators + atoms)`` via Fourier-Motzkin elimination.

    Start from ``x - sum(l_i g_i) >= 0`` and ``l >= 0`` in the variables
    ``(x, l)`` and eliminate each ``l_i``.  Surviving rows are valid for the
    cone; rows not tight on ``n - 1`` independent rays are dropped, leaving
    exactly the facets.
    """
    if not isinstance(p, ConePreorder):
        raise InputError("the elimination oracle handles cone presentations only")
    n = p.dim
    gens = list(p.generators)
    if n > MAX_DIM or len(gens) > MAX_GENERATORS:
        raise ResourceLimitError(
            f"oracle scale is n <= {MAX_DIM} and at most {MAX_GENERATORS} generators"
        )
    m = len(gens)
    one = Fraction(1)
    rows = set()
    for k in range(n):
        x_part = [Fraction(0)] * n
        x_part[k] = one
        rows.add(tuple(x_part) + tuple(-g[k] for g in gens))
    for i in range(m):
        lam = [Fraction(0)] * m
        lam[i] = one
        rows.add((Fraction(0),) * n + tuple(lam))
    for j in range(m):
        col = n + j
        pos = [r for r in rows if r[col] > 0]
        neg = [r for r in rows if r[col] < 0]
        keep = {r for r in rows if r[col] == 0}
        for a in pos:
            for b in neg:
                combo = tuple(-b[col] * u + a[col] * v for u, v in zip(a, b))
                prim = _primitive(combo)
                if prim is not None:
                    keep.add(prim)
        rows = {_primitive(r) for r in keep}
        rows.discard(None)
    rays = [tuple(g.components) for g in gens] + [tuple(a.components) for a in coordinate_atoms(n)]
    facets = []
    for r in rows:
        row = r[:n]
        if not any(row):
            continue
        tight = [v for v in rays if sum(a * b for a, b in zip(row, v)) == 0]
        if _rank(tight) >= n - 1:
            facets.append(row)
    facets.sort()
    return InequalityDescription(n, tuple(facets))


def oracle_member(p: ConePreorder, z) -> bool:
    """``0 <~ Z`` decided by the inequality description."""
    return fm_description(p).contains(_vec(z, p.dim))


def _vec(x, n):
    if isinstance(x, (int, Fraction)):
        return tuple(Fraction(x) for _ in range(n))
    x = tuple(Fraction(c) for c in x)
    if len(x) != n:
        raise InputError(f"expected dimension {n}, got {len(x)}")
    return x


def _sup_shift(desc: InequalityDescription, x, c):
    """``sup{y : (X - y) C in cone}`` by integer bracketing, then facet solves."""
    xc = [a * b for a, b in zip(x, c)]

    def ok(y):
        return desc.contains([v - y * w for v, w in zip(xc, c)])

    bounding = [row for row in desc.rows if sum(a * w for a, w in zip(row, c)) > 0]
    if not bounding:
        return INF
    lo = Fraction(math.floor(min(v for v, w in zip(x, c) if w)))
    assert ok(lo), "X minus its minimum on C is nonnegative there"
    step = 1
    hi = lo + step
    while ok(hi):
        lo = hi
        step *= 2
        hi = lo + step
    # the supremum lies in [lo, hi); it is the boundary of some facet there
    best = lo
    for row in bounding:
        y = sum(a * v for a, v in zip(row, xc)) / sum(a * w for a, w in zip(row, c))
        if lo <= y < hi and y > best and ok(y):
            best = y
    return best


def oracle_expectation(p: ConePreorder, x, c=None):
    """Conditional expectation recomputed from the facet description."""
    n = p.dim
    if n > MAX_EXPECTATION_DIM:
        raise ResourceLimitError(f"oracle expectation is limited to n <= {MAX_EXPECTATION_DIM}")
    xv = _vec(x, n)
    cv = _vec(Event.one(n) if c is None else as_event(c), n)
    if not any(cv):
        raise InputError("conditional expectation needs a nonzero condition")
    desc = fm_description(p)
    a = _sup_shift(desc, xv, cv)
    b = -_sup_shift(desc, tuple(-v for v in xv), cv)
    if a == b:
        return Defined(a)
    return UndefinedExpectation(min(a, b), max(a, b))


# -- atom decompositions -----------------------------------------------------


def phi(x, g: Event) -> Fraction:
    """The scalar with ``X G = phi(X, G) G`` on a nonzero event ``G``."""
    g = as_event(g)
    vals = {Fraction(x[k]) for k in g.indices}
    if len(vals) != 1:
        raise InputError("quantity is not constant on the event")
    return vals.pop()


def nu(b: Event, atoms: Sequence[Event]) -> Fraction:
    """Number of ``atoms`` below ``B``."""
    return sum((phi(b, g) for g in atoms), Fraction(0))


@dataclass(frozen=True)
class KolmogorovExtension:
    """Linear functional ``F(X) = sum_G phi(X, G) w(G)`` over target atoms ``G``."""

    atoms: tuple
    weights: tuple

    def __call__(self, x) -> Fraction:
        return sum((phi(x, g) * w for g, w in zip(self.atoms, self.weights)), Fraction(0))


def kolmogorov_extension(table: KolmogorovTable, target_events: Sequence = None) -> KolmogorovExtension:
    """Extend a valid unconditional table to the algebra generated by the targets.

    ``F(X) = sum_G sum_H phi(X, G) phi(H, G) PV(H) / nu(H)`` where ``H``
    ranges over atoms of the table's domain and ``G`` over atoms of the
    target algebra (by default every coordinate).
    """
    if not kolmogorov_check(table).valid:
        raise InputError("table is not a valid Kolmogorovian plausible value")
    n = table.dim
    dom = list(table.values)
    src_atoms = [a for a in atoms_of(dom, n) if a in table.values and a.mask]
    if target_events is None:
        target_events = coordinate_atoms(n)
    tgt_atoms = atoms_of(dom + [as_event(e) for e in target_events], n)
    counts = {h: nu(h, tgt_atoms) for h in src_atoms}
    weights = []
    for g in tgt_atoms:
        w = Fraction(0)
        for h in src_atoms:
            if (h & g).mask:
                w += phi(h, g) * table.values[h] / counts[h]
        weights.append(w)
    ext = KolmogorovExtension(tuple(tgt_atoms), tuple(weights))
    _verify_extension(ext, table, tgt_atoms)
    return ext


def _verify_extension(ext, table, atoms):
    n = table.dim
    assert all(w >= 0 for w in ext.weights), "F must be nonnegative on events"
    for a, v in table.values.items():
        assert ext(a) == v, "F must coincide with PV on the table's domain"
    probe = [RandomQuantity([Fraction(k + 1) if (g.mask >> i) & 1 else 0 for i in range(n)])
             for k, g in enumerate(atoms)]
    total = RandomQuantity([0] * n)
    acc = Fraction(0)
    for q in probe:
        total = total + q
        acc += ext(q)
        assert ext(q * Fraction(-3, 2)) == Fraction(-3, 2) * ext(q), "F must be homogeneous"
    assert ext(total) == acc, "F must be additive"
    assert ext(Event.one(n)) == 1, "F(1) = 1"
