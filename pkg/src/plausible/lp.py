"""Exact linear programming by the two-phase simplex method with Bland's rule.

Problems are stated over :class:`~fractions.Fraction` data; the tableau is
kept in ``gmpy2.mpq`` for speed.  Every outcome carries a certificate that
:func:`check_point`, :func:`check_ray` or :func:`check_farkas` re-validates
by plain substitution, and :func:`solve` refuses to return a certificate
that fails its check.

Farkas convention: multipliers ``y`` satisfy ``y_i >= 0`` on ``>=`` rows,
``y_i <= 0`` on ``<=`` rows and are free on ``=`` rows.  Summing
``y_i * (row_i . x)`` then gives ``c . x >= y . b`` for every feasible ``x``;
the certificate is valid when ``c . x <= 0`` for every sign-admissible ``x``
while ``y . b > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from gmpy2 import mpq

from .errors import InputError

LE, EQ, GE = "<=", "=", ">="
FREE, NONNEG, NONPOS = "free", "nonneg", "nonpos"

_RELATIONS = (LE, EQ, GE)
_SIGNS = (FREE, NONNEG, NONPOS)
_ZERO = mpq(0)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise InputError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


@dataclass(frozen=True)
class LinearProgram:
    """``constraints`` over ``num_vars`` unknowns.

    ``signs`` gives a sign restriction per variable (default: all free).
    Without an ``objective`` the problem is a pure feasibility question.
    """

    num_vars: int
    constraints: tuple
    objective: Optional[tuple] = None
    maximize: bool = True
    signs: Optional[tuple] = None
    names: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.signs is None:
            object.__setattr__(self, "signs", (FREE,) * self.num_vars)
        else:
            object.__setattr__(self, "signs", tuple(self.signs))
        if self.objective is not None:
            object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        self.validate()

    def validate(self):
        if self.num_vars < 0:
            raise InputError("negative variable count")
        if len(self.signs) != self.num_vars:
            raise InputError("sign list length differs from variable count")
        for s in self.signs:
            if s not in _SIGNS:
                raise InputError(f"unknown sign restriction {s!r}")
        for i, c in enumerate(self.constraints):
            if len(c.coeffs) != self.num_vars:
                raise InputError(f"constraint {i} has {len(c.coeffs)} coefficients, expected {self.num_vars}")
        if self.objective is not None and len(self.objective) != self.num_vars:
            raise InputError("objective length differs from variable count")
        if self.names is not None and len(self.names) != self.num_vars:
            raise InputError("name list length differs from variable count")


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple


@dataclass(frozen=True)
class Unbounded:
    ray: tuple
    point: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class Infeasible:
    certificate: tuple


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def check_point(lp: LinearProgram, x: Sequence) -> bool:
    if len(x) != lp.num_vars:
        return False
    for v, s in zip(x, lp.signs):
        if (s == NONNEG and v < 0) or (s == NONPOS and v > 0):
            return False
    for c in lp.constraints:
        lhs = _dot(c.coeffs, x)
        if c.relation == LE and not lhs <= c.rhs:
            return False
        if c.relation == GE and not lhs >= c.rhs:
            return False
        if c.relation == EQ and lhs != c.rhs:
            return False
    return True


def check_ray(lp: LinearProgram, d: Sequence) -> bool:
    """``d`` keeps any feasible point feasible and strictly improves the objective."""
    if lp.objective is None or len(d) != lp.num_vars:
        return False
    for v, s in zip(d, lp.signs):
        if (s == NONNEG and v < 0) or (s == NONPOS and v > 0):
            return False
    for c in lp.constraints:
        lhs = _dot(c.coeffs, d)
        if c.relation == LE and lhs > 0:
            return False
        if c.relation == GE and lhs < 0:
            return False
        if c.relation == EQ and lhs != 0:
            return False
    gain = _dot(lp.objective, d)
    return gain > 0 if lp.maximize else gain < 0


def check_farkas(lp: LinearProgram, y: Sequence) -> bool:
    if len(y) != len(lp.constraints):
        return False
    for yi, c in zip(y, lp.constraints):
        if (c.relation == GE and yi < 0) or (c.relation == LE and yi > 0):
            return False
    combo = [Fraction(0)] * lp.num_vars
    for yi, c in zip(y, lp.constraints):
        if yi:
            for j, a in enumerate(c.coeffs):
                combo[j] += yi * a
    for cj, s in zip(combo, lp.signs):
        if s == FREE and cj != 0:
            return False
        if s == NONNEG and cj > 0:
            return False
        if s == NONPOS and cj < 0:
            return False
    return _dot(y, [c.rhs for c in lp.constraints]) > 0


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class _Tableau:
    """Dense tableau ``T = B^-1 [A | b]`` with an explicit basis list."""

    def __init__(self, rows, rhs, ncols, basis):
        self.rows = [r + [b] for r, b in zip(rows, rhs)]
        self.ncols = ncols
        self.basis = basis

    def pivot(self, r, j):
        rows = self.rows
        prow = rows[r]
        piv = prow[j]
        if piv != 1:
            inv = 1 / piv
            prow = [v * inv if v else v for v in prow]
            rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
        self.basis[r] = j

    def reduced_costs(self, cost, allowed):
        """``c_j - c_B B^-1 A_j`` for the allowed columns."""
        cb = [cost[b] for b in self.basis]
        out = {}
        active = [(i, c) for i, c in enumerate(cb) if c]
        for j in allowed:
            v = cost[j]
            for i, c in active:
                a = self.rows[i][j]
                if a:
                    v -= c * a
            out[j] = v
        return out

    def run(self, cost, allowed):
        """Minimise ``cost . x``; return ``None`` at optimum or the unbounded column."""
        while True:
            rc = self.reduced_costs(cost, allowed)
            entering = None
            for j in allowed:
                if rc[j] < 0 and j not in self.basis:
                    entering = j
                    break
            if entering is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)


def solve(lp: LinearProgram) -> Optimal | Unbounded | Infeasible:
    """Classify ``lp`` exactly and return the matching certificate."""
    lp.validate()
    # column layout: structural columns (free variables split in two), then one
    # slack per inequality, then artificials
    col_of = []  # per original variable: list of (column, multiplier)
    ncol = 0
    for s in lp.signs:
        if s == FREE:
            col_of.append(((ncol, 1), (ncol + 1, -1)))
            ncol += 2
        elif s == NONNEG:
            col_of.append(((ncol, 1),))
            ncol += 1
        else:
            col_of.append(((ncol, -1),))
            ncol += 1
    n_struct = ncol
    m = len(lp.constraints)
    slack_col = [None] * m
    for i, c in enumerate(lp.constraints):
        if c.relation != EQ:
            slack_col[i] = ncol
            ncol += 1

    rows, rhs, flip = [], [], []
    for i, c in enumerate(lp.constraints):
        row = [_ZERO] * ncol
        for j, a in enumerate(c.coeffs):
            if a:
                qa = mpq(a.numerator, a.denominator)
                for col, mult in col_of[j]:
                    row[col] = qa if mult > 0 else -qa
        if c.relation == LE:
            row[slack_col[i]] = mpq(1)
        elif c.relation == GE:
            row[slack_col[i]] = mpq(-1)
        b = mpq(c.rhs.numerator, c.rhs.denominator)
        sigma = 1
        if b < 0:
            sigma = -1
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        flip.append(sigma)

    # initial basis: a slack with coefficient +1 where possible, else an artificial
    basis = [None] * m
    init_col = [None] * m
    n_art = 0
    for i in range(m):
        sc = slack_col[i]
        if sc is not None and rows[i][sc] == 1:
            basis[i] = sc
            init_col[i] = sc
    art_cols = []
    for i in range(m):
        if basis[i] is None:
            col = ncol + n_art
            n_art += 1
            art_cols.append(col)
            basis[i] = col
            init_col[i] = col
    total = ncol + n_art
    for i, row in enumerate(rows):
        row.extend([_ZERO] * n_art)
        if init_col[i] >= ncol:
            row[init_col[i]] = mpq(1)
    tab = _Tableau(rows, rhs, total, basis)

    if art_cols:
        cost1 = [_ZERO] * total
        for col in art_cols:
            cost1[col] = mpq(1)
        tab.run(cost1, list(range(total)))
        w = sum((cost1[b] * tab.rows[i][-1] for i, b in enumerate(tab.basis)), _ZERO)
        if w > 0:
            cb = [cost1[b] for b in tab.basis]
            y = []
            for i in range(m):
                yi = sum((cb[r] * tab.rows[r][init_col[i]] for r in range(m) if cb[r]), _ZERO)
                y.append(_frac(yi) * flip[i])
            cert = tuple(y)
            if not check_farkas(lp, cert):
                raise AssertionError("simplex produced an invalid Farkas certificate")
            return Infeasible(cert)
        # drive remaining artificials out of the basis; drop redundant rows
        art_set = set(art_cols)
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] in art_set:
                row = tab.rows[r]
                j = next((k for k in range(ncol) if row[k]), None)
                if j is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, j)
            r += 1

    allowed = list(range(ncol))

    def extract(values_by_col):
        x = []
        for j in range(lp.num_vars):
            v = Fraction(0)
            for col, mult in col_of[j]:
                v += mult * values_by_col.get(col, Fraction(0))
            x.append(v)
        return tuple(x)

    def basic_point():
        vals = {b: _frac(tab.rows[i][-1]) for i, b in enumerate(tab.basis)}
        return extract(vals)

    if lp.objective is None:
        x = basic_point()
        if not check_point(lp, x):
            raise AssertionError("simplex produced an infeasible point")
        return Optimal(Fraction(0), x)

    cost2 = [_ZERO] * total
    sign = -1 if lp.maximize else 1
    for j, cj in enumerate(lp.objective):
        if cj:
            q = mpq(cj.numerator, cj.denominator) * sign
            for col, mult in col_of[j]:
                cost2[col] = q * mult
    entering = tab.run(cost2, allowed)
    x = basic_point()
    if entering is not None:
        d = {entering: Fraction(1)}
        for i, b in enumerate(tab.basis):
            a = tab.rows[i][entering]
            if a:
                d[b] = -_frac(a)
        ray = extract(d)
        if not check_ray(lp, ray) or not check_point(lp, x):
            raise AssertionError("simplex produced an invalid unbounded ray")
        return Unbounded(ray, x)
    if not check_point(lp, x):
        raise AssertionError("simplex produced an infeasible point")
    return Optimal(_dot(lp.objective, x), x)


def feasible(constraints, num_vars, signs=None) -> bool:
    lp = LinearProgram(num_vars, tuple(constraints), signs=signs)
    return isinstance(solve(lp), Optimal)
