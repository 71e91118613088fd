import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plausible import lp
from plausible.errors import InputError

F = Fraction


def test_bounded_maximum():
    prob = lp.LinearProgram(1, (lp.Constraint((F(1),), lp.LE, F(1)),), objective=(F(1),))
    assert lp.solve(prob) == lp.Optimal(F(1), (F(1),))


def test_infeasible_with_farkas_multipliers():
    prob = lp.LinearProgram(1, (
        lp.Constraint((F(1),), lp.GE, F(0)),
        lp.Constraint((F(-1),), lp.GE, F(1)),
    ))
    out = lp.solve(prob)
    assert isinstance(out, lp.Infeasible)
    assert out.certificate == (F(1), F(1))
    assert lp.check_farkas(prob, out.certificate)


def test_unbounded_ray():
    prob = lp.LinearProgram(1, (lp.Constraint((F(1),), lp.GE, F(0)),), objective=(F(1),))
    out = lp.solve(prob)
    assert isinstance(out, lp.Unbounded) and out.ray == (F(1),)
    assert lp.check_ray(prob, out.ray)


def test_row_length_mismatch_rejected():
    with pytest.raises(InputError):
        lp.solve(lp.LinearProgram(2, (lp.Constraint((F(1),), lp.LE, F(1)),)))


def _vertices(rows):
    """Brute force: every feasible intersection of two tight constraints."""
    pts = []
    for (a, b, c), (d, e, f) in itertools.combinations(rows, 2):
        det = a * e - b * d
        if det == 0:
            continue
        x = (c * e - b * f) / det
        y = (a * f - c * d) / det
        if all(p * x + q * y <= r for p, q, r in rows):
            pts.append((x, y))
    return pts


coef = st.integers(-4, 4).map(F)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(coef, coef, st.integers(-6, 6).map(F)), min_size=1, max_size=4),
       coef, coef)
def test_two_variable_optimum_matches_vertex_enumeration(extra, c1, c2):
    box = [(F(1), F(0), F(5)), (F(-1), F(0), F(5)), (F(0), F(1), F(5)), (F(0), F(-1), F(5))]
    rows = box + list(extra)
    prob = lp.LinearProgram(2, tuple(lp.Constraint((a, b), lp.LE, c) for a, b, c in rows),
                            objective=(c1, c2))
    out = lp.solve(prob)
    verts = _vertices(rows)
    if not verts:
        assert isinstance(out, lp.Infeasible)
        assert lp.check_farkas(prob, out.certificate)
        return
    assert isinstance(out, lp.Optimal)
    assert lp.check_point(prob, out.point)
    assert out.value == max(c1 * x + c2 * y for x, y in verts)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coef, coef, coef, st.integers(-5, 5).map(F)), min_size=1, max_size=5),
       st.lists(st.sampled_from([lp.FREE, lp.NONNEG, lp.NONPOS]), min_size=3, max_size=3),
       st.lists(st.sampled_from([lp.LE, lp.GE, lp.EQ]), min_size=5, max_size=5))
def test_every_outcome_carries_a_valid_certificate(rows, signs, rels):
    cons = tuple(lp.Constraint((a, b, c), rel, r) for (a, b, c, r), rel in zip(rows, rels))
    prob = lp.LinearProgram(3, cons, objective=(F(1), F(-1), F(2)), signs=tuple(signs))
    out = lp.solve(prob)
    if isinstance(out, lp.Optimal):
        assert lp.check_point(prob, out.point)
    elif isinstance(out, lp.Unbounded):
        assert lp.check_ray(prob, out.ray)
    else:
        assert lp.check_farkas(prob, out.certificate)
