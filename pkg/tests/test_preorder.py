import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from gen import random_cone
from plausible.algebra import Event, RandomQuantity, embed_scalar
from plausible.preorder import (
    ConePreorder,
    Regularity,
    check_subadditivity,
    classify,
    coin_preorder,
    cone_from_equivalences,
    cone_from_relation,
    conditional,
    equivalent,
    greatest_preorder,
    nonstrict,
    orthant_preorder,
    strict,
)

H, T, ONE, ZERO = Event([1, 0]), Event([0, 1]), Event([1, 1]), Event([0, 0])


def test_coin_preorder_from_relation_is_the_half_plane():
    p = cone_from_relation([((-1, 1), (1, -1)), ((1, -1), (-1, 1))], 2)
    for z in [(1, -1), (0, 0), (3, -2), (-5, 5)]:
        assert p.contains(z) == (sum(z) >= 0)
    assert not p.contains((-1, Fraction(1, 2)))
    assert cone_from_relation([], 2).contains((0, 1)) and not cone_from_relation([], 2).contains((-1, 2))


def test_degenerate_relation():
    p = cone_from_relation([((0, 0), (-1, -1))], 2)
    assert p.equivalent(embed_scalar(3, 2), embed_scalar(-7, 2))


def test_equivalence_constructor():
    p = cone_from_equivalences([((0, 0), (1, -1))], 2)
    c = coin_preorder()
    for z in [(1, -1), (-1, 1), (2, -3), (0, 1)]:
        assert p.contains(z) == c.contains(z)
    assert cone_from_equivalences([], 2).generators == ()
    a = Event([1, 0, 1])
    q = cone_from_equivalences([((0, 0, 0), embed_scalar(1, 3) - a)], 3)
    assert q.equivalent(a, embed_scalar(1, 3))


def test_relations_on_the_coin():
    p = coin_preorder()
    assert nonstrict(p, (0, 0), (1, -1))
    assert not nonstrict(p, (0, 0), (-1, Fraction(-1, 2)))
    assert strict(p, (0, 0), (1, 0))
    assert not strict(p, (0, 0), (0, 0))
    assert equivalent(p, (1, 0), (0, 1))
    assert not equivalent(orthant_preorder(2), (1, 0), (0, 1))


def test_conditionals():
    p = coin_preorder()
    on_h = conditional(p, H)
    for x, y in [((1, 9), (2, -9)), ((3, 0), (2, 0)), ((0, 5), (0, -5))]:
        assert on_h.nonstrict(x, y) == (x[0] <= y[0])
    same = conditional(p, ONE)
    for z in [(1, -2), (2, -1)]:
        assert same.nonstrict((0, 0), z) == p.nonstrict((0, 0), z)
    none = conditional(p, ZERO)
    assert none.nonstrict((5, 5), (-5, -5)) and not none.strict((0, 0), (1, 1))
    g = greatest_preorder(2)
    assert not g.strict((0, 0), (1, 1))


def test_classification():
    assert classify(coin_preorder()) is Regularity.REGULAR
    assert classify(greatest_preorder(2)) is Regularity.DEGENERATE
    p = ConePreorder(2, [(-1, 0)])
    assert classify(p) is Regularity.NEITHER
    assert p.equivalent(H, (0, 0)) and not p.equivalent(ONE, (0, 0))


def test_subadditivity_examples():
    assert check_subadditivity(coin_preorder(), [H])
    assert check_subadditivity(orthant_preorder(2), [H, T, ONE])
    assert check_subadditivity(coin_preorder(), [ZERO, H, T, ONE])


vec = st.lists(st.integers(-5, 5), min_size=3, max_size=3).map(RandomQuantity)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), vec, vec, vec, st.integers(0, 7))
def test_defining_properties_on_random_cones(seed, x, y, z, mask):
    rng = random.Random(seed)
    p = ConePreorder(3, [[rng.randint(-5, 5) for _ in range(3)] for _ in range(rng.randint(0, 4))])
    c = Event(n=3, mask=mask)
    # plausible: every event is nonnegative
    assert p.nonstrict((0, 0, 0), c)
    # reflexive
    assert p.nonstrict(x, x)
    # additive and multiplicative by events
    if p.nonstrict(x, y):
        assert p.nonstrict(x + z, y + z)
        assert p.nonstrict(x * c, y * c)
        # transitive
        if p.nonstrict(y, z):
            assert p.nonstrict(x, z)
    # pointwise order implies the preorder
    if (y - x).is_nonnegative():
        assert p.nonstrict(x, y)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_subadditivity_holds_on_random_cones(seed):
    rng = random.Random(seed)
    p = random_cone(rng)
    evs = [Event(n=p.dim, mask=rng.randint(0, (1 << p.dim) - 1)) for _ in range(rng.randint(1, 4))]
    assert check_subadditivity(p, evs)
