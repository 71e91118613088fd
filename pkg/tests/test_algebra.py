from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plausible.algebra import (
    Event,
    RandomQuantity,
    all_events,
    atoms_of,
    coordinate_atoms,
    embed_scalar,
    is_event,
    positive_combination_nonzero,
)
from plausible.errors import InputError

N = 3
comp = st.fractions(max_denominator=20).filter(lambda q: abs(q) < 1000)
quantities = st.lists(comp, min_size=N, max_size=N).map(RandomQuantity)
events = st.integers(0, (1 << N) - 1).map(lambda m: Event(n=N, mask=m))


def test_embedding():
    assert embed_scalar(3, 2) == RandomQuantity([3, 3])
    assert embed_scalar(0, 4).is_zero()
    one = embed_scalar(1, 2)
    H, T = Event([1, 0]), Event([0, 1])
    assert H + T == one and (H * T).is_zero()


def test_event_recognition():
    assert is_event(RandomQuantity([1, 0]))
    assert not is_event(RandomQuantity([Fraction(1, 2), 1]))
    assert is_event(embed_scalar(1, 5))
    with pytest.raises(InputError):
        Event([2, 0])


def test_atoms():
    assert atoms_of([Event([1, 0])]) == [Event([1, 0]), Event([0, 1])]
    assert atoms_of([], 3) == [Event([1, 1, 1])]
    assert atoms_of([Event([1, 1, 0]), Event([0, 1, 1])]) == coordinate_atoms(3)


def test_positive_combination_witness():
    assert positive_combination_nonzero([1], [Event([1, 0])]) == Event([1, 0])
    atom = positive_combination_nonzero([1, 1], [Event([1, 1, 0]), Event([0, 1, 1])])
    assert atom <= Event([1, 1, 0])
    atom = positive_combination_nonzero([Fraction(1, 3)], [Event([1, 1])])
    assert atom.mask and atom <= Event([1, 1])
    with pytest.raises(InputError):
        positive_combination_nonzero([0], [Event([1, 0])])
    with pytest.raises(InputError):
        positive_combination_nonzero([1], [Event([0, 0])])


def test_dimension_checks():
    with pytest.raises(InputError):
        RandomQuantity([])
    with pytest.raises(InputError):
        RandomQuantity([1, 2]) + RandomQuantity([1, 2, 3])


@given(quantities, quantities, quantities)
def test_algebra_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x * embed_scalar(1, N) == x
    assert (x - x).is_zero()


@given(events, events)
def test_boolean_operations_are_pointwise(a, b):
    assert RandomQuantity((a & b).components) == a * b
    assert RandomQuantity((a | b).components) == a + b - a * b
    assert RandomQuantity((~a).components) == embed_scalar(1, N) - a
    assert (a <= b) == ((a & b) == a)


@given(st.lists(events, max_size=4))
def test_atoms_partition_the_sure_event(gens):
    atoms = atoms_of(gens, N)
    total = Event.zero(N)
    for a in atoms:
        assert a.mask and (total & a).mask == 0
        total = total | a
        for g in gens:
            assert a <= g or (a & g).mask == 0
    assert total == Event.one(N)


def test_all_events_count():
    assert len(all_events(3)) == 8
