import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gen import PERTURBATIONS, Layered, coherent_assessment, perturbed_assessment
from plausible.algebra import Event
from plausible.assessment import Assessment, AssessmentEntry, BetTerm, EventTerm, Witness
from plausible.coherence import check_coherence, extend, subset_budget, validate_witness
from plausible.errors import IncoherentAssessmentError, InputError, ResourceLimitError
from plausible.exact import INF
from plausible.expectation import Defined

H, T, ONE = Event([1, 0]), Event([0, 1]), Event([1, 1])


def test_fair_coin_is_coherent():
    a = Assessment.of(2, (H, ONE, Fraction(1, 2)), (T, ONE, Fraction(1, 2)))
    assert check_coherence(a).coherent


def test_overconfident_head_has_the_expected_book():
    a = Assessment.of(2, (H, ONE, 2))
    v = check_coherence(a)
    assert not v.coherent
    assert v.witness == Witness((EventTerm(Fraction(1), T),), (BetTerm(0, Fraction(1), Fraction(-1)),))
    assert validate_witness(a, v.witness)


def test_negative_probability_and_inconsistent_pair():
    assert not check_coherence(Assessment.of(2, (H, ONE, -1))).coherent
    a = Assessment.of(2, (H, ONE, Fraction(1, 2)), (T, ONE, Fraction(2, 3)))
    v = check_coherence(a)
    assert not v.coherent and validate_witness(a, v.witness)
    assert {b.entry for b in v.witness.bet_terms} == {0, 1}


def test_infinite_value_is_incoherent():
    a = Assessment.of(2, ((3, 5), ONE, INF))
    v = check_coherence(a)
    assert not v.coherent and validate_witness(a, v.witness)
    (bet,) = v.witness.bet_terms
    assert bet.r == 1 and bet.s == -6


def test_witness_validation_rejects_tampering():
    a = Assessment.of(2, (H, ONE, 2))
    w = check_coherence(a).witness
    (bet,) = w.bet_terms
    flipped = Witness(w.event_terms, (BetTerm(0, -bet.r, bet.s),))
    shifted = Witness(w.event_terms, (BetTerm(0, bet.r, bet.s + 1),))
    no_bets = Witness(w.event_terms, ())
    for bad in (flipped, shifted, no_bets):
        assert not validate_witness(a, bad)
    with pytest.raises(InputError):
        validate_witness(a, Witness((), (BetTerm(4, Fraction(1), Fraction(0)),)))


def test_input_rejections():
    with pytest.raises(InputError):
        AssessmentEntry(H, Event([0, 0]), 0)
    with pytest.raises(InputError):
        Assessment.of(2, (H, ONE, 0), (H, ONE, 1))
    Assessment.of(2, (H, ONE, 0), (H, ONE, 0))
    with pytest.raises(InputError):
        Assessment.of(2, ((1, 0, 0), ONE, 0))


def test_budget(monkeypatch):
    a = Assessment.of(2, (H, ONE, Fraction(1, 2)), (T, ONE, Fraction(1, 2)))
    with pytest.raises(ResourceLimitError):
        check_coherence(a, budget=1)
    monkeypatch.setenv("PK_SUBSET_BUDGET", "1")
    assert subset_budget() == 1
    with pytest.raises(ResourceLimitError):
        check_coherence(a)
    monkeypatch.setenv("PK_SUBSET_BUDGET", "lots")
    with pytest.raises(InputError):
        subset_budget()
    monkeypatch.delenv("PK_SUBSET_BUDGET")
    assert subset_budget() == 16


def test_extension_examples():
    a = Assessment.of(2, (H, ONE, Fraction(1, 2)), (T, ONE, Fraction(1, 2)))
    assert extend(a, (3, 5), ONE) == Defined(4)
    assert extend(a, (3, 5), H) == Defined(3)
    z = Assessment.of(
        3,
        ((1, 0, 0), (1, 1, 1), 0),
        ((3, 5, 7), (1, 0, 0), 3),
        ((0, 1, 0), (0, 1, 1), Fraction(1, 4)),
    )
    assert extend(z, (3, 5, 7), (1, 1, 1)) == Defined(Fraction(13, 2))
    assert extend(z, (3, 5, 7), (1, 0, 0)) == Defined(3)
    with pytest.raises(IncoherentAssessmentError):
        extend(Assessment.of(2, (H, ONE, 2)), (1, 1), ONE)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_layered_models_are_coherent_and_extended_faithfully(seed):
    rng = random.Random(seed)
    model = Layered.random(rng, rng.randint(1, 4))
    a = coherent_assessment(rng, model, rng.randint(1, 5))
    assert check_coherence(a).coherent
    for e in a:
        assert extend(a, e.x, e.given) == Defined(e.value)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(PERTURBATIONS))
def test_perturbed_assessments_get_valid_books(seed, kind):
    rng = random.Random(seed)
    a = perturbed_assessment(rng, kind)
    v = check_coherence(a)
    assert not v.coherent
    assert validate_witness(a, v.witness)
    assert v.witness.total(a).is_zero()
