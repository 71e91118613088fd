import random
from fractions import Fraction

import pytest

from gen import Layered, coherent_assessment
from plausible.algebra import Event, RandomQuantity
from plausible.assessment import Assessment
from plausible.coherence import assessment_preorder
from plausible.errors import InputError
from plausible.preorder import ConePreorder, coin_preorder, greatest_preorder, orthant_preorder
from plausible.rules import (
    Holds,
    PreconditionUnmet,
    RuleId,
    Violation,
    fuzz_rules,
    verify_rule,
)

H, T, ONE = Event([1, 0]), Event([0, 1]), Event([1, 1])
X = RandomQuantity([3, 5])

INFINITE_RULES = (RuleId.BAYES_CHAIN_INF_E, RuleId.BAYES_COND_INF_E,
                  RuleId.BAYES_COND_ZERO_P, RuleId.BAYES_P_INF_E)


def zero_probability_preorder():
    a = Assessment.of(
        3,
        ((1, 0, 0), (1, 1, 1), 0),
        ((3, 5, 7), (1, 0, 0), 3),
        ((0, 1, 0), (0, 1, 1), Fraction(1, 4)),
    )
    return assessment_preorder(a)


def test_coin_instances():
    p = coin_preorder()
    assert isinstance(verify_rule(p, "bayes_chain", X=X, C=H), Holds)
    assert isinstance(verify_rule(p, "bayes_cond", X=X, C=H), Holds)
    assert isinstance(verify_rule(p, "bayes_p_form", X=X, C=H), Holds)
    assert isinstance(verify_rule(p, RuleId.CONSISTENCY, X=X, C=H), Holds)
    assert isinstance(verify_rule(p, "homogeneity", X=X, r=0), Holds)
    assert isinstance(verify_rule(p, "real_additivity", {"X": X, "r": Fraction(-7, 3)}), Holds)
    assert isinstance(verify_rule(p, "monotonicity", B=H, C=ONE), Holds)
    assert isinstance(verify_rule(p, "monotonicity", B=ONE, C=H), PreconditionUnmet)
    assert isinstance(verify_rule(p, "min_max", C=H, D=T), Holds)
    assert isinstance(verify_rule(p, "subadditivity", events=[H, T, ONE]), Holds)


def test_undefined_expectations_make_preconditions_fail():
    p = orthant_preorder(2)
    assert isinstance(verify_rule(p, "real_additivity", X=X, r=1), PreconditionUnmet)
    assert isinstance(verify_rule(p, "consistency", X=X), Holds)
    assert isinstance(verify_rule(p, "real_additivity", X=X, C=H, r=1), Holds)


def test_zero_probability_instances():
    p = zero_probability_preorder()
    A = Event([1, 0, 0])
    Y = RandomQuantity([3, 5, 7])
    out = verify_rule(p, "bayes_chain_zero_p", X=Y, C=A)
    assert isinstance(out, Holds)
    assert isinstance(verify_rule(p, "completeness_zero", B=A, C=A), Holds)
    assert isinstance(verify_rule(p, "bayes_cond", X=Y, C=A), PreconditionUnmet)
    assert isinstance(verify_rule(p, "bayes_chain", X=Y, C=A), Holds)


def test_infinite_value_rules_are_vacuous_on_finite_cones():
    rng = random.Random(5)
    for p in (coin_preorder(), orthant_preorder(3), zero_probability_preorder()):
        report = fuzz_rules(p, trials=30, seed=rng.randint(0, 99), rules=INFINITE_RULES)
        for r in INFINITE_RULES:
            assert report.counts[r.value]["holds"] == 0
            assert report.counts[r.value]["violations"] == 0


def test_bad_calls():
    with pytest.raises(InputError):
        verify_rule(coin_preorder(), "no_such_rule", X=X)
    with pytest.raises(InputError):
        verify_rule(coin_preorder(), "bayes_chain")
    with pytest.raises(InputError):
        fuzz_rules(coin_preorder(), trials=0)


@pytest.mark.parametrize("make", [
    lambda: greatest_preorder(2),
    lambda: orthant_preorder(3),
    lambda: coin_preorder(),
    lambda: ConePreorder(3, [(-1, 1, 0), (2, -1, -1)]),
    lambda: zero_probability_preorder(),
])
def test_fuzzing_finds_no_violations(make):
    report = fuzz_rules(make(), trials=40, seed=11)
    assert report.clean, report.as_text()
    assert set(report.counts) == {r.value for r in RuleId}


def test_fuzzing_on_layered_assessments():
    rng = random.Random(3)
    for _ in range(3):
        model = Layered.random(rng, 3)
        p = assessment_preorder(coherent_assessment(rng, model, 4))
        assert fuzz_rules(p, trials=15, seed=rng.randint(0, 99)).clean


def test_determinism_and_rendering():
    a = fuzz_rules(coin_preorder(), trials=20, seed=7)
    b = fuzz_rules(coin_preorder(), trials=20, seed=7)
    assert a.as_dict() == b.as_dict() and a.as_text() == b.as_text()
    assert a.as_text().endswith("violations: 0")
    assert Violation("x").details == "x"
