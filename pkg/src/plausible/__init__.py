"""Exact plausible preorders, induced conditional expectations and coherence."""

from .algebra import Event, RandomQuantity, all_events, atoms_of, coordinate_atoms, embed_scalar
from .assessment import Assessment, AssessmentEntry, BetTerm, EventTerm, Witness
from .axioms import (
    AxiomReport,
    CoxTable,
    DTTable,
    KolmogorovTable,
    cox_check,
    dt_check,
    kolmogorov_check,
    to_assessment,
)
from .coherence import (
    Coherent,
    Incoherent,
    assessment_preorder,
    bounded_quantity_witness,
    check_coherence,
    extend,
    validate_witness,
)
from .errors import IncoherentAssessmentError, InputError, ResourceLimitError
from .exact import INF, NEG_INF, UNDEFINED, ext_add, ext_div, ext_mul, ext_neg, ext_inf, ext_sup
from .expectation import (
    Defined,
    UndefinedExpectation,
    conditional_expectation,
    expectation,
    probability,
)
from .preorder import (
    AssessmentPreorder,
    ConePreorder,
    Regularity,
    classify,
    coin_preorder,
    cone_from_equivalences,
    cone_from_relation,
    greatest_preorder,
    orthant_preorder,
)
from .rules import Holds, PreconditionUnmet, RuleId, Violation, fuzz_rules, verify_rule

__version__ = "0.1.0"
