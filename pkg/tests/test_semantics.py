"""
Tests for truth sets, the definable closure, subsumption and sequent search
"""
import pytest
from hypothesis import HealthCheck, given, settings

from rmk.core.semantics import (
    closure_equivalence,
    definable_closure,
    operator_transformer,
    satisfies,
    sequent_valid,
    subsumption,
    truth_mask,
    truth_set,
)
from rmk.core.syntax import parse_formula, parse_sequent
from rmk.errors import ClosureCapExceeded
from rmk.models.formula import And, Formula, Or, SimilarityType, Unary, UnaryOp
from rmk.models.report import TrialConfig
from tests.conftest import formulas, models


@pytest.mark.parametrize("text,expected", [
    ("p0", {1, 2}),
    ("not p0", {0}),
    ("box p0", {0, 1, 2}),
    ("dia p0", {0, 1}),
    ("smile p0", set()),
    ("frown p0", {2}),
    ("con p0", {0, 1, 2}),
    ("det p0", {1, 2}),
    ("inc p0", set()),
    ("und p0", {0}),
    ("smile F", {0, 1}),
    ("frown T | p0", {1, 2}),
])
def test_truth_sets_on_a_chain(chain, text, expected):
    assert truth_set(chain, parse_formula(text)) == expected


def test_satisfies_checks_the_world(chain):
    assert satisfies(chain, 0, parse_formula("und p0"))
    assert not satisfies(chain, 1, parse_formula("und p0"))
    with pytest.raises(ValueError):
        satisfies(chain, 3, parse_formula("p0"))


def test_operator_transformer(chain):
    assert operator_transformer(UnaryOp.UND, chain, [1, 2]) == {0}
    assert operator_transformer(UnaryOp.SMILE, chain, []) == {0, 1}
    with pytest.raises(ValueError):
        operator_transformer(UnaryOp.BOX, chain, [5])


def test_closure_of_the_positive_fragment(chain):
    family = definable_closure(chain, SimilarityType())
    assert set(family.sets()) == {frozenset(), frozenset({0, 1, 2}), frozenset({1, 2})}


def test_closure_with_smile(chain):
    family = definable_closure(chain, SimilarityType.of("smile"))
    assert set(family.sets()) == {
        frozenset(), frozenset({0, 1, 2}), frozenset({1, 2}), frozenset({0, 1}), frozenset({1}),
    }
    assert family.contains_set({1})
    # every stored formula defines its own set
    for mask, phi in family.formulas.items():
        assert truth_set(chain, phi) == {w for w in range(3) if mask >> w & 1}


def test_closure_cap(chain):
    with pytest.raises(ClosureCapExceeded) as info:
        definable_closure(chain, SimilarityType.of("smile"), cap=2)
    assert info.value.cap == 2


def test_subsumption(chain):
    assert subsumption(chain, SimilarityType()).pairs == {
        (0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2),
    }
    assert subsumption(chain, SimilarityType.of("smile")).pairs == {(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)}


def test_closure_equivalence_is_symmetric(chain):
    relation = closure_equivalence(chain, SimilarityType())
    assert relation.pairs == {(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)}


def test_valid_sequent_searches_every_small_model():
    verdict = sequent_valid(parse_sequent("p0 |- p0"))
    assert verdict.valid
    # 1, 2 and 3 worlds over one letter, then the random trials
    assert verdict.models_searched == 4 + 64 + 4096 + 100


def test_countermodel_is_the_smallest_found():
    verdict = sequent_valid(parse_sequent("p0, con p0 |-"), search=TrialConfig(trials=0))
    assert not verdict.valid
    assert verdict.model.n_worlds == 1
    assert verdict.model.edges == frozenset()
    assert verdict.model.letter_mask(0) == 1
    assert verdict.world == 0


def test_sequent_outside_the_language():
    with pytest.raises(ValueError):
        sequent_valid(parse_sequent("smile p0 |-"), lam=SimilarityType.of("con"))


def _not(phi: Formula) -> Formula:
    return Unary(UnaryOp.NOT, phi)


def _dualities(phi: Formula) -> list[tuple[UnaryOp, Formula]]:
    return [
        (UnaryOp.FROWN, Unary(UnaryOp.BOX, _not(phi))),
        (UnaryOp.SMILE, Unary(UnaryOp.DIA, _not(phi))),
        (UnaryOp.CON, Or(_not(phi), Unary(UnaryOp.BOX, phi))),
        (UnaryOp.DET, Or(phi, Unary(UnaryOp.FROWN, phi))),
        (UnaryOp.INC, And(phi, Unary(UnaryOp.SMILE, phi))),
        (UnaryOp.UND, And(_not(phi), Unary(UnaryOp.DIA, phi))),
    ]


@settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(), formulas(letters=2, max_leaves=6))
def test_operators_agree_with_their_classical_readings(model, phi):
    for op, reading in _dualities(phi):
        assert truth_mask(model, Unary(op, phi)) == truth_mask(model, reading), op.value
