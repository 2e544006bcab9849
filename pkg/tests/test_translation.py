"""
Tests for the standard translation and the first-order evaluator
"""
import pytest
from hypothesis import given, settings

from rmk.core.syntax import parse_formula
from rmk.core.translation import fol_eval, free_vars, parse_fol, print_fol, st_check, standard_translation
from rmk.errors import FolSyntaxError, UnassignedVariableError
from rmk.models import fol
from rmk.models.fol import X
from tests.conftest import formulas, models


@pytest.mark.parametrize("text,expected", [
    ("T", "x = x"),
    ("F", "!(x = x)"),
    ("p1", "P1(x)"),
    ("smile p0", "exists y0. (R(x,y0) & !P0(y0))"),
    ("frown p0", "forall y0. (R(x,y0) -> !P0(y0))"),
    ("con p0", "!P0(x) | forall y0. (R(x,y0) -> P0(y0))"),
    ("und p0", "!P0(x) & exists y0. (R(x,y0) & P0(y0))"),
    ("smile smile p0", "exists y0. (R(x,y0) & !exists y1. (R(y0,y1) & !P0(y1)))"),
    ("p0 & (p1 | p2)", "P0(x) & (P1(x) | P2(x))"),
])
def test_translation_text(text, expected):
    assert print_fol(standard_translation(parse_formula(text))) == expected


def test_each_modal_clause_takes_a_fresh_variable():
    alpha = standard_translation(parse_formula("dia p0 & box p1"))
    assert print_fol(alpha) == "exists y0. (R(x,y0) & P0(y0)) & forall y1. (R(x,y1) -> P1(y1))"


@given(formulas())
def test_translation_has_only_x_free(phi):
    assert free_vars(standard_translation(phi)) <= {X}


@given(formulas(max_leaves=8))
def test_printed_translation_reads_back(phi):
    alpha = standard_translation(phi)
    assert parse_fol(print_fol(alpha)) == alpha


@settings(max_examples=80, deadline=None)
@given(models(), formulas(max_leaves=10))
def test_modal_and_first_order_truth_agree(model, phi):
    assert all(st_check(model, w, phi) for w in model.worlds())


def test_free_variable_must_be_assigned(chain):
    with pytest.raises(UnassignedVariableError) as info:
        fol_eval(chain, fol.Pred(0, 1), {X: 0})
    assert info.value.var == 1


def test_quantifier_restores_the_outer_binding(chain):
    # exists x. P0(x) inside a conjunction that still reads the outer x
    alpha = fol.And(fol.Exists(X, fol.Pred(0, X)), fol.Not(fol.Pred(0, X)))
    assert fol_eval(chain, alpha, {X: 0})
    assert not fol_eval(chain, alpha, {X: 1})


def test_malformed_first_order_text():
    with pytest.raises(FolSyntaxError):
        parse_fol("forall y0 R(x,y0)")
