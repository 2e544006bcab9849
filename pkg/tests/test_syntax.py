"""
Tests for the formula parser, printer and syntactic helpers
"""
import pytest
from hypothesis import given

from rmk.core.syntax import (
    formula_size,
    in_language,
    letters_of,
    modal_depth,
    operators_of,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
)
from rmk.errors import FormulaSyntaxError, UnknownOperatorError
from rmk.models.formula import And, Bot, Letter, Or, SimilarityType, Top, Unary, UnaryOp
from tests.conftest import formulas

p0, p1, p2 = Letter(0), Letter(1), Letter(2)


def test_parse_atoms():
    assert parse_formula("T") == Top()
    assert parse_formula("F") == Bot()
    assert parse_formula("p12") == Letter(12)


def test_unary_binds_tighter_than_and_than_or():
    assert parse_formula("p0 | p1 & p2") == Or(p0, And(p1, p2))
    assert parse_formula("smile p0 & p1") == And(Unary(UnaryOp.SMILE, p0), p1)
    assert parse_formula("con (p0 | p1)") == Unary(UnaryOp.CON, Or(p0, p1))


def test_binary_operators_associate_left():
    assert parse_formula("p0 & p1 & p2") == And(And(p0, p1), p2)
    assert parse_formula("p0 | p1 | p2") == Or(Or(p0, p1), p2)


def test_operators_stack():
    assert parse_formula("not frown p0") == Unary(UnaryOp.NOT, Unary(UnaryOp.FROWN, p0))


def test_printer_uses_minimal_parentheses():
    assert print_formula(parse_formula("(p0 | p1) & p2")) == "(p0 | p1) & p2"
    assert print_formula(parse_formula("p0 & (p1 & p2)")) == "p0 & (p1 & p2)"
    assert print_formula(parse_formula("((p0 & p1)) | p2")) == "p0 & p1 | p2"
    assert print_formula(parse_formula("smile (p0 & T)")) == "smile (p0 & T)"
    assert str(Unary(UnaryOp.DET, Bot())) == "det F"


@given(formulas())
def test_print_then_parse_gives_the_same_tree(phi):
    assert parse_formula(print_formula(phi)) == phi


def test_truncated_input_reports_end_offset():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("p0 &")
    assert info.value.offset == 4
    assert info.value.expected


def test_unknown_operator_is_named():
    with pytest.raises(UnknownOperatorError) as info:
        parse_formula("p0 & foo p1")
    assert info.value.name == "foo"
    assert info.value.offset == 5


def test_bad_character_is_a_syntax_error():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("p0 # p1")


def test_language_membership():
    phi = parse_formula("con p0 & smile (p1 | det p0)")
    assert operators_of(phi) == {UnaryOp.CON, UnaryOp.SMILE, UnaryOp.DET}
    assert in_language(phi, SimilarityType.parse("smile,con,det"))
    assert not in_language(phi, SimilarityType.parse("smile,con"))
    assert in_language(parse_formula("p0 & T"), SimilarityType())


def test_depth_size_and_letters():
    phi = parse_formula("smile (p0 & con p3) | p1")
    assert modal_depth(phi) == 2
    assert formula_size(phi) == 7
    assert letters_of(phi) == {0, 1, 3}


def test_sequents():
    sequent = parse_sequent("p0, con p0 |- ")
    assert sequent.premises == (p0, Unary(UnaryOp.CON, p0))
    assert sequent.conclusions == ()
    assert print_sequent(parse_sequent("|- inc p0, con p0")) == "|- inc p0, con p0"
    with pytest.raises(FormulaSyntaxError):
        parse_sequent("p0, p1")
