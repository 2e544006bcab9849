"""
Tests for the consequence principles and the opposition squares
"""
from collections import Counter

import pytest

from rmk.core.syntax import parse_sequent
from rmk.models.report import Expectation, TrialConfig
from rmk.services.principles import PRINCIPLES, principle_suite

QUICK = TrialConfig(exhaustive_worlds=2, trials=20)


def test_principle_names_are_unique_and_parse():
    names = [p.name for p in PRINCIPLES]
    assert len(names) == len(set(names))
    for principle in PRINCIPLES:
        parse_sequent(principle.sequent)


def test_every_square_has_all_four_corners():
    squares = {p.group for p in PRINCIPLES if p.corner}
    assert squares == {"legitimacy-square-1", "legitimacy-square-2", "basic-square", "standard-square"}
    for square in squares:
        assert {p.corner for p in PRINCIPLES if p.group == square} == {"A", "E", "I", "O"}


def test_legitimacy_squares_are_witnessed_and_the_others_valid():
    expectations = Counter((p.group, p.expect) for p in PRINCIPLES if p.corner)
    assert expectations[("legitimacy-square-1", Expectation.WITNESSED)] == 4
    assert expectations[("legitimacy-square-2", Expectation.WITNESSED)] == 4
    assert expectations[("basic-square", Expectation.VALID)] == 4
    assert expectations[("standard-square", Expectation.VALID)] == 8


def test_whole_suite_on_small_models():
    report = principle_suite(QUICK)
    failed = [r.principle.name for r in report.results if not r.passed]
    assert failed == []
    assert report.to_document()["total"] == len(PRINCIPLES)


@pytest.mark.parametrize("name", ["Con1", "Con2a", "Con2b", "Und1", "Und2a", "Und2b", "StdT", "DM1.0", "DM2.0"])
def test_restoration_principles_survive_the_full_search(name):
    report = principle_suite(names=[name])
    assert report.ok
    assert report.results[0].verdict.models_searched > 500


def test_gentle_explosion_needs_the_smile_premise():
    result = principle_suite(names=["LegCa"]).results[0]
    assert result.passed
    model = result.verdict.model
    # one world, p0 true, no edges
    assert model.n_worlds == 1
    assert model.edges == frozenset()
    assert model.letter_mask(0) == 1


def test_smile_is_paraconsistent_and_frown_paracomplete():
    report = principle_suite(QUICK, names=["Neg_i.smile", "Neg_u.frown", "Neg_i.not", "Neg_u.not"])
    assert {r.principle.name: r.verdict.valid for r in report.results} == {
        "Neg_i.smile": False,
        "Neg_u.frown": False,
        "Neg_i.not": True,
        "Neg_u.not": True,
    }
