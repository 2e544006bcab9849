"""
Tests for the seeded property suites
"""
import pytest

from rmk.core.kripke import SplitMix64
from rmk.core.syntax import in_language, modal_depth
from rmk.models.formula import SimilarityType
from rmk.models.report import LambdaPolicy, TrialConfig
from rmk.services.generators import random_formula, random_similarity_type, trial_model
from rmk.services.suites import SUITES, directed_suite, hm_suite, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_on_small_runs(name, small_cfg):
    report = run_suite(name, small_cfg)
    assert report.failures == []
    assert report.trials == small_cfg.trials
    assert report.passed == report.trials - report.skipped
    if name != "witness":
        assert report.checks > 0


def test_suites_replay_exactly(small_cfg):
    first = run_suite("adequacy", small_cfg).to_document()
    second = run_suite("adequacy", small_cfg).to_document()
    assert first == second


def test_parallel_runs_match_serial_runs(small_cfg):
    serial = run_suite("hm", small_cfg)
    parallel = run_suite("hm", small_cfg.model_copy(update={"jobs": 3}))
    assert (parallel.trials, parallel.checks, parallel.skipped) == (serial.trials, serial.checks, serial.skipped)
    assert parallel.failures == serial.failures


def test_tiny_closure_cap_skips_trials(small_cfg):
    report = run_suite("hm", small_cfg.model_copy(update={"closure_cap": 1}))
    assert report.skipped == report.trials
    assert report.ok


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", TrialConfig(trials=1))


def test_generated_formulas_stay_in_the_language():
    rng = SplitMix64(3)
    for _ in range(50):
        lam = random_similarity_type(rng)
        assert lam.ops and lam.is_restorative()
        phi = random_formula(rng, lam, 4, 2)
        assert in_language(phi, lam)
        assert modal_depth(phi) <= 4


def test_directed_policy_draws_subsets_of_smile_and_frown():
    rng = SplitMix64(5)
    drawn = {random_similarity_type(rng, LambdaPolicy.DIRECTED).label for _ in range(100)}
    assert drawn == {"", "smile", "frown", "smile,frown"}
    assert random_similarity_type(rng, LambdaPolicy.FIXED, "con,det") == SimilarityType.parse("con,det")


def test_trial_models_respect_the_bounds():
    cfg = TrialConfig(max_worlds=3, max_letters=1)
    rng = SplitMix64(8)
    for _ in range(30):
        model = trial_model(rng, cfg)
        assert 1 <= model.n_worlds <= 3
        assert len(model.letters()) <= 1


def test_named_entry_points_match_run_suite(small_cfg):
    assert hm_suite(small_cfg).to_document() == run_suite("hm", small_cfg).to_document()
    assert directed_suite(small_cfg).suite == "directed"
