"""
Tests for the example registry, the replay of its conclusions and the definability probe
"""
import pytest

from rmk.core.simulation import verify_simulation
from rmk.core.syntax import parse_formula
from rmk.models.formula import SimilarityType
from rmk.models.relation import ConditionTag, SimMode
from rmk.models.report import CertificateKind
from rmk.services.examples import run_paper_examples
from rmk.services.probe import certificate_from_document, definability_probe, probe_mode, verify_certificate
from rmk.services.registry import ExampleRegistry, registry


def test_registry_lists_examples_in_order():
    assert registry.ids() == ["smile_vsmile", "neg", "dashed", "undef_new"]
    with pytest.raises(KeyError):
        registry.require("missing")
    assert registry.get("missing") is None


def test_registries_are_independent():
    other = ExampleRegistry()
    example = other.require("dashed").model_copy(update={"id": "dashed_copy"})
    other.register(example)
    assert "dashed_copy" in other.ids()
    assert "dashed_copy" not in registry.ids()


def test_every_example_replays():
    report = run_paper_examples()
    failed = [(e.example, a.name, a.detail) for e in report.examples for a in e.assertions if not a.passed]
    assert failed == []
    assert [e.example for e in report.examples] == registry.ids()
    assert report.to_document()["ok"] is True


def test_smile_example_facts(smile_vsmile):
    lam = SimilarityType.parse(smile_vsmile.lambda_label)
    assert verify_simulation(smile_vsmile.model, lam, smile_vsmile.relation).ok


def test_neg_claim_holds_for_smile_but_not_for_con(neg):
    assert verify_simulation(neg.model, SimilarityType.of("smile"), neg.relation).ok
    report = verify_simulation(neg.model, SimilarityType.parse("smile,con"), neg.relation)
    assert [(v.pair, v.condition, v.witness) for v in report.violations] == [((0, 1), ConditionTag.SIM_CON, 3)]


def test_undef_new_claim_is_symmetric_for_every_restoration_subset(undef_new):
    for label in ["", "con", "det,inc", "con,det,inc,und"]:
        assert verify_simulation(undef_new.model, SimilarityType.parse(label), undef_new.relation, SimMode.symmetric()).ok


def test_smile_certificate_over_inc():
    cert = definability_probe(parse_formula("smile p0"), SimilarityType.of("inc"))
    assert cert.kind == CertificateKind.SIMULATION
    assert cert.source == "registry:smile_vsmile"
    assert cert.pair == (0, 1)
    assert verify_certificate(cert) == []


def test_box_certificate_with_negation_uses_symmetric_mode():
    lam = SimilarityType.parse("not,con,det,inc,und")
    assert probe_mode(lam).is_symmetric
    cert = definability_probe(parse_formula("box F"), lam)
    assert cert.source == "registry:undef_new"
    assert cert.pair == (1, 0)
    assert verify_certificate(certificate_from_document(cert.to_document())) == []


def test_certificate_survives_json_and_tampering_is_caught():
    cert = definability_probe(parse_formula("not p0"), SimilarityType.of("smile"))
    document = cert.to_document()
    assert verify_certificate(certificate_from_document(document)) == []
    document["pair"] = list(reversed(document["pair"]))
    assert verify_certificate(certificate_from_document(document)) != []


def test_certificate_search_rejects_targets_inside_the_language():
    with pytest.raises(ValueError):
        definability_probe(parse_formula("inc p0"), SimilarityType.of("inc"))



def test_claim_failing_the_language_falls_through_to_computed_relations():
    cert = definability_probe(parse_formula("not p0"), SimilarityType.parse("smile,con"))
    assert cert is not None
    assert cert.source != "registry:neg"
    assert verify_certificate(cert) == []
