"""
Worked Examples - Replays every registry entry and its specific conclusions
"""
from itertools import combinations

import structlog

from rmk.core.semantics import closure_equivalence, satisfies, subsumption
from rmk.core.simulation import (
    check_pair,
    greatest_simulation,
    kripke_bisimulation,
    verify_simulation,
    witness_formula,
)
from rmk.core.syntax import parse_formula
from rmk.models.formula import Letter, SimilarityType, UnaryOp
from rmk.models.relation import ConditionTag, Relation, SimMode
from rmk.models.report import ExampleReport, ExamplesReport, PaperExample
from rmk.services.probe import certificate_from_document, definability_probe, verify_certificate
from rmk.services.registry import registry

logger = structlog.get_logger()


def _common(example: PaperExample, report: ExampleReport) -> None:
    for fact in example.facts:
        actual = satisfies(example.model, fact.world, parse_formula(fact.formula))
        name = example.world_names[fact.world]
        report.check(
            f"{name} {'|=' if fact.expected else '|/='} {fact.formula}",
            actual == fact.expected,
            f"evaluated {actual}",
        )


def _certificate(report: ExampleReport, target: str, lam_label: str, expect_source: str = "") -> None:
    lam = SimilarityType.parse(lam_label)
    cert = definability_probe(parse_formula(target), lam)
    if not report.check(f"certificate: {target} not definable in L{{{lam_label}}}", cert is not None):
        return
    # Re-verify from the serialized form alone
    problems = verify_certificate(certificate_from_document(cert.to_document()))
    report.check("certificate re-verifies from JSON", not problems, "; ".join(problems) or cert.source)
    if expect_source:
        report.check(f"certificate comes from {expect_source}", cert.source == expect_source, cert.source)


def _smile_vsmile(example: PaperExample) -> ExampleReport:
    report = ExampleReport(example=example.id)
    lam = SimilarityType.parse(example.lambda_label)
    model = example.model
    report.check("claimed relation is an {inc}-simulation", verify_simulation(model, lam, example.relation).ok)
    _common(example, report)
    greatest = greatest_simulation(model, lam)
    expected = example.relation.union(Relation.identity(model.n_worlds))
    report.check("greatest {inc}-simulation contains the claim and the identity", expected.pairs <= greatest.pairs)
    _certificate(report, "smile p0", "inc", "registry:smile_vsmile")
    return report


def _neg(example: PaperExample) -> ExampleReport:
    report = ExampleReport(example=example.id)
    model, relation = example.model, example.relation
    smile = SimilarityType.of(UnaryOp.SMILE)
    smile_con = SimilarityType.parse(example.lambda_label)
    report.check("claimed relation is a {smile}-simulation", verify_simulation(model, smile, relation).ok)
    violations = verify_simulation(model, smile_con, relation).violations
    found = [(v.pair, v.condition, v.witness) for v in violations]
    report.check(
        "under {smile,con} the claim fails only Sim_con at (w, v) via t",
        found == [((0, 1), ConditionTag.SIM_CON, 3)],
        str([(list(p), c.value, x) for p, c, x in found]),
    )
    _common(example, report)
    report.check("witness for (v, w) in L{smile} is p0", witness_formula(model, smile, 1, 0) == Letter(0))
    report.check("v does not {smile,con}-subsume w", (0, 1) not in subsumption(model, smile_con))
    _certificate(report, "not p0", "smile", "registry:neg")
    _certificate(report, "not p0", "smile,con")
    return report


def _dashed(example: PaperExample) -> ExampleReport:
    report = ExampleReport(example=example.id)
    model = example.model
    lam = SimilarityType.parse(example.lambda_label)
    ablated = SimMode.ablate(ConditionTag.SIM_CON)
    report.check("claimed relation is a {con}-simulation", verify_simulation(model, lam, example.relation).ok)
    tags = [v.condition for v in check_pair(model, lam, example.relation, (0, 1), ablated)]
    report.check("without the dashed clause (w, v) violates Sim_con", tags == [ConditionTag.SIM_CON])
    report.check("plain greatest {con}-simulation contains (w, v)", (0, 1) in greatest_simulation(model, lam))
    report.check("ablated greatest simulation excludes (w, v)", (0, 1) not in greatest_simulation(model, lam, ablated))
    report.check("v {con}-subsumes w", (0, 1) in subsumption(model, lam))
    _common(example, report)
    report.check("witness for (t, v) in L{con} is p0", witness_formula(model, lam, 2, 1) == Letter(0))
    return report


def _undef_new(example: PaperExample) -> ExampleReport:
    report = ExampleReport(example=example.id)
    model, relation = example.model, example.relation
    restoration = [UnaryOp.CON, UnaryOp.DET, UnaryOp.INC, UnaryOp.UND]
    failing = []
    for size in range(len(restoration) + 1):
        for ops in combinations(restoration, size):
            lam = SimilarityType(frozenset(ops))
            if not verify_simulation(model, lam, relation, SimMode.symmetric()).ok:
                failing.append(lam.label or "{}")
    report.check("claim is a symmetric simulation for every subset of {con,det,inc,und}", not failing, ", ".join(failing))
    lam = SimilarityType.parse(example.lambda_label)
    report.check("w and v agree on every definable set with negation", (0, 1) in closure_equivalence(model, lam))
    report.check("w and v are not Kripke bisimilar", (0, 1) not in kripke_bisimulation(model))
    _common(example, report)
    _certificate(report, "box F", "not,con,det,inc,und", "registry:undef_new")
    return report


_RUNNERS = {
    "smile_vsmile": _smile_vsmile,
    "neg": _neg,
    "dashed": _dashed,
    "undef_new": _undef_new,
}


def run_paper_examples() -> ExamplesReport:
    report = ExamplesReport()
    for example in registry.get_all():
        runner = _RUNNERS.get(example.id)
        if runner is None:
            logger.warning("example_without_runner", example=example.id)
            continue
        result = runner(example)
        logger.info("example_checked", example=example.id, ok=result.ok, assertions=len(result.assertions))
        report.examples.append(result)
    return report
