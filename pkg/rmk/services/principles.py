"""
Principles - Consequence principles and opposition squares as local sequent checks

Sequents use p = p0 and q = p1. A "valid" entry must survive the exhaustive
small-model search plus the random trials; a "witnessed" entry must produce a
countermodel (judgment compatibility).
"""
from typing import Optional

import structlog

from rmk.core.semantics import sequent_valid
from rmk.core.syntax import parse_sequent
from rmk.models.report import Expectation, Principle, PrincipleReport, PrincipleResult, TrialConfig

logger = structlog.get_logger()

VALID = Expectation.VALID
WITNESSED = Expectation.WITNESSED


def _p(name: str, sequent: str, expect: Expectation, group: str, corner: Optional[str] = None) -> Principle:
    return Principle(name=name, sequent=sequent, expect=expect, group=group, corner=corner)


PRINCIPLES: list[Principle] = [
    # Standard connectives
    _p("StdC.1", "p0 & p1 |- p0", VALID, "standard"),
    _p("StdC.2", "p0 & p1 |- p1", VALID, "standard"),
    _p("StdC.3", "p0, p1 |- p0 & p1", VALID, "standard"),
    _p("StdD.1", "p0 |- p0 | p1", VALID, "standard"),
    _p("StdD.2", "p1 |- p0 | p1", VALID, "standard"),
    _p("StdD.3", "p0 | p1 |- p0, p1", VALID, "standard"),
    _p("StdT", "|- T", VALID, "standard"),
    _p("StdB", "F |-", VALID, "standard"),

    # Box-plus and diamond-plus
    _p("PM1.0", "|- box T", VALID, "modalities"),
    _p("PM1.1", "box (p0 & p1) |- box p0 & box p1", VALID, "modalities"),
    _p("PM1.2", "box p0 & box p1 |- box (p0 & p1)", VALID, "modalities"),
    _p("PM2.0", "dia F |-", VALID, "modalities"),
    _p("PM2.1", "dia p0 | dia p1 |- dia (p0 | p1)", VALID, "modalities"),
    _p("PM2.2", "dia (p0 | p1) |- dia p0 | dia p1", VALID, "modalities"),

    # Box-minus (frown) and diamond-minus (smile)
    _p("DM1.0", "|- frown F", VALID, "modalities"),
    _p("DM1.1", "frown (p0 | p1) |- frown p0 & frown p1", VALID, "modalities"),
    _p("DM1.2", "frown p0 & frown p1 |- frown (p0 | p1)", VALID, "modalities"),
    _p("DM2.0", "smile T |-", VALID, "modalities"),
    _p("DM2.1", "smile p0 | smile p1 |- smile (p0 & p1)", VALID, "modalities"),
    _p("DM2.2", "smile (p0 & p1) |- smile p0 | smile p1", VALID, "modalities"),

    # Negations and subclassicality
    _p("Neg.smile.a", "p0 |- smile p0", WITNESSED, "negation"),
    _p("Neg.smile.b", "smile p0 |- p0", WITNESSED, "negation"),
    _p("Neg.frown.a", "p0 |- frown p0", WITNESSED, "negation"),
    _p("Neg.frown.b", "frown p0 |- p0", WITNESSED, "negation"),
    _p("Neg_i.smile", "p0, smile p0 |- p1", WITNESSED, "negation"),
    _p("Neg_u.frown", "p1 |- p0, frown p0", WITNESSED, "negation"),
    _p("Neg_i.not", "p0, not p0 |- p1", VALID, "negation"),
    _p("Neg_u.not", "p1 |- p0, not p0", VALID, "negation"),

    # Gentle explosion and implosion
    _p("ConInc.1", "inc p0, con p0 |-", VALID, "restoration"),
    _p("ConInc.2", "|- inc p0, con p0", VALID, "restoration"),
    _p("Con1", "con p0, p0, smile p0 |-", VALID, "restoration"),
    _p("Con2a", "|- con p0, p0", VALID, "restoration"),
    _p("Con2b", "|- con p0, smile p0", VALID, "restoration"),
    _p("LegCa", "p0, con p0 |-", WITNESSED, "restoration"),
    _p("LegCb", "smile p0, con p0 |-", WITNESSED, "restoration"),
    _p("UndDet.1", "det p0, und p0 |-", VALID, "restoration"),
    _p("UndDet.2", "|- det p0, und p0", VALID, "restoration"),
    _p("Und1", "|- p0, frown p0, und p0", VALID, "restoration"),
    _p("Und2a", "p0, und p0 |-", VALID, "restoration"),
    _p("Und2b", "frown p0, und p0 |-", VALID, "restoration"),
    _p("LegDa", "|- p0, und p0", WITNESSED, "restoration"),
    _p("LegDb", "|- frown p0, und p0", WITNESSED, "restoration"),

    # Legitimacy squares
    _p("Leg1.A", "con p0, p0 |-", WITNESSED, "legitimacy-square-1", "A"),
    _p("Leg1.E", "det p0 |- p0", WITNESSED, "legitimacy-square-1", "E"),
    _p("Leg1.I", "|- p0, und p0", WITNESSED, "legitimacy-square-1", "I"),
    _p("Leg1.O", "p0 |- inc p0", WITNESSED, "legitimacy-square-1", "O"),
    _p("Leg2.A", "con p0, smile p0 |-", WITNESSED, "legitimacy-square-2", "A"),
    _p("Leg2.E", "det p0 |- frown p0", WITNESSED, "legitimacy-square-2", "E"),
    _p("Leg2.I", "|- frown p0, und p0", WITNESSED, "legitimacy-square-2", "I"),
    _p("Leg2.O", "smile p0 |- inc p0", WITNESSED, "legitimacy-square-2", "O"),

    # Basic restorative square
    _p("Basic.A", "con p0, p0, smile p0 |-", VALID, "basic-square", "A"),
    _p("Basic.E", "det p0 |- p0, frown p0", VALID, "basic-square", "E"),
    _p("Basic.I", "|- p0, frown p0, und p0", VALID, "basic-square", "I"),
    _p("Basic.O", "p0, smile p0 |- inc p0", VALID, "basic-square", "O"),

    # Standard restorative square; the second E entry is read with frown
    _p("Standard.A1", "|- con p0, p0", VALID, "standard-square", "A"),
    _p("Standard.A2", "|- con p0, smile p0", VALID, "standard-square", "A"),
    _p("Standard.E1", "p0 |- det p0", VALID, "standard-square", "E"),
    _p("Standard.E2", "frown p0 |- det p0", VALID, "standard-square", "E"),
    _p("Standard.I1", "und p0, p0 |-", VALID, "standard-square", "I"),
    _p("Standard.I2", "und p0, frown p0 |-", VALID, "standard-square", "I"),
    _p("Standard.O1", "inc p0 |- p0", VALID, "standard-square", "O"),
    _p("Standard.O2", "inc p0 |- smile p0", VALID, "standard-square", "O"),
]


def principle_suite(search: Optional[TrialConfig] = None, names: Optional[list[str]] = None) -> PrincipleReport:
    """Check every principle (or the named ones) by local countermodel search"""
    search = search or TrialConfig()
    report = PrincipleReport()
    selected = [p for p in PRINCIPLES if names is None or p.name in names]
    logger.info("suite_started", suite="principles", principles=len(selected))
    for principle in selected:
        verdict = sequent_valid(parse_sequent(principle.sequent), search=search)
        result = PrincipleResult(principle=principle, verdict=verdict)
        if not result.passed:
            logger.warning("principle_failed", name=principle.name, sequent=principle.sequent, verdict=verdict.kind.value)
        report.results.append(result)
    logger.info("suite_finished", suite="principles", ok=report.ok, total=len(report.results))
    return report
