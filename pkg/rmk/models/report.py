"""
Report Models - Trial configuration, verdicts, suite reports and certificates
"""
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from rmk.config import DEFAULT_CLOSURE_CAP
from rmk.models.kripke import KripkeModel
from rmk.models.relation import Pair, Relation, SimMode


class LambdaPolicy(str, Enum):
    RESTORATIVE = "restorative"  # uniform over nonempty restorative subsets
    DIRECTED = "directed"        # uniform over subsets of {smile, frown}, empty included
    FIXED = "fixed"              # always fixed_lambda


class TrialConfig(BaseModel):
    """Knobs for a seeded suite run; (seed, config) replays exactly"""
    seed: int = 1
    trials: int = Field(default=100, ge=0)
    max_worlds: int = Field(default=6, ge=1)
    max_letters: int = Field(default=2, ge=0)
    edge_prob: float = Field(default=0.35, ge=0, le=1)
    letter_prob: float = Field(default=0.5, ge=0, le=1)
    depth: int = Field(default=5, ge=0)
    closure_cap: int = Field(default=DEFAULT_CLOSURE_CAP, ge=1)
    formulas_per_trial: int = Field(default=10, ge=1)
    exhaustive_worlds: int = Field(default=3, ge=0)
    jobs: int = Field(default=1, ge=1)
    lambda_policy: LambdaPolicy = LambdaPolicy.RESTORATIVE
    fixed_lambda: str = ""


class VerdictKind(str, Enum):
    VALID = "valid-up-to-search"
    COUNTERMODEL = "countermodel"


class Verdict(BaseModel):
    kind: VerdictKind
    model: Optional[KripkeModel] = None
    world: Optional[int] = None
    models_searched: int = 0

    @property
    def valid(self) -> bool:
        return self.kind == VerdictKind.VALID

    def to_document(self) -> dict:
        document: dict[str, Any] = {"verdict": self.kind.value, "models_searched": self.models_searched}
        if self.model is not None:
            document["model"] = self.model.to_document()
            document["world"] = self.world
        return document


class Failure(BaseModel):
    trial: int
    model: Optional[dict] = None
    lambda_label: str = ""
    detail: str

    def to_document(self) -> dict:
        return {"trial": self.trial, "model": self.model, "lambda": self.lambda_label, "detail": self.detail}


class TrialOutcome(BaseModel):
    """What one trial contributes to a suite report"""
    trial: int
    checks: int = 0
    skipped: bool = False
    failures: list[Failure] = Field(default_factory=list)


class SuiteReport(BaseModel):
    suite: str
    config: TrialConfig
    trials: int = 0
    checks: int = 0
    skipped: int = 0
    failures: list[Failure] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def passed(self) -> int:
        failed = len({f.trial for f in self.failures})
        return self.trials - self.skipped - failed

    def to_document(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config.model_dump(mode="json"),
            "trials": self.trials,
            "passed": self.passed,
            "skipped": self.skipped,
            "checks": self.checks,
            "failures": [f.to_document() for f in self.failures],
        }


class Assertion(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class ExampleReport(BaseModel):
    example: str
    assertions: list[Assertion] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(a.passed for a in self.assertions)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.assertions.append(Assertion(name=name, passed=bool(passed), detail=detail))
        return bool(passed)


class ExamplesReport(BaseModel):
    examples: list[ExampleReport] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.examples)

    def to_document(self) -> dict:
        return {
            "ok": self.ok,
            "examples": [
                {"example": e.example, "ok": e.ok, "assertions": [a.model_dump() for a in e.assertions]}
                for e in self.examples
            ],
        }


class Fact(BaseModel):
    """A claimed truth value of a formula (printed form) at a world"""
    world: int
    formula: str
    expected: bool


class PaperExample(BaseModel):
    """A registry entry transcribed from a worked example; world ids follow order of introduction"""
    model_config = ConfigDict(frozen=True)

    id: str
    description: str
    world_names: list[str]
    model: KripkeModel
    lambda_label: str
    mode: SimMode = SimMode()
    relation: Relation = Relation()
    facts: list[Fact] = Field(default_factory=list)


class CertificateKind(str, Enum):
    SIMULATION = "simulation"  # a verified simulation pair that breaks preservation of the target
    CLOSURE = "closure"        # the target truth set is missing from the definable closure


class CertOfUndefinability(BaseModel):
    kind: CertificateKind
    target: str
    lambda_label: str
    model: KripkeModel
    mode: SimMode = SimMode()
    relation: Optional[Relation] = None
    pair: Optional[Pair] = None
    target_set: Optional[list[int]] = None
    source: str = ""

    def to_document(self) -> dict:
        document: dict[str, Any] = {
            "kind": self.kind.value,
            "target": self.target,
            "lambda": self.lambda_label,
            "model": self.model.to_document(),
            "mode": self.mode.label,
            "source": self.source,
        }
        if self.relation is not None:
            document["relation"] = self.relation.to_document()
        if self.pair is not None:
            document["pair"] = list(self.pair)
        if self.target_set is not None:
            document["target_set"] = sorted(self.target_set)
        return document


class Expectation(str, Enum):
    VALID = "valid"          # ▷: no countermodel exists
    WITNESSED = "witnessed"  # ▶: some countermodel must be found


class Principle(BaseModel):
    name: str
    sequent: str
    expect: Expectation
    group: str
    corner: Optional[str] = None


class PrincipleResult(BaseModel):
    principle: Principle
    verdict: Verdict

    @property
    def passed(self) -> bool:
        if self.principle.expect == Expectation.VALID:
            return self.verdict.valid
        return not self.verdict.valid

    def to_document(self) -> dict:
        return {
            "name": self.principle.name,
            "group": self.principle.group,
            "corner": self.principle.corner,
            "sequent": self.principle.sequent,
            "expect": self.principle.expect.value,
            "passed": self.passed,
            **self.verdict.to_document(),
        }


class PrincipleReport(BaseModel):
    results: list[PrincipleResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def to_document(self) -> dict:
        return {
            "suite": "principles",
            "ok": self.ok,
            "total": len(self.results),
            "passed": sum(r.passed for r in self.results),
            "results": [r.to_document() for r in self.results],
        }
