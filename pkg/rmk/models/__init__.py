"""
rmk - Domain models
"""
from .formula import (
    And,
    Bot,
    Formula,
    Letter,
    Or,
    Sequent,
    SimilarityType,
    Top,
    Unary,
    UnaryOp,
)
from .kripke import KripkeModel, UnionInjections
from .relation import (
    ConcreteSimQuad,
    ConditionTag,
    DirectedSimPair,
    Relation,
    SimMode,
    Violation,
    ViolationReport,
)
from .report import (
    CertOfUndefinability,
    PaperExample,
    SuiteReport,
    TrialConfig,
    Verdict,
)

__all__ = [
    "And",
    "Bot",
    "Formula",
    "Letter",
    "Or",
    "Sequent",
    "SimilarityType",
    "Top",
    "Unary",
    "UnaryOp",
    "KripkeModel",
    "UnionInjections",
    "ConcreteSimQuad",
    "ConditionTag",
    "DirectedSimPair",
    "Relation",
    "SimMode",
    "Violation",
    "ViolationReport",
    "CertOfUndefinability",
    "PaperExample",
    "SuiteReport",
    "TrialConfig",
    "Verdict",
]
