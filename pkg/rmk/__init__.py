"""
rmk - Restorative modal logics over finite Kripke models
"""
from rmk.core.semantics import definable_closure, satisfies, sequent_valid, subsumption, truth_set
from rmk.core.simulation import greatest_simulation, verify_simulation, witness_formula
from rmk.core.syntax import parse_formula, parse_sequent, print_formula
from rmk.core.translation import standard_translation, st_check
from rmk.errors import RmkError
from rmk.models.formula import SimilarityType, UnaryOp
from rmk.models.kripke import KripkeModel
from rmk.models.relation import Relation, SimMode

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "KripkeModel",
    "Relation",
    "RmkError",
    "SimMode",
    "SimilarityType",
    "UnaryOp",
    "definable_closure",
    "greatest_simulation",
    "parse_formula",
    "parse_sequent",
    "print_formula",
    "satisfies",
    "sequent_valid",
    "st_check",
    "standard_translation",
    "subsumption",
    "truth_set",
    "verify_simulation",
    "witness_formula",
]
