"""
Core algorithms: syntax, models, semantics, simulations and the standard translation
"""
from .kripke import SplitMix64, disjoint_union, load_model, random_model
from .semantics import definable_closure, satisfies, sequent_valid, subsumption, truth_mask
from .simulation import greatest_simulation, kripke_bisimulation, verify_simulation, witness_formula
from .syntax import parse_formula, print_formula
from .translation import fol_eval, standard_translation

__all__ = [
    "SplitMix64",
    "disjoint_union",
    "load_model",
    "random_model",
    "definable_closure",
    "satisfies",
    "sequent_valid",
    "subsumption",
    "truth_mask",
    "greatest_simulation",
    "kripke_bisimulation",
    "verify_simulation",
    "witness_formula",
    "parse_formula",
    "print_formula",
    "fol_eval",
    "standard_translation",
]
