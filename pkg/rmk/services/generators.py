"""
Generators - Seeded random formulas, similarity types and models for trials
"""
from rmk.core.kripke import SplitMix64, random_model_from
from rmk.models.formula import (
    And,
    Bot,
    Formula,
    Letter,
    Or,
    RESTORATIVE_OPS,
    OP_ORDER,
    SimilarityType,
    Top,
    Unary,
)
from rmk.models.kripke import KripkeModel
from rmk.models.report import LambdaPolicy, TrialConfig

RESTORATIVE_ORDER = [op for op in OP_ORDER if op in RESTORATIVE_OPS]
DIRECTED_ORDER = [op for op in RESTORATIVE_ORDER if op.value in ("smile", "frown")]


def random_formula(rng: SplitMix64, lam: SimilarityType, depth: int, n_letters: int) -> Formula:
    """
    Draw a formula of L_lam with modal and connective depth at most ``depth``.
    Interior choice: below(4) → leaf, ∧, ∨, unary (unary falls back to a leaf
    when lam is empty). Leaf choice: below(n_letters + 2) → ⊤, ⊥, p0, p1, ...
    """
    if depth > 0:
        kind = rng.below(4)
        if kind == 1:
            return And(random_formula(rng, lam, depth - 1, n_letters), random_formula(rng, lam, depth - 1, n_letters))
        if kind == 2:
            return Or(random_formula(rng, lam, depth - 1, n_letters), random_formula(rng, lam, depth - 1, n_letters))
        if kind == 3 and lam.ops:
            op = rng.choice(lam.ordered())
            return Unary(op, random_formula(rng, lam, depth - 1, n_letters))
    leaf = rng.below(n_letters + 2)
    if leaf == 0:
        return Top()
    if leaf == 1:
        return Bot()
    return Letter(leaf - 2)


def _subset(rng: SplitMix64, ops: list, nonempty: bool) -> SimilarityType:
    size = len(ops)
    mask = rng.below((1 << size) - 1) + 1 if nonempty else rng.below(1 << size)
    return SimilarityType(frozenset(op for i, op in enumerate(ops) if mask >> i & 1))


def random_similarity_type(rng: SplitMix64, policy: LambdaPolicy = LambdaPolicy.RESTORATIVE, fixed: str = "") -> SimilarityType:
    if policy == LambdaPolicy.RESTORATIVE:
        return _subset(rng, RESTORATIVE_ORDER, nonempty=True)
    if policy == LambdaPolicy.DIRECTED:
        return _subset(rng, DIRECTED_ORDER, nonempty=False)
    return SimilarityType.parse(fixed)


def trial_model(rng: SplitMix64, cfg: TrialConfig) -> KripkeModel:
    """A model with 1..max_worlds worlds and 0..max_letters letters"""
    n_worlds = 1 + rng.below(cfg.max_worlds)
    n_letters = rng.below(cfg.max_letters + 1)
    return random_model_from(rng, n_worlds, n_letters, cfg.edge_prob, cfg.letter_prob)
