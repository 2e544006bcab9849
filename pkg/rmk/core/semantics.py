"""
Semantics - Truth sets, operator transformers, definable closure and local sequents
"""
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import structlog

from rmk.config import DEFAULT_CLOSURE_CAP
from rmk.core.kripke import SplitMix64, enumerate_frames, random_model_from
from rmk.core.syntax import formula_size, in_language, letters_of
from rmk.errors import ClosureCapExceeded
from rmk.models.formula import (
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
from rmk.models.kripke import KripkeModel, bits
from rmk.models.relation import Relation
from rmk.models.report import TrialConfig, Verdict, VerdictKind

logger = structlog.get_logger()


# =============================================================================
# Truth sets
# =============================================================================

def transform_mask(op: UnaryOp, full: int, succ: list[int], t: int) -> int:
    """Image of the truth set ``t`` under the transformer of ``op``, as bitmasks"""
    if op == UnaryOp.NOT:
        return full & ~t
    box = 0  # R[w] ⊆ T
    dia = 0  # R[w] ∩ T ≠ ∅
    for w, row in enumerate(succ):
        if not row & ~t:
            box |= 1 << w
        if row & t:
            dia |= 1 << w
    if op == UnaryOp.BOX:
        return box
    if op == UnaryOp.DIA:
        return dia
    smile = full & ~box
    frown = full & ~dia
    if op == UnaryOp.SMILE:
        return smile
    if op == UnaryOp.FROWN:
        return frown
    if op == UnaryOp.CON:
        return (full & ~t) | box
    if op == UnaryOp.DET:
        return t | frown
    if op == UnaryOp.INC:
        return t & smile
    if op == UnaryOp.UND:
        return full & ~t & dia
    raise ValueError(f"unknown operator {op!r}")


def evaluate_mask(phi: Formula, full: int, succ: list[int], letters: Mapping[int, int]) -> int:
    """
    Truth set of phi as a bitmask over a raw frame. Subformulas are memoized
    by identity, so shared DAGs (witnesses, closure formulas) stay linear.
    """
    memo: dict[int, int] = {}
    stack: list[tuple[Formula, bool]] = [(phi, False)]
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if isinstance(node, Top):
            memo[key] = full
        elif isinstance(node, Bot):
            memo[key] = 0
        elif isinstance(node, Letter):
            memo[key] = letters.get(node.index, 0)
        elif isinstance(node, Unary):
            if ready:
                memo[key] = transform_mask(node.op, full, succ, memo[id(node.arg)])
            else:
                stack.append((node, True))
                stack.append((node.arg, False))
        elif isinstance(node, (And, Or)):
            if ready:
                left, right = memo[id(node.left)], memo[id(node.right)]
                memo[key] = left & right if isinstance(node, And) else left | right
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        else:
            raise TypeError(f"not a formula: {node!r}")
    return memo[id(phi)]


def truth_mask(model: KripkeModel, phi: Formula) -> int:
    return evaluate_mask(phi, model.full_mask, model.successors, model.letter_masks)


def truth_set(model: KripkeModel, phi: Formula) -> frozenset[int]:
    return frozenset(bits(truth_mask(model, phi)))


def operator_mask(op: UnaryOp, model: KripkeModel, t: int) -> int:
    return transform_mask(op, model.full_mask, model.successors, t)


def operator_transformer(op: UnaryOp, model: KripkeModel, members: Iterable[int]) -> frozenset[int]:
    t = 0
    for w in members:
        if not 0 <= w < model.n_worlds:
            raise ValueError(f"world {w} not in model with {model.n_worlds} worlds")
        t |= 1 << w
    return frozenset(bits(operator_mask(op, model, t)))


def satisfies(model: KripkeModel, w: int, phi: Formula) -> bool:
    if not 0 <= w < model.n_worlds:
        raise ValueError(f"world {w} not in model with {model.n_worlds} worlds")
    return bool(truth_mask(model, phi) >> w & 1)


# =============================================================================
# Definable closure
# =============================================================================

# Closure formulas bigger than this are reported as sets only
PRINTABLE_FORMULA_SIZE = 400


@dataclass
class ClosureFamily:
    """
    The exact family of truth sets definable over one model. Each set is
    stored as a bitmask together with a generating formula; ``order`` keeps
    discovery order for reproducible numbering.
    """
    n_worlds: int
    origin: str
    lambda_label: str
    negation: bool
    order: list[int] = field(default_factory=list)
    formulas: dict[int, Formula] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, mask: object) -> bool:
        return mask in self.formulas

    def contains_set(self, members: Iterable[int]) -> bool:
        return sum(1 << w for w in members) in self.formulas

    def formula_for(self, mask: int) -> Optional[Formula]:
        return self.formulas.get(mask)

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(bits(mask)) for mask in self.order]

    def signatures(self) -> list[int]:
        """Per world, the bitmask of family indices whose set contains it"""
        sig = [0] * self.n_worlds
        for index, mask in enumerate(self.order):
            for w in bits(mask):
                sig[w] |= 1 << index
        return sig

    def to_document(self) -> dict:
        entries = []
        for index, mask in enumerate(self.order):
            phi = self.formulas[mask]
            printable = formula_size(phi) <= PRINTABLE_FORMULA_SIZE
            entries.append({"index": index, "set": sorted(bits(mask)), "formula": str(phi) if printable else None})
        return {
            "model": self.origin,
            "lambda": self.lambda_label,
            "negation": self.negation,
            "size": len(self.order),
            "sets": entries,
        }


def definable_closure(
    model: KripkeModel,
    lam: SimilarityType,
    cap: int = DEFAULT_CLOSURE_CAP,
    negation: bool = False,
) -> ClosureFamily:
    """
    Least family holding ∅, W and every listed P_k, closed under ∪, ∩ and the
    transformers of lam (complement too when ``not`` is in lam or negation is set).
    New sets are combined in discovery order: ∪ first, then ∩, then unary ops.
    """
    ops = lam.ordered()
    if negation and UnaryOp.NOT not in lam:
        ops = [UnaryOp.NOT] + ops
    full, succ = model.full_mask, model.successors
    family = ClosureFamily(
        n_worlds=model.n_worlds,
        origin=model.fingerprint(),
        lambda_label=lam.label,
        negation=UnaryOp.NOT in ops,
    )
    order, formulas = family.order, family.formulas

    def add(mask: int, phi: Formula) -> None:
        if mask in formulas:
            return
        if len(order) >= cap:
            raise ClosureCapExceeded(cap, len(order) + 1)
        formulas[mask] = phi
        order.append(mask)

    add(0, Bot())
    add(full, Top())
    for k in model.letters():
        add(model.letter_mask(k), Letter(k))

    i = 0
    while i < len(order):
        a = order[i]
        phi = formulas[a]
        for j in range(i + 1):
            b = order[j]
            add(a | b, Or(formulas[b], phi))
        for j in range(i + 1):
            b = order[j]
            add(a & b, And(formulas[b], phi))
        for op in ops:
            add(transform_mask(op, full, succ, a), Unary(op, phi))
        i += 1

    logger.debug("closure_computed", model=family.origin, lam=lam.label, negation=family.negation, size=len(order))
    return family


def subsumption(model: KripkeModel, lam: SimilarityType, cap: int = DEFAULT_CLOSURE_CAP) -> Relation:
    """(w, v) iff every definable set containing w contains v"""
    sig = definable_closure(model, lam, cap).signatures()
    return Relation.of((w, v) for w in model.worlds() for v in model.worlds() if not sig[w] & ~sig[v])


def closure_equivalence(model: KripkeModel, lam: SimilarityType, cap: int = DEFAULT_CLOSURE_CAP) -> Relation:
    """(w, v) iff w and v lie in exactly the same sets of the closure with complement added"""
    sig = definable_closure(model, lam, cap, negation=True).signatures()
    return Relation.of((w, v) for w in model.worlds() for v in model.worlds() if sig[w] == sig[v])


# =============================================================================
# Local sequents
# =============================================================================

def countermodel_mask(sequent: Sequent, full: int, succ: list[int], letters: Mapping[int, int]) -> int:
    """Worlds where every premise holds and every conclusion fails"""
    worlds = full
    for phi in sequent.premises:
        worlds &= evaluate_mask(phi, full, succ, letters)
        if not worlds:
            return 0
    for phi in sequent.conclusions:
        worlds &= ~evaluate_mask(phi, full, succ, letters)
        if not worlds:
            return 0
    return worlds


def sequent_valid(sequent: Sequent, lam: Optional[SimilarityType] = None, search: Optional[TrialConfig] = None) -> Verdict:
    """
    Local validity of Π ⊢ Σ: exhaustive over every model with up to
    ``search.exhaustive_worlds`` worlds on the sequent's letters, then
    ``search.trials`` seeded random models. A countermodel is reported with
    its lowest countermodel world.
    """
    search = search or TrialConfig()
    if lam is not None:
        outside = [phi for phi in sequent.formulas() if not in_language(phi, lam)]
        if outside:
            raise ValueError(f"sequent formula {outside[0]} is not in the language of {lam}")

    letters: list[int] = sorted(set().union(*(letters_of(phi) for phi in sequent.formulas())))
    searched = 0

    for n in range(1, search.exhaustive_worlds + 1):
        full = (1 << n) - 1
        for succ, masks in enumerate_frames(n, len(letters)):
            searched += 1
            valuation = dict(zip(letters, masks))
            found = countermodel_mask(sequent, full, succ, valuation)
            if found:
                return _countermodel(n, succ, valuation, found, searched)

    rng = SplitMix64(search.seed)
    for trial in range(search.trials):
        trial_rng = rng.derive(trial)
        n = 1 + trial_rng.below(search.max_worlds)
        model = random_model_from(trial_rng, n, len(letters), search.edge_prob, search.letter_prob)
        valuation = {k: model.letter_mask(i) for i, k in enumerate(letters)}
        searched += 1
        found = countermodel_mask(sequent, model.full_mask, model.successors, valuation)
        if found:
            return _countermodel(n, list(model.successors), valuation, found, searched)

    return Verdict(kind=VerdictKind.VALID, models_searched=searched)


def _countermodel(n: int, succ: list[int], valuation: dict[int, int], worlds: int, searched: int) -> Verdict:
    model = KripkeModel.from_masks(n, list(succ), valuation)
    world = (worlds & -worlds).bit_length() - 1
    return Verdict(kind=VerdictKind.COUNTERMODEL, model=model, world=world, models_searched=searched)
