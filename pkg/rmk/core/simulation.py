"""
Simulation - Condition checks, greatest fixpoints, witnesses, directed and concrete variants

Relations are handled as row bitmasks: bit b of rows[a] is set iff (a, b) is
in the relation, and cols is the transpose. Greatest relations are computed by
naive refinement: every round re-checks every remaining pair against the
previous round's relation and deletes all failing pairs at once.
"""
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import structlog

from rmk.core.kripke import disjoint_union
from rmk.core.semantics import satisfies
from rmk.core.syntax import in_language
from rmk.errors import WitnessError
from rmk.models.formula import And, Formula, Letter, Or, SimilarityType, Unary, UnaryOp, big_and, big_or
from rmk.models.kripke import KripkeModel, UnionInjections, bits
from rmk.models.relation import (
    ConcreteSimQuad,
    ConditionTag,
    DirectedSimPair,
    Pair,
    Relation,
    SimMode,
    Violation,
    ViolationReport,
)

logger = structlog.get_logger()

Found = tuple[ConditionTag, Optional[int]]
Checker = Callable[[int, int, list[int], list[int]], list[Found]]

DIRECTED_OPS = frozenset({UnaryOp.SMILE, UnaryOp.FROWN})


class Deletion(NamedTuple):
    round: int
    condition: ConditionTag
    witness: Optional[int]


@dataclass
class Fixpoint:
    """Greatest relation plus the log of when and why every other pair was deleted"""
    n_worlds: int
    rows: list[int]
    deleted: dict[Pair, Deletion] = field(default_factory=dict)
    rounds: int = 0

    def holds(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def deleted_before(self, pair: Pair, round_: int) -> bool:
        entry = self.deleted.get(pair)
        return entry is not None and entry.round < round_

    def relation(self) -> Relation:
        return Relation.from_rows(self.rows)


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _transpose(rows: list[int], n_cols: int) -> list[int]:
    cols = [0] * n_cols
    for a, row in enumerate(rows):
        for b in bits(row):
            cols[b] |= 1 << a
    return cols


# =============================================================================
# Conditions
# =============================================================================

def _require_simulation_type(lam: SimilarityType, mode: SimMode) -> None:
    if UnaryOp.BOX in lam or UnaryOp.DIA in lam:
        raise ValueError("box and dia have no restorative simulation conditions; use kripke_bisimulation")
    if UnaryOp.NOT in lam and not mode.is_symmetric:
        raise ValueError("classical negation is only handled by symmetric mode")


def simulation_checker(model: KripkeModel, lam: SimilarityType, mode: SimMode) -> Checker:
    """Returns check(w, v, rows, cols) listing one (tag, offender) per failing condition"""
    _require_simulation_type(lam, mode)
    succ, sig = model.successors, model.signatures
    smile, frown = UnaryOp.SMILE in lam, UnaryOp.FROWN in lam
    con, det = UnaryOp.CON in lam, UnaryOp.DET in lam
    inc, und = UnaryOp.INC in lam, UnaryOp.UND in lam
    con_dashed = not mode.drops(ConditionTag.SIM_CON)
    det_dashed = not mode.drops(ConditionTag.SIM_DET)
    inc_dashed = not mode.drops(ConditionTag.SIM_INC)
    und_dashed = not mode.drops(ConditionTag.SIM_UND)

    def check(w: int, v: int, rows: list[int], cols: list[int]) -> list[Found]:
        found: list[Found] = []
        extra = sig[w] & ~sig[v]
        if extra:
            found.append((ConditionTag.SIM_K, _low(extra)))
        sw, sv = succ[w], succ[v]
        v_w = rows[v] >> w & 1
        if smile:
            for s in bits(sw):
                if not sv & cols[s]:
                    found.append((ConditionTag.SIM_SMILE, s))
                    break
        if frown:
            for t in bits(sv):
                if not rows[t] & sw:
                    found.append((ConditionTag.SIM_FROWN, t))
                    break
        if con:
            for t in bits(sv):
                if (con_dashed and rows[v] >> t & 1) or (v_w and sw & cols[t]):
                    continue
                found.append((ConditionTag.SIM_CON, t))
                break
        if det:
            for t in bits(sv):
                if (det_dashed and rows[t] >> v & 1) or rows[t] & sw:
                    continue
                found.append((ConditionTag.SIM_DET, t))
                break
        if inc:
            for s in bits(sw):
                if (inc_dashed and rows[w] >> s & 1) or sv & cols[s]:
                    continue
                found.append((ConditionTag.SIM_INC, s))
                break
        if und:
            for s in bits(sw):
                if (und_dashed and rows[s] >> w & 1) or (v_w and rows[s] & sv):
                    continue
                found.append((ConditionTag.SIM_UND, s))
                break
        return found

    return check


def bisimulation_checker(model: KripkeModel) -> Checker:
    succ, sig = model.successors, model.signatures

    def check(w: int, v: int, rows: list[int], cols: list[int]) -> list[Found]:
        found: list[Found] = []
        if sig[w] != sig[v]:
            found.append((ConditionTag.BIS_K, _low(sig[w] ^ sig[v])))
        for s in bits(succ[w]):
            if not rows[s] & succ[v]:
                found.append((ConditionTag.BIS_FORTH, s))
                break
        for t in bits(succ[v]):
            if not cols[t] & succ[w]:
                found.append((ConditionTag.BIS_BACK, t))
                break
        return found

    return check


def _check_relation(model: KripkeModel, relation: Relation) -> None:
    n = model.n_worlds
    for a, b in relation.pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a}, {b}) is outside the model's {n} worlds")


def _check_pair_range(model: KripkeModel, pair: Pair) -> None:
    w, v = pair
    if not (0 <= w < model.n_worlds and 0 <= v < model.n_worlds):
        raise ValueError(f"pair {pair} is outside the model's {model.n_worlds} worlds")


def check_pair(
    model: KripkeModel,
    lam: SimilarityType,
    relation: Relation,
    pair: Pair,
    mode: SimMode = SimMode(),
) -> list[Violation]:
    """Violations of the simulation conditions of lam at one pair, read against relation"""
    w, v = pair
    _check_pair_range(model, pair)
    _check_relation(model, relation)
    rows = relation.rows(model.n_worlds)
    cols = _transpose(rows, model.n_worlds)
    check = simulation_checker(model, lam, mode)
    return [Violation(pair=(w, v), condition=tag, witness=x) for tag, x in check(w, v, rows, cols)]


def verify_simulation(
    model: KripkeModel,
    lam: SimilarityType,
    relation: Relation,
    mode: SimMode = SimMode(),
) -> ViolationReport:
    """Empty report iff relation is a (mode-adjusted) simulation for lam"""
    _check_relation(model, relation)
    rows = relation.rows(model.n_worlds)
    cols = _transpose(rows, model.n_worlds)
    check = simulation_checker(model, lam, mode)
    violations = []
    for w, v in sorted(relation.pairs):
        violations.extend(Violation(pair=(w, v), condition=tag, witness=x) for tag, x in check(w, v, rows, cols))
        if mode.is_symmetric and not rows[v] >> w & 1:
            violations.append(Violation(pair=(w, v), condition=ConditionTag.SYM))
    return ViolationReport(violations=violations)


# =============================================================================
# Greatest fixpoints
# =============================================================================

def refine(n_worlds: int, seed_rows: list[int], check: Checker, symmetric: bool = False,
           seeded_out: Optional[dict[Pair, Deletion]] = None) -> Fixpoint:
    """Delete failing pairs round by round until nothing fails; mirror deletions when symmetric"""
    rows = list(seed_rows)
    cols = _transpose(rows, n_worlds)
    fix = Fixpoint(n_worlds=n_worlds, rows=rows, deleted=dict(seeded_out or {}))
    round_ = 0
    while True:
        round_ += 1
        doomed: dict[Pair, Deletion] = {}
        for w in range(n_worlds):
            for v in bits(rows[w]):
                found = check(w, v, rows, cols)
                if found:
                    tag, offender = found[0]
                    doomed[(w, v)] = Deletion(round_, tag, offender)
        if symmetric:
            for w, v in list(doomed):
                if (v, w) not in doomed and rows[v] >> w & 1:
                    doomed[(v, w)] = Deletion(round_, ConditionTag.SYM, None)
        if not doomed:
            break
        for w, v in doomed:
            rows[w] &= ~(1 << v)
            cols[v] &= ~(1 << w)
        fix.deleted.update(doomed)
        logger.debug("fixpoint_round", round=round_, deleted=len(doomed))
    fix.rounds = round_ - 1
    return fix


def simulation_fixpoint(model: KripkeModel, lam: SimilarityType, mode: SimMode = SimMode()) -> Fixpoint:
    n = model.n_worlds
    check = simulation_checker(model, lam, mode)
    if not mode.is_symmetric:
        fix = refine(n, [model.full_mask] * n, check)
    else:
        # Seed with pairs that agree on every letter both ways
        sig = model.signatures
        seed = [0] * n
        seeded_out: dict[Pair, Deletion] = {}
        for w in range(n):
            for v in range(n):
                if sig[w] == sig[v]:
                    seed[w] |= 1 << v
                else:
                    seeded_out[(w, v)] = Deletion(0, ConditionTag.SIM_K, _low(sig[w] ^ sig[v]))
        fix = refine(n, seed, check, symmetric=True, seeded_out=seeded_out)
    logger.debug(
        "greatest_simulation_done",
        worlds=n, lam=lam.label, mode=mode.label, pairs=sum(bin(r).count("1") for r in fix.rows), rounds=fix.rounds,
    )
    return fix


def greatest_simulation(model: KripkeModel, lam: SimilarityType, mode: SimMode = SimMode()) -> Relation:
    return simulation_fixpoint(model, lam, mode).relation()


def kripke_bisimulation(model: KripkeModel) -> Relation:
    """Greatest standard bisimulation: letter agreement, forth and back"""
    n = model.n_worlds
    return refine(n, [model.full_mask] * n, bisimulation_checker(model)).relation()


# =============================================================================
# Distinguishing formulas
# =============================================================================

class _WitnessBuilder:
    """
    Replays the deletion log: the formula for (a, b) is true at a, false at b,
    and only refers to pairs deleted in strictly earlier rounds.
    """

    def __init__(self, model: KripkeModel, fix: Fixpoint):
        self.model = model
        self.fix = fix
        self.memo: dict[Pair, Formula] = {}

    def build(self, a: int, b: int) -> Formula:
        pair = (a, b)
        if pair in self.memo:
            return self.memo[pair]
        entry = self.fix.deleted.get(pair)
        if entry is None:
            raise WitnessError(f"pair {pair} is in the greatest simulation; nothing to distinguish")
        phi = self._case(a, b, entry)
        self.memo[pair] = phi
        return phi

    def _earlier(self, pair: Pair, round_: int) -> Formula:
        if not self.fix.deleted_before(pair, round_):
            raise WitnessError(f"pair {pair} was not deleted before round {round_}")
        return self.build(*pair)

    def _case(self, a: int, b: int, entry: Deletion) -> Formula:
        r, tag, x = entry
        succ = self.model.successors
        if tag == ConditionTag.SIM_K:
            return Letter(x)
        if tag == ConditionTag.SIM_SMILE:
            s = x
            return Unary(UnaryOp.SMILE, big_or(self._earlier((t, s), r) for t in bits(succ[b])))
        if tag == ConditionTag.SIM_FROWN:
            t = x
            return Unary(UnaryOp.FROWN, big_and(self._earlier((t, s), r) for s in bits(succ[a])))
        if tag == ConditionTag.SIM_CON:
            t = x
            chi = self._earlier((b, t), r)
            if self.fix.deleted_before((b, a), r):
                return Unary(UnaryOp.CON, And(chi, self.build(b, a)))
            return Unary(UnaryOp.CON, Or(big_or(self._earlier((s, t), r) for s in bits(succ[a])), chi))
        if tag == ConditionTag.SIM_DET:
            t = x
            return Unary(UnaryOp.DET, And(self._earlier((t, b), r), big_and(self._earlier((t, s), r) for s in bits(succ[a]))))
        if tag == ConditionTag.SIM_INC:
            s = x
            return Unary(UnaryOp.INC, Or(self._earlier((a, s), r), big_or(self._earlier((t, s), r) for t in bits(succ[b]))))
        if tag == ConditionTag.SIM_UND:
            s = x
            psi = self._earlier((s, a), r)
            if self.fix.deleted_before((b, a), r):
                return Unary(UnaryOp.UND, Or(psi, self.build(b, a)))
            return Unary(UnaryOp.UND, And(psi, big_and(self._earlier((s, t), r) for t in bits(succ[b]))))
        raise WitnessError(f"no witness construction for condition {tag.value}")


def _require_restorative(lam: SimilarityType) -> None:
    if not lam.is_restorative():
        raise ValueError(f"witness formulas need a restorative similarity type, got {lam}")


def _verified(model: KripkeModel, lam: SimilarityType, w: int, v: int, phi: Formula) -> Formula:
    if not (satisfies(model, w, phi) and not satisfies(model, v, phi) and in_language(phi, lam)):
        raise WitnessError(f"constructed formula does not distinguish ({w}, {v}) in L{lam}")
    return phi


def witness_formula(model: KripkeModel, lam: SimilarityType, w: int, v: int) -> Optional[Formula]:
    """A formula of L_lam true at w and false at v, or None when v simulates w"""
    _require_restorative(lam)
    _check_pair_range(model, (w, v))
    fix = simulation_fixpoint(model, lam)
    if fix.holds(w, v):
        return None
    phi = _verified(model, lam, w, v, _WitnessBuilder(model, fix).build(w, v))
    logger.debug("witness_built", pair=[w, v], lam=lam.label)
    return phi


def witness_table(model: KripkeModel, lam: SimilarityType) -> dict[Pair, Formula]:
    """Verified witnesses for every pair outside the greatest simulation, sharing subformulas"""
    _require_restorative(lam)
    fix = simulation_fixpoint(model, lam)
    builder = _WitnessBuilder(model, fix)
    table = {}
    for pair in sorted(fix.deleted):
        table[pair] = _verified(model, lam, pair[0], pair[1], builder.build(*pair))
    return table


# =============================================================================
# Directed simulations between two models
# =============================================================================

def _require_directed(lam: SimilarityType) -> None:
    if not lam.ops <= DIRECTED_OPS:
        raise ValueError(f"directed simulations are defined for subsets of {{smile,frown}}, got {lam}")


def _directed_violations(
    m1: KripkeModel, m2: KripkeModel, lam: SimilarityType, f_rows: list[int], b_rows: list[int],
) -> list[Violation]:
    smile, frown = UnaryOp.SMILE in lam, UnaryOp.FROWN in lam
    f_cols = _transpose(f_rows, m2.n_worlds)
    b_cols = _transpose(b_rows, m1.n_worlds)
    violations = []

    def one_side(rows, sig_a, sig_b, succ_a, succ_b, back_rows, back_cols, tags):
        k_tag, smile_tag, frown_tag = tags
        for w, row in enumerate(rows):
            for v in bits(row):
                extra = sig_a[w] & ~sig_b[v]
                if extra:
                    violations.append(Violation(pair=(w, v), condition=k_tag, witness=_low(extra)))
                if smile:
                    for s in bits(succ_a[w]):
                        if not succ_b[v] & back_cols[s]:
                            violations.append(Violation(pair=(w, v), condition=smile_tag, witness=s))
                            break
                if frown:
                    for t in bits(succ_b[v]):
                        if not back_rows[t] & succ_a[w]:
                            violations.append(Violation(pair=(w, v), condition=frown_tag, witness=t))
                            break

    one_side(f_rows, m1.signatures, m2.signatures, m1.successors, m2.successors, b_rows, b_cols,
             (ConditionTag.F_K, ConditionTag.F_SMILE, ConditionTag.F_FROWN))
    one_side(b_rows, m2.signatures, m1.signatures, m2.successors, m1.successors, f_rows, f_cols,
             (ConditionTag.B_K, ConditionTag.B_SMILE, ConditionTag.B_FROWN))
    return violations


def verify_directed(m1: KripkeModel, m2: KripkeModel, lam: SimilarityType, pair: DirectedSimPair) -> ViolationReport:
    """Checks F ⊆ W1×W2 and B ⊆ W2×W1; violation pairs are in each side's local ids"""
    _require_directed(lam)
    f_rows = [0] * m1.n_worlds
    b_rows = [0] * m2.n_worlds
    for w, v in pair.forward:
        if not (0 <= w < m1.n_worlds and 0 <= v < m2.n_worlds):
            raise ValueError(f"forward pair ({w}, {v}) is outside W1×W2")
        f_rows[w] |= 1 << v
    for v, w in pair.backward:
        if not (0 <= v < m2.n_worlds and 0 <= w < m1.n_worlds):
            raise ValueError(f"backward pair ({v}, {w}) is outside W2×W1")
        b_rows[v] |= 1 << w
    return ViolationReport(violations=_directed_violations(m1, m2, lam, f_rows, b_rows))


def greatest_directed(m1: KripkeModel, m2: KripkeModel, lam: SimilarityType) -> DirectedSimPair:
    _require_directed(lam)
    f_rows = [m2.full_mask] * m1.n_worlds
    b_rows = [m1.full_mask] * m2.n_worlds
    while True:
        violations = _directed_violations(m1, m2, lam, f_rows, b_rows)
        if not violations:
            break
        for violation in violations:
            a, b = violation.pair
            if violation.condition.value.startswith("F_"):
                f_rows[a] &= ~(1 << b)
            else:
                b_rows[a] &= ~(1 << b)
    return DirectedSimPair(
        forward=frozenset((w, v) for w, row in enumerate(f_rows) for v in bits(row)),
        backward=frozenset((v, w) for v, row in enumerate(b_rows) for w in bits(row)),
    )


def to_directed(relation: Relation, injections: UnionInjections) -> DirectedSimPair:
    """F = S ∩ (W1×W2) and B = S ∩ (W2×W1), translated back to local ids"""
    left = {u: w for w, u in enumerate(injections.left)}
    right = {u: v for v, u in enumerate(injections.right)}
    forward = frozenset((left[a], right[b]) for a, b in relation.pairs if a in left and b in right)
    backward = frozenset((right[a], left[b]) for a, b in relation.pairs if a in right and b in left)
    return DirectedSimPair(forward=forward, backward=backward)


def from_directed(pair: DirectedSimPair, injections: UnionInjections) -> Relation:
    """F ∪ B embedded into the union: the cross-block relation"""
    forward = ((injections.left[w], injections.right[v]) for w, v in pair.forward)
    backward = ((injections.right[v], injections.left[w]) for v, w in pair.backward)
    return Relation(pairs=frozenset(forward) | frozenset(backward))


def cross_block(relation: Relation, injections: UnionInjections) -> Relation:
    left, right = set(injections.left), set(injections.right)
    return Relation(pairs=frozenset(
        (a, b) for a, b in relation.pairs if (a in left and b in right) or (a in right and b in left)
    ))


# =============================================================================
# Concrete simulations between two models
# =============================================================================

def to_concrete(relation: Relation, injections: UnionInjections) -> ConcreteSimQuad:
    local = {}
    for side, table in ((1, injections.left), (2, injections.right)):
        for w, u in enumerate(table):
            local[u] = (side, w)
    blocks: dict[str, set[Pair]] = {"s11": set(), "s12": set(), "s21": set(), "s22": set()}
    for a, b in relation.pairs:
        (i, x), (j, y) = local[a], local[b]
        blocks[f"s{i}{j}"].add((x, y))
    return ConcreteSimQuad(**{name: frozenset(pairs) for name, pairs in blocks.items()})


def from_concrete(quad: ConcreteSimQuad, injections: UnionInjections) -> Relation:
    tables = {1: injections.left, 2: injections.right}
    pairs = set()
    for i in (1, 2):
        for j in (1, 2):
            for x, y in getattr(quad, f"s{i}{j}"):
                pairs.add((tables[i][x], tables[j][y]))
    return Relation(pairs=frozenset(pairs))


def verify_concrete(
    m1: KripkeModel,
    m2: KripkeModel,
    lam: SimilarityType,
    quad: ConcreteSimQuad,
    mode: SimMode = SimMode(),
) -> ViolationReport:
    """Checks the four blocks together; violation pairs are in the union's ids"""
    union, injections = disjoint_union(m1, m2)
    return verify_simulation(union, lam, from_concrete(quad, injections), mode)
