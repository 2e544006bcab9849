"""
Property Suites - Seeded randomized checks of the characterization results

Every trial draws from its own generator, derived from (seed, trial index), so
a suite replays exactly whether it runs in one process or in a pool.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

import structlog

from rmk.core.kripke import SplitMix64, disjoint_union
from rmk.core.semantics import closure_equivalence, subsumption, truth_mask
from rmk.core.simulation import (
    cross_block,
    from_concrete,
    from_directed,
    greatest_directed,
    greatest_simulation,
    kripke_bisimulation,
    simulation_fixpoint,
    to_concrete,
    verify_concrete,
    witness_table,
)
from rmk.core.translation import st_check
from rmk.errors import ClosureCapExceeded, WitnessError
from rmk.models.formula import And, Formula, SimilarityType, Unary, UnaryOp
from rmk.models.kripke import KripkeModel
from rmk.models.relation import Relation, SimMode
from rmk.models.report import Failure, LambdaPolicy, SuiteReport, TrialConfig, TrialOutcome
from rmk.services.generators import random_formula, random_similarity_type, trial_model

logger = structlog.get_logger()

TrialFn = Callable[[int, SplitMix64, TrialConfig], TrialOutcome]

EXTRA_OPS = [UnaryOp.NOT, UnaryOp.BOX, UnaryOp.DIA]


def _lam(rng: SplitMix64, cfg: TrialConfig) -> SimilarityType:
    policy = cfg.lambda_policy
    if policy == LambdaPolicy.DIRECTED:
        policy = LambdaPolicy.RESTORATIVE
    return random_similarity_type(rng, policy, cfg.fixed_lambda)


def _with_extras(rng: SplitMix64, lam: SimilarityType) -> SimilarityType:
    """lam plus a random subset of not, box and dia"""
    pick = rng.below(1 << len(EXTRA_OPS))
    return SimilarityType(lam.ops | frozenset(op for i, op in enumerate(EXTRA_OPS) if pick >> i & 1))


def _pair_diff(expected: Relation, actual: Relation) -> str:
    missing = sorted(expected.pairs - actual.pairs)
    extra = sorted(actual.pairs - expected.pairs)
    return f"missing {[list(p) for p in missing]}, extra {[list(p) for p in extra]}"


def _fail(outcome: TrialOutcome, model: KripkeModel, lam: SimilarityType, detail: str) -> None:
    outcome.failures.append(Failure(trial=outcome.trial, model=model.to_document(), lambda_label=lam.label, detail=detail))


# =============================================================================
# Trials
# =============================================================================

def hm_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """Greatest simulation equals subsumption computed from the definable closure"""
    outcome = TrialOutcome(trial=trial)
    model = trial_model(rng, cfg)
    lam = _lam(rng, cfg)
    try:
        oracle = subsumption(model, lam, cfg.closure_cap)
    except ClosureCapExceeded:
        outcome.skipped = True
        return outcome
    greatest = greatest_simulation(model, lam)
    outcome.checks = 1
    if greatest != oracle:
        _fail(outcome, model, lam, f"greatest simulation vs subsumption: {_pair_diff(oracle, greatest)}")
    return outcome


def adequacy_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """Every sampled formula true at w stays true at v for (w, v) in the greatest simulation"""
    outcome = TrialOutcome(trial=trial)
    model = trial_model(rng, cfg)
    lam = _lam(rng, cfg)
    greatest = greatest_simulation(model, lam)
    for _ in range(cfg.formulas_per_trial):
        phi = random_formula(rng, lam, cfg.depth, len(model.letters()))
        mask = truth_mask(model, phi)
        for w, v in sorted(greatest.pairs):
            outcome.checks += 1
            if mask >> w & 1 and not mask >> v & 1:
                _fail(outcome, model, lam, f"{phi} true at {w} but false at {v}")
                return outcome
    return outcome


def symmetric_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """Symmetric similarity equals closure-with-negation equivalence, and bisimilarity once smile or frown is present"""
    outcome = TrialOutcome(trial=trial)
    model = trial_model(rng, cfg)
    lam = _lam(rng, cfg)
    symmetric = greatest_simulation(model, lam, SimMode.symmetric())
    try:
        oracle = closure_equivalence(model, lam, cfg.closure_cap)
    except ClosureCapExceeded:
        outcome.skipped = True
        return outcome
    outcome.checks = 1
    if symmetric != oracle:
        _fail(outcome, model, lam, f"symmetric similarity vs closure equivalence: {_pair_diff(oracle, symmetric)}")
    if UnaryOp.SMILE in lam or UnaryOp.FROWN in lam:
        outcome.checks += 1
        bisimilarity = kripke_bisimulation(model)
        if symmetric != bisimilarity:
            _fail(outcome, model, lam, f"symmetric similarity vs bisimilarity: {_pair_diff(bisimilarity, symmetric)}")
    return outcome


def directed_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """Directed greatest pair equals the cross-block part of the greatest simulation on M1 ⊎ M2"""
    outcome = TrialOutcome(trial=trial)
    m1 = trial_model(rng, cfg)
    m2 = trial_model(rng, cfg)
    lam = random_similarity_type(rng, LambdaPolicy.DIRECTED)
    union, injections = disjoint_union(m1, m2)
    directed = from_directed(greatest_directed(m1, m2, lam), injections)
    plain = cross_block(greatest_simulation(union, lam), injections)
    outcome.checks = 1
    if directed != plain:
        _fail(outcome, union, lam, f"directed vs cross-block similarity: {_pair_diff(plain, directed)}")
    return outcome


def witness_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """Every pair outside the greatest simulation gets a witness that re-verifies"""
    outcome = TrialOutcome(trial=trial)
    model = trial_model(rng, cfg)
    lam = _lam(rng, cfg)
    fix = simulation_fixpoint(model, lam)
    try:
        table = witness_table(model, lam)
    except WitnessError as e:
        _fail(outcome, model, lam, str(e))
        return outcome
    outcome.checks = len(table)
    if set(table) != set(fix.deleted):
        _fail(outcome, model, lam, "witness table does not cover exactly the non-similar pairs")
    return outcome


def st_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """Modal truth agrees with first-order truth of the standard translation"""
    outcome = TrialOutcome(trial=trial)
    model = trial_model(rng, cfg)
    lam = _with_extras(rng, _lam(rng, cfg))
    for _ in range(cfg.formulas_per_trial):
        phi = random_formula(rng, lam, cfg.depth, len(model.letters()))
        w = rng.below(model.n_worlds)
        outcome.checks += 1
        if not st_check(model, w, phi):
            _fail(outcome, model, lam, f"modal and first-order truth of {phi} differ at {w}")
            return outcome
    return outcome


def union_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """Truth at a world of either summand is unchanged inside the disjoint union"""
    outcome = TrialOutcome(trial=trial)
    m1 = trial_model(rng, cfg)
    m2 = trial_model(rng, cfg)
    lam = _with_extras(rng, _lam(rng, cfg))
    union, injections = disjoint_union(m1, m2)
    n_letters = max(len(m1.letters()), len(m2.letters()))
    for _ in range(cfg.formulas_per_trial):
        phi = random_formula(rng, lam, cfg.depth, n_letters)
        inside = truth_mask(union, phi)
        for model, table in ((m1, injections.left), (m2, injections.right)):
            mask = truth_mask(model, phi)
            for w in model.worlds():
                outcome.checks += 1
                if (mask >> w & 1) != (inside >> table[w] & 1):
                    _fail(outcome, union, lam, f"{phi} changes truth at world {w} mapped to {table[w]}")
                    return outcome
    return outcome


def concrete_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """The four blocks of the greatest union simulation form a concrete simulation whose diagonal blocks are the summands' own"""
    outcome = TrialOutcome(trial=trial)
    m1 = trial_model(rng, cfg)
    m2 = trial_model(rng, cfg)
    lam = _lam(rng, cfg)
    union, injections = disjoint_union(m1, m2)
    greatest = greatest_simulation(union, lam)
    quad = to_concrete(greatest, injections)
    outcome.checks = 3
    if not verify_concrete(m1, m2, lam, quad).ok:
        _fail(outcome, union, lam, "blocks of the greatest union simulation do not verify as a concrete simulation")
    if from_concrete(quad, injections) != greatest:
        _fail(outcome, union, lam, "concrete blocks do not reassemble the union relation")
    if quad.s11 != greatest_simulation(m1, lam).pairs or quad.s22 != greatest_simulation(m2, lam).pairs:
        _fail(outcome, union, lam, "a diagonal block differs from the summand's greatest simulation")
    return outcome


def reflexive_trial(trial: int, rng: SplitMix64, cfg: TrialConfig) -> TrialOutcome:
    """On reflexive frames smile φ & con φ has the truth set of not φ"""
    outcome = TrialOutcome(trial=trial)
    drawn = trial_model(rng, cfg)
    succ = [mask | 1 << w for w, mask in enumerate(drawn.successors)]
    model = KripkeModel.from_masks(drawn.n_worlds, succ, drawn.letter_masks)
    lam = _lam(rng, cfg)
    for _ in range(cfg.formulas_per_trial):
        phi = random_formula(rng, lam, cfg.depth, len(model.letters()))
        defined: Formula = And(Unary(UnaryOp.SMILE, phi), Unary(UnaryOp.CON, phi))
        outcome.checks += 1
        if truth_mask(model, defined) != truth_mask(model, Unary(UnaryOp.NOT, phi)):
            _fail(outcome, model, lam, f"smile & con of {phi} differs from its classical negation")
            return outcome
    return outcome


SUITES: dict[str, TrialFn] = {
    "hm": hm_trial,
    "adequacy": adequacy_trial,
    "symmetric": symmetric_trial,
    "directed": directed_trial,
    "witness": witness_trial,
    "st": st_trial,
    "union": union_trial,
    "concrete": concrete_trial,
    "reflexive": reflexive_trial,
}


# =============================================================================
# Runner
# =============================================================================

def _run_trial(name: str, cfg: TrialConfig, trial: int) -> TrialOutcome:
    return SUITES[name](trial, SplitMix64(cfg.seed).derive(trial), cfg)


def _run_chunk(name: str, cfg: TrialConfig, trials: range) -> list[TrialOutcome]:
    return [_run_trial(name, cfg, trial) for trial in trials]


def run_suite(name: str, cfg: Optional[TrialConfig] = None) -> SuiteReport:
    """Run cfg.trials trials of a named suite; outcomes are merged in trial order"""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    cfg = cfg or TrialConfig()
    logger.info("suite_started", suite=name, trials=cfg.trials, seed=cfg.seed, jobs=cfg.jobs)

    if cfg.jobs > 1 and cfg.trials > 1:
        step = -(-cfg.trials // cfg.jobs)
        chunks = [range(start, min(start + step, cfg.trials)) for start in range(0, cfg.trials, step)]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            parts = pool.map(_run_chunk, [name] * len(chunks), [cfg] * len(chunks), chunks)
            outcomes = [outcome for part in parts for outcome in part]
    else:
        outcomes = _run_chunk(name, cfg, range(cfg.trials))

    report = SuiteReport(suite=name, config=cfg, trials=len(outcomes))
    for outcome in sorted(outcomes, key=lambda o: o.trial):
        report.checks += outcome.checks
        report.skipped += int(outcome.skipped)
        for failure in outcome.failures:
            logger.warning("trial_mismatch", suite=name, trial=failure.trial, lam=failure.lambda_label, detail=failure.detail)
        report.failures.extend(outcome.failures)

    logger.info("suite_finished", suite=name, trials=report.trials, checks=report.checks,
                skipped=report.skipped, failures=len(report.failures))
    return report


def hm_suite(cfg: Optional[TrialConfig] = None) -> SuiteReport:
    return run_suite("hm", cfg)


def adequacy_suite(cfg: Optional[TrialConfig] = None) -> SuiteReport:
    return run_suite("adequacy", cfg)


def symmetric_suite(cfg: Optional[TrialConfig] = None) -> SuiteReport:
    return run_suite("symmetric", cfg)


def directed_suite(cfg: Optional[TrialConfig] = None) -> SuiteReport:
    return run_suite("directed", cfg)
