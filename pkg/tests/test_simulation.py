"""
Tests for simulation checks, greatest fixpoints, witnesses and the two-model variants
"""
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from rmk.core.kripke import disjoint_union
from rmk.core.semantics import satisfies, subsumption
from rmk.core.simulation import (
    check_pair,
    cross_block,
    from_directed,
    greatest_directed,
    greatest_simulation,
    kripke_bisimulation,
    to_concrete,
    to_directed,
    verify_concrete,
    verify_directed,
    verify_simulation,
    witness_formula,
    witness_table,
)
from rmk.core.syntax import in_language
from rmk.models.formula import Bot, Letter, SimilarityType, Unary, UnaryOp
from rmk.models.relation import ConditionTag, DirectedSimPair, Relation, SimMode
from tests.conftest import RESTORATIVE, models

modes = st.sampled_from([SimMode.plain(), SimMode.symmetric()])

SMILE = SimilarityType.of("smile")
restorative_types = st.sets(st.sampled_from(RESTORATIVE), min_size=1).map(lambda ops: SimilarityType(frozenset(ops)))


def test_letter_violation_names_the_letter(chain):
    report = verify_simulation(chain, SimilarityType(), Relation.of([(1, 0)]))
    assert [(v.pair, v.condition, v.witness) for v in report.violations] == [((1, 0), ConditionTag.SIM_K, 0)]


def test_pair_outside_the_model(chain):
    with pytest.raises(ValueError):
        verify_simulation(chain, SMILE, Relation.of([(0, 3)]))


def test_greatest_smile_simulation_on_a_chain(chain):
    assert greatest_simulation(chain, SMILE).pairs == {(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)}


def test_classical_operators_need_their_own_modes(chain):
    with pytest.raises(ValueError):
        greatest_simulation(chain, SimilarityType.of("box"))
    with pytest.raises(ValueError):
        greatest_simulation(chain, SimilarityType.of("not", "con"))
    assert (0, 0) in greatest_simulation(chain, SimilarityType.of("not", "con"), SimMode.symmetric())


def test_dashed_clause_ablation(dashed):
    lam = SimilarityType.of("con")
    ablated = SimMode.parse("ablated:con")
    assert check_pair(dashed.model, lam, dashed.relation, (0, 1)) == []
    assert [v.condition for v in check_pair(dashed.model, lam, dashed.relation, (0, 1), ablated)] == [ConditionTag.SIM_CON]
    assert (0, 1) in greatest_simulation(dashed.model, lam)
    assert (0, 1) not in greatest_simulation(dashed.model, lam, ablated)


def test_symmetric_mode_reports_missing_mirror(undef_new):
    report = verify_simulation(undef_new.model, SimilarityType(), Relation.of([(0, 1)]), SimMode.symmetric())
    assert [(v.pair, v.condition) for v in report.violations] == [((0, 1), ConditionTag.SYM)]


def test_symmetric_similarity_is_coarser_than_bisimilarity(undef_new):
    lam = SimilarityType.parse("con,det,inc,und")
    assert (0, 1) in greatest_simulation(undef_new.model, lam, SimMode.symmetric())
    assert (0, 1) not in kripke_bisimulation(undef_new.model)


def test_witnesses_on_a_chain(chain):
    assert witness_formula(chain, SMILE, 0, 1) is None
    assert witness_formula(chain, SMILE, 0, 2) == Unary(UnaryOp.SMILE, Bot())
    assert witness_formula(chain, SMILE, 1, 0) == Letter(0)
    assert set(witness_table(chain, SMILE)) == {(0, 2), (1, 0), (1, 2), (2, 0)}


def test_witness_needs_a_restorative_type(chain):
    with pytest.raises(ValueError):
        witness_formula(chain, SimilarityType.of("not"), 0, 1)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(), restorative_types)
def test_greatest_simulation_is_a_simulation_and_matches_subsumption(model, lam):
    greatest = greatest_simulation(model, lam)
    assert verify_simulation(model, lam, greatest).ok
    assert Relation.identity(model.n_worlds).pairs <= greatest.pairs
    assert greatest == subsumption(model, lam)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(), restorative_types)
def test_every_witness_distinguishes_its_pair(model, lam):
    greatest = greatest_simulation(model, lam)
    for (w, v), phi in witness_table(model, lam).items():
        assert (w, v) not in greatest
        assert satisfies(model, w, phi) and not satisfies(model, v, phi)
        assert in_language(phi, lam)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(max_worlds=3), models(max_worlds=3), st.sets(st.sampled_from([UnaryOp.SMILE, UnaryOp.FROWN])))
def test_directed_similarity_is_the_cross_block_of_the_union(m1, m2, ops):
    lam = SimilarityType(frozenset(ops))
    union, injections = disjoint_union(m1, m2)
    pair = greatest_directed(m1, m2, lam)
    assert verify_directed(m1, m2, lam, pair).ok
    assert from_directed(pair, injections) == cross_block(greatest_simulation(union, lam), injections)
    assert to_directed(from_directed(pair, injections), injections) == pair


def test_directed_violations_use_directed_tags(chain):
    report = verify_directed(chain, chain, SimilarityType(), DirectedSimPair(forward=frozenset({(1, 0)})))
    assert [v.condition for v in report.violations] == [ConditionTag.F_K]
    with pytest.raises(ValueError):
        greatest_directed(chain, chain, SimilarityType.of("con"))


def test_concrete_blocks_of_the_union_simulation(chain, smile_vsmile):
    union, injections = disjoint_union(chain, smile_vsmile.model)
    quad = to_concrete(greatest_simulation(union, SMILE), injections)
    assert verify_concrete(chain, smile_vsmile.model, SMILE, quad).ok
    assert quad.s11 == greatest_simulation(chain, SMILE).pairs


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(), restorative_types, modes)
def test_identity_is_always_a_simulation(model, lam, mode):
    assert verify_simulation(model, lam, Relation.identity(model.n_worlds), mode).ok


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(), restorative_types, restorative_types, restorative_types)
def test_union_of_simulations_is_a_simulation(model, lam, extra1, extra2):
    # a simulation for a larger type is also one for lam
    s1 = greatest_simulation(model, SimilarityType(lam.ops | extra1.ops))
    s2 = greatest_simulation(model, SimilarityType(lam.ops | extra2.ops))
    assert verify_simulation(model, lam, s1).ok and verify_simulation(model, lam, s2).ok
    union = s1.union(s2).union(Relation.identity(model.n_worlds))
    assert verify_simulation(model, lam, union).ok
    assert union.pairs <= greatest_simulation(model, lam).pairs


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(), restorative_types, modes)
def test_greatest_simulation_cannot_be_extended(model, lam, mode):
    greatest = greatest_simulation(model, lam, mode)
    for w in range(model.n_worlds):
        for v in range(model.n_worlds):
            if (w, v) in greatest:
                continue
            extended = greatest.union(Relation.of([(w, v)]))
            assert not verify_simulation(model, lam, extended, mode).ok, (w, v)


def test_witness_pair_must_lie_in_the_model(chain):
    with pytest.raises(ValueError, match="outside the model"):
        witness_formula(chain, SMILE, 0, 9)
    with pytest.raises(ValueError, match="outside the model"):
        witness_formula(chain, SMILE, 9, 0)
