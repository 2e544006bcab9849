"""
Shared fixtures: the worked example models and a small trial configuration
"""
import pytest
from hypothesis import strategies as st

from rmk.core.kripke import load_model
from rmk.models.formula import And, Bot, Letter, Or, Top, Unary, UnaryOp
from rmk.models.report import TrialConfig
from rmk.services.registry import registry

RESTORATIVE = [UnaryOp.SMILE, UnaryOp.FROWN, UnaryOp.CON, UnaryOp.DET, UnaryOp.INC, UnaryOp.UND]


def formulas(ops=tuple(UnaryOp), letters: int = 3, max_leaves: int = 12):
    """Hypothesis strategy for formulas over the given operators"""
    leaves = st.one_of(st.just(Top()), st.just(Bot()), st.integers(0, letters - 1).map(Letter))
    return st.recursive(
        leaves,
        lambda children: st.one_of(
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Unary, st.sampled_from(list(ops)), children),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def models(draw, max_worlds: int = 4, letters: int = 2):
    """Hypothesis strategy for small Kripke models"""
    n = draw(st.integers(1, max_worlds))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n * n))
    valuation = {
        f"p{k}": draw(st.lists(st.integers(0, n - 1), max_size=n, unique=True))
        for k in range(letters)
    }
    return load_model({"worlds": n, "edges": [list(e) for e in edges], "valuation": valuation})


@pytest.fixture
def smile_vsmile():
    return registry.require("smile_vsmile")


@pytest.fixture
def neg():
    return registry.require("neg")


@pytest.fixture
def dashed():
    return registry.require("dashed")


@pytest.fixture
def undef_new():
    return registry.require("undef_new")


@pytest.fixture
def chain():
    """0 -> 1 -> 2 with p0 true at 1 and 2"""
    return load_model({"worlds": 3, "edges": [[0, 1], [1, 2]], "valuation": {"p0": [1, 2]}})


@pytest.fixture
def small_cfg():
    return TrialConfig(seed=7, trials=15, max_worlds=4, max_letters=2, depth=3, formulas_per_trial=4)
