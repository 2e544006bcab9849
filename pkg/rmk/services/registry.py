"""
Example Registry - The worked example models with their claimed relations and facts
"""
from typing import Optional

import structlog

from rmk.core.kripke import load_model
from rmk.models.relation import Relation, SimMode
from rmk.models.report import Fact, PaperExample

logger = structlog.get_logger()


def _smile_vsmile() -> PaperExample:
    # w has a single successor u; v and u have none; every letter is empty
    return PaperExample(
        id="smile_vsmile",
        description="smile is not definable from inc: an {inc}-simulation links w to v",
        world_names=["w", "v", "u"],
        model=load_model({"worlds": 3, "edges": [[0, 2]], "valuation": {"p0": []}}),
        lambda_label="inc",
        relation=Relation.of([(0, 2), (0, 1)]),
        facts=[
            Fact(world=0, formula="smile p0", expected=True),
            Fact(world=1, formula="smile p0", expected=False),
            Fact(world=2, formula="smile p0", expected=False),
        ],
    )


def _neg() -> PaperExample:
    # The claimed relation is a {smile}-simulation; under con it fails at (w, v) since v R t,
    # (v, t) ∉ S and (v, w) ∉ S. run_paper_examples checks both facts.
    return PaperExample(
        id="neg",
        description="classical negation is not definable from smile (and, via the probe, from smile,con)",
        world_names=["w", "v", "u", "t"],
        model=load_model({"worlds": 4, "edges": [[0, 2], [1, 3]], "valuation": {"p0": [1, 2, 3]}}),
        lambda_label="smile,con",
        relation=Relation.of([(0, 1), (2, 3), (3, 2)]),
        facts=[
            Fact(world=0, formula="p0", expected=False),
            Fact(world=1, formula="p0", expected=True),
            Fact(world=0, formula="not p0", expected=True),
            Fact(world=1, formula="not p0", expected=False),
            Fact(world=0, formula="con (p0 & smile F)", expected=True),
            Fact(world=1, formula="con (p0 & smile F)", expected=False),
        ],
    )


def _dashed() -> PaperExample:
    return PaperExample(
        id="dashed",
        description="without the dashed clause of Sim_con the greatest simulation misses (w, v)",
        world_names=["w", "v", "t"],
        model=load_model({"worlds": 3, "edges": [[1, 2]], "valuation": {"p0": [2]}}),
        lambda_label="con",
        relation=Relation.of([(0, 1), (1, 2)]),
        facts=[
            Fact(world=0, formula="con p0", expected=True),
            Fact(world=1, formula="con p0", expected=True),
            Fact(world=2, formula="con p0", expected=True),
        ],
    )


def _undef_new() -> PaperExample:
    return PaperExample(
        id="undef_new",
        description="box F is not definable with classical negation and the four restoration operators",
        world_names=["w", "v"],
        model=load_model({"worlds": 2, "edges": [[0, 0]], "valuation": {}}),
        lambda_label="con,det,inc,und",
        mode=SimMode.symmetric(),
        relation=Relation.of([(0, 1), (1, 0), (0, 0)]),
        facts=[
            Fact(world=0, formula="box F", expected=False),
            Fact(world=1, formula="box F", expected=True),
        ],
    )


class ExampleRegistry:
    """
    Registry of the worked examples. World ids follow the order in which
    the worlds are introduced (w = 0, v = 1, ...).
    """

    def __init__(self):
        self._examples: dict[str, PaperExample] = {}
        self._loaded = False

    def _load(self) -> None:
        # Built on first use so importing the package logs nothing
        if self._loaded:
            return
        self._loaded = True
        for build in (_smile_vsmile, _neg, _dashed, _undef_new):
            self.register(build())

    def register(self, example: PaperExample) -> None:
        self._load()
        if example.id in self._examples:
            logger.warning("example_replaced", example=example.id)
        self._examples[example.id] = example

    def get(self, example_id: str) -> Optional[PaperExample]:
        self._load()
        return self._examples.get(example_id)

    def require(self, example_id: str) -> PaperExample:
        example = self.get(example_id)
        if example is None:
            raise KeyError(f"unknown example {example_id!r}; known: {', '.join(self.ids())}")
        return example

    def get_all(self) -> list[PaperExample]:
        self._load()
        return list(self._examples.values())

    def ids(self) -> list[str]:
        self._load()
        return list(self._examples)


# Global registry instance
registry = ExampleRegistry()
