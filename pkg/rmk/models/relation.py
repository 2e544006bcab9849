"""
Relation Models - World relations, violation reports and simulation modes
"""
from enum import Enum
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field

from rmk.models.formula import UnaryOp
from rmk.models.kripke import bits


Pair = tuple[int, int]


class Relation(BaseModel):
    """A set of world pairs over one model (or over a disjoint union)"""
    model_config = ConfigDict(frozen=True)

    pairs: frozenset[Pair] = frozenset()

    @classmethod
    def of(cls, pairs: Iterable[Pair]) -> "Relation":
        return cls(pairs=frozenset((int(a), int(b)) for a, b in pairs))

    @classmethod
    def identity(cls, n_worlds: int) -> "Relation":
        return cls(pairs=frozenset((w, w) for w in range(n_worlds)))

    @classmethod
    def from_rows(cls, rows: list[int]) -> "Relation":
        return cls(pairs=frozenset((a, b) for a, row in enumerate(rows) for b in bits(row)))

    def rows(self, n_worlds: int) -> list[int]:
        """Row bitmasks: bit b of rows[a] is set iff (a, b) is in the relation"""
        rows = [0] * n_worlds
        for a, b in self.pairs:
            rows[a] |= 1 << b
        return rows

    def union(self, other: "Relation") -> "Relation":
        return Relation(pairs=self.pairs | other.pairs)

    def max_world(self) -> int:
        return max((max(a, b) for a, b in self.pairs), default=-1)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def to_document(self) -> dict:
        return {"pairs": [list(p) for p in sorted(self.pairs)]}


class ConditionTag(str, Enum):
    SIM_K = "Sim_k"
    SIM_SMILE = "Sim_smile"
    SIM_FROWN = "Sim_frown"
    SIM_CON = "Sim_con"
    SIM_DET = "Sim_det"
    SIM_INC = "Sim_inc"
    SIM_UND = "Sim_und"
    SYM = "Sym"
    # Directed pairs
    F_K = "F_k"
    B_K = "B_k"
    F_SMILE = "F_smile"
    B_SMILE = "B_smile"
    F_FROWN = "F_frown"
    B_FROWN = "B_frown"
    # Kripke bisimulation
    BIS_K = "Bis_k"
    BIS_FORTH = "Bis_forth"
    BIS_BACK = "Bis_back"


CONDITION_OF_OP: dict[UnaryOp, ConditionTag] = {
    UnaryOp.SMILE: ConditionTag.SIM_SMILE,
    UnaryOp.FROWN: ConditionTag.SIM_FROWN,
    UnaryOp.CON: ConditionTag.SIM_CON,
    UnaryOp.DET: ConditionTag.SIM_DET,
    UnaryOp.INC: ConditionTag.SIM_INC,
    UnaryOp.UND: ConditionTag.SIM_UND,
}

# Conditions with a dashed disjunct that ablated mode can drop
ABLATABLE: frozenset[ConditionTag] = frozenset({
    ConditionTag.SIM_CON, ConditionTag.SIM_DET, ConditionTag.SIM_INC, ConditionTag.SIM_UND,
})


class Violation(BaseModel):
    """One failing condition for one pair; witness is the offending world or letter index"""
    pair: Pair
    condition: ConditionTag
    witness: Optional[int] = None

    def to_document(self) -> dict:
        return {"pair": list(self.pair), "condition": self.condition.value, "witness": self.witness}


class ViolationReport(BaseModel):
    violations: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_document(self) -> dict:
        ordered = sorted(self.violations, key=lambda v: (v.pair, v.condition.value, -1 if v.witness is None else v.witness))
        return {"ok": self.ok, "violations": [v.to_document() for v in ordered]}


class SimVariant(str, Enum):
    PLAIN = "plain"
    SYMMETRIC = "symmetric"
    ABLATED = "ablated"


class SimMode(BaseModel):
    """How simulation conditions are read: plain, symmetric, or with dashed disjuncts dropped"""
    model_config = ConfigDict(frozen=True)

    variant: SimVariant = SimVariant.PLAIN
    ablated: frozenset[ConditionTag] = frozenset()

    @classmethod
    def plain(cls) -> "SimMode":
        return cls()

    @classmethod
    def symmetric(cls) -> "SimMode":
        return cls(variant=SimVariant.SYMMETRIC)

    @classmethod
    def ablate(cls, *tags: ConditionTag) -> "SimMode":
        return cls(variant=SimVariant.ABLATED, ablated=frozenset(tags))

    @classmethod
    def parse(cls, text: str) -> "SimMode":
        """``plain``, ``symmetric`` or ``ablated:<tags>`` where tags are ops or condition names"""
        head, _, rest = text.strip().partition(":")
        if head == SimVariant.PLAIN.value and not rest:
            return cls.plain()
        if head == SimVariant.SYMMETRIC.value and not rest:
            return cls.symmetric()
        if head != SimVariant.ABLATED.value:
            raise ValueError(f"unknown simulation mode {text!r}")
        tags = set()
        for name in (part.strip() for part in rest.split(",") if part.strip()):
            tag = _ablation_tag(name)
            if tag not in ABLATABLE:
                raise ValueError(f"condition {name!r} has no dashed clause to drop")
            tags.add(tag)
        if not tags:
            raise ValueError("ablated mode needs at least one condition, e.g. ablated:con")
        return cls.ablate(*tags)

    @property
    def is_symmetric(self) -> bool:
        return self.variant == SimVariant.SYMMETRIC

    def drops(self, tag: ConditionTag) -> bool:
        return self.variant == SimVariant.ABLATED and tag in self.ablated

    @property
    def label(self) -> str:
        if self.variant != SimVariant.ABLATED:
            return self.variant.value
        names = sorted(tag.value for tag in self.ablated)
        return "ablated:" + ",".join(names)


def _ablation_tag(name: str) -> ConditionTag:
    try:
        return CONDITION_OF_OP[UnaryOp(name)]
    except (ValueError, KeyError):
        pass
    try:
        return ConditionTag(name)
    except ValueError:
        raise ValueError(f"unknown condition {name!r}") from None


class DirectedSimPair(BaseModel):
    """Forward part F ⊆ W1×W2 and backward part B ⊆ W2×W1, in each model's own ids"""
    model_config = ConfigDict(frozen=True)

    forward: frozenset[Pair] = frozenset()
    backward: frozenset[Pair] = frozenset()

    def to_document(self) -> dict:
        return {
            "F": [list(p) for p in sorted(self.forward)],
            "B": [list(p) for p in sorted(self.backward)],
        }


class ConcreteSimQuad(BaseModel):
    """The four blocks S_ij ⊆ W_i × W_j of a relation on a disjoint union, in local ids"""
    model_config = ConfigDict(frozen=True)

    s11: frozenset[Pair] = frozenset()
    s12: frozenset[Pair] = frozenset()
    s21: frozenset[Pair] = frozenset()
    s22: frozenset[Pair] = frozenset()

    def to_document(self) -> dict:
        return {name: [list(p) for p in sorted(getattr(self, name))] for name in ("s11", "s12", "s21", "s22")}
