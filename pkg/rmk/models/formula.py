"""
Formula Models - Unary operators, similarity types and the formula AST
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union


class UnaryOp(str, Enum):
    NOT = "not"
    BOX = "box"
    DIA = "dia"
    SMILE = "smile"  # paraconsistent negation
    FROWN = "frown"  # paracomplete negation
    CON = "con"      # consistency
    DET = "det"      # determinedness
    INC = "inc"      # inconsistency
    UND = "und"      # undeterminedness


OP_ORDER: tuple[UnaryOp, ...] = tuple(UnaryOp)

RESTORATIVE_OPS: frozenset[UnaryOp] = frozenset({
    UnaryOp.SMILE, UnaryOp.FROWN, UnaryOp.CON, UnaryOp.DET, UnaryOp.INC, UnaryOp.UND,
})


@dataclass(frozen=True)
class SimilarityType:
    """A set of unary operators fixing the language L_Λ"""
    ops: frozenset[UnaryOp] = frozenset()

    @classmethod
    def of(cls, *ops: Union[UnaryOp, str]) -> "SimilarityType":
        return cls(frozenset(UnaryOp(op) for op in ops))

    @classmethod
    def parse(cls, label: str) -> "SimilarityType":
        """Parse a comma list such as ``"smile,con"``; empty text is the positive fragment"""
        names = [part.strip() for part in label.split(",") if part.strip()]
        try:
            return cls.of(*names)
        except ValueError as exc:
            raise ValueError(f"unknown operator in similarity type {label!r}") from exc

    @property
    def label(self) -> str:
        return ",".join(op.value for op in self.ordered())

    def ordered(self) -> list[UnaryOp]:
        return [op for op in OP_ORDER if op in self.ops]

    def is_restorative(self) -> bool:
        return self.ops <= RESTORATIVE_OPS

    def __contains__(self, op: object) -> bool:
        return op in self.ops

    def __str__(self) -> str:
        return "{" + self.label + "}"


@dataclass(frozen=True)
class Formula:
    """Base of the formula AST; subclasses are immutable value types"""

    def __str__(self) -> str:
        from rmk.core.syntax import print_formula
        return print_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Letter(Formula):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"letter index must be nonnegative, got {self.index}")


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Unary(Formula):
    op: UnaryOp
    arg: Formula


def big_or(formulas: Iterable[Formula]) -> Formula:
    """Left-nested disjunction; the empty disjunction is ⊥"""
    result: Formula | None = None
    for f in formulas:
        result = f if result is None else Or(result, f)
    return Bot() if result is None else result


def big_and(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ⊤"""
    result: Formula | None = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return Top() if result is None else result


@dataclass(frozen=True)
class Sequent:
    """Π ⊢ Σ: read locally, a countermodel world makes every premise true and every conclusion false"""
    premises: tuple[Formula, ...] = ()
    conclusions: tuple[Formula, ...] = ()

    def formulas(self) -> tuple[Formula, ...]:
        return self.premises + self.conclusions
