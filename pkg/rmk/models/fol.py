"""
FOL Models - First-order formulas over P_k, R and equality
"""
from dataclasses import dataclass


# Variable 0 is the distinguished free variable x; i >= 1 prints as y{i-1}
X = 0

Assignment = dict[int, int]


def var_name(var: int) -> str:
    if var < 0:
        raise ValueError(f"variables are nonnegative, got {var}")
    return "x" if var == X else f"y{var - 1}"


@dataclass(frozen=True)
class FolFormula:
    def __str__(self) -> str:
        from rmk.core.translation import print_fol
        return print_fol(self)


@dataclass(frozen=True)
class Pred(FolFormula):
    letter: int
    var: int


@dataclass(frozen=True)
class Rel(FolFormula):
    left: int
    right: int


@dataclass(frozen=True)
class Eq(FolFormula):
    left: int
    right: int


@dataclass(frozen=True)
class Not(FolFormula):
    arg: FolFormula


@dataclass(frozen=True)
class And(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class Or(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class Implies(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class Forall(FolFormula):
    var: int
    body: FolFormula


@dataclass(frozen=True)
class Exists(FolFormula):
    var: int
    body: FolFormula
