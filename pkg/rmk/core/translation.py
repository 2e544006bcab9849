"""
Translation - Standard translation into first-order logic and a finite FOL evaluator
"""
from functools import lru_cache

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from rmk.core.semantics import satisfies
from rmk.errors import FolSyntaxError, UnassignedVariableError
from rmk.models import fol
from rmk.models.fol import Assignment, FolFormula, X, var_name
from rmk.models.formula import And, Bot, Formula, Letter, Or, Top, Unary, UnaryOp
from rmk.models.kripke import KripkeModel


class _Fresh:
    """Monotone counter handing out y0, y1, ... for one translation call"""

    def __init__(self, start: int):
        self.next = start

    def take(self) -> int:
        var = self.next
        self.next += 1
        return var


def standard_translation(phi: Formula, x: int = X) -> FolFormula:
    """st(x, phi): one free variable x, one fresh bound variable per modal clause"""
    return _st(x, phi, _Fresh(max(x, X) + 1))


def _st(x: int, phi: Formula, fresh: _Fresh) -> FolFormula:
    if isinstance(phi, Letter):
        return fol.Pred(phi.index, x)
    if isinstance(phi, Top):
        return fol.Eq(x, x)
    if isinstance(phi, Bot):
        return fol.Not(fol.Eq(x, x))
    if isinstance(phi, And):
        left = _st(x, phi.left, fresh)
        return fol.And(left, _st(x, phi.right, fresh))
    if isinstance(phi, Or):
        left = _st(x, phi.left, fresh)
        return fol.Or(left, _st(x, phi.right, fresh))
    if not isinstance(phi, Unary):
        raise TypeError(f"not a formula: {phi!r}")

    op = phi.op
    if op == UnaryOp.NOT:
        return fol.Not(_st(x, phi.arg, fresh))
    # Clauses that also mention the argument at x translate that part first
    here = _st(x, phi.arg, fresh) if op in (UnaryOp.CON, UnaryOp.DET, UnaryOp.INC, UnaryOp.UND) else None
    y = fresh.take()
    there = _st(y, phi.arg, fresh)
    edge = fol.Rel(x, y)

    if op == UnaryOp.BOX:
        return fol.Forall(y, fol.Implies(edge, there))
    if op == UnaryOp.DIA:
        return fol.Exists(y, fol.And(edge, there))
    if op == UnaryOp.SMILE:
        return fol.Exists(y, fol.And(edge, fol.Not(there)))
    if op == UnaryOp.FROWN:
        return fol.Forall(y, fol.Implies(edge, fol.Not(there)))
    if op == UnaryOp.CON:
        return fol.Or(fol.Not(here), fol.Forall(y, fol.Implies(edge, there)))
    if op == UnaryOp.DET:
        return fol.Or(here, fol.Forall(y, fol.Implies(edge, fol.Not(there))))
    if op == UnaryOp.INC:
        return fol.And(here, fol.Exists(y, fol.And(edge, fol.Not(there))))
    if op == UnaryOp.UND:
        return fol.And(fol.Not(here), fol.Exists(y, fol.And(edge, there)))
    raise ValueError(f"unknown operator {op!r}")


def free_vars(alpha: FolFormula) -> set[int]:
    if isinstance(alpha, fol.Pred):
        return {alpha.var}
    if isinstance(alpha, (fol.Rel, fol.Eq)):
        return {alpha.left, alpha.right}
    if isinstance(alpha, fol.Not):
        return free_vars(alpha.arg)
    if isinstance(alpha, (fol.And, fol.Or, fol.Implies)):
        return free_vars(alpha.left) | free_vars(alpha.right)
    if isinstance(alpha, (fol.Forall, fol.Exists)):
        return free_vars(alpha.body) - {alpha.var}
    raise TypeError(f"not a first-order formula: {alpha!r}")


def fol_eval(model: KripkeModel, alpha: FolFormula, assignment: Assignment) -> bool:
    """Tarskian evaluation with the model read as a first-order structure"""
    return _eval(model, alpha, dict(assignment))


def _lookup(assignment: Assignment, var: int) -> int:
    try:
        return assignment[var]
    except KeyError:
        raise UnassignedVariableError(var) from None


def _eval(model: KripkeModel, alpha: FolFormula, env: Assignment) -> bool:
    if isinstance(alpha, fol.Pred):
        return bool(model.letter_mask(alpha.letter) >> _lookup(env, alpha.var) & 1)
    if isinstance(alpha, fol.Rel):
        return model.has_edge(_lookup(env, alpha.left), _lookup(env, alpha.right))
    if isinstance(alpha, fol.Eq):
        return _lookup(env, alpha.left) == _lookup(env, alpha.right)
    if isinstance(alpha, fol.Not):
        return not _eval(model, alpha.arg, env)
    if isinstance(alpha, fol.And):
        return _eval(model, alpha.left, env) and _eval(model, alpha.right, env)
    if isinstance(alpha, fol.Or):
        return _eval(model, alpha.left, env) or _eval(model, alpha.right, env)
    if isinstance(alpha, fol.Implies):
        return (not _eval(model, alpha.left, env)) or _eval(model, alpha.right, env)
    if isinstance(alpha, (fol.Forall, fol.Exists)):
        saved = env.get(alpha.var)
        universal = isinstance(alpha, fol.Forall)
        result = universal
        for w in model.worlds():
            env[alpha.var] = w
            if _eval(model, alpha.body, env) != universal:
                result = not universal
                break
        if saved is None:
            env.pop(alpha.var, None)
        else:
            env[alpha.var] = saved
        return result
    raise TypeError(f"not a first-order formula: {alpha!r}")


def st_check(model: KripkeModel, w: int, phi: Formula) -> bool:
    """True iff modal truth at w agrees with the standard translation evaluated at x ↦ w"""
    return satisfies(model, w, phi) == fol_eval(model, standard_translation(phi), {X: w})


# =============================================================================
# Text form
# =============================================================================

_BINARY = {fol.And: "&", fol.Or: "|", fol.Implies: "->"}


def print_fol(alpha: FolFormula) -> str:
    """Binary operands that are binary get parentheses; quantifier bodies always do"""
    if isinstance(alpha, fol.Pred):
        return f"P{alpha.letter}({var_name(alpha.var)})"
    if isinstance(alpha, fol.Rel):
        return f"R({var_name(alpha.left)},{var_name(alpha.right)})"
    if isinstance(alpha, fol.Eq):
        return f"{var_name(alpha.left)} = {var_name(alpha.right)}"
    if isinstance(alpha, fol.Not):
        inner = print_fol(alpha.arg)
        if isinstance(alpha.arg, (fol.Eq, fol.And, fol.Or, fol.Implies)):
            inner = f"({inner})"
        return f"!{inner}"
    if isinstance(alpha, fol.Forall):
        return f"forall {var_name(alpha.var)}. ({print_fol(alpha.body)})"
    if isinstance(alpha, fol.Exists):
        return f"exists {var_name(alpha.var)}. ({print_fol(alpha.body)})"
    symbol = _BINARY.get(type(alpha))
    if symbol is None:
        raise TypeError(f"not a first-order formula: {alpha!r}")
    return f"{_operand(alpha.left)} {symbol} {_operand(alpha.right)}"


def _operand(alpha: FolFormula) -> str:
    text = print_fol(alpha)
    return f"({text})" if type(alpha) in _BINARY else text


FOL_GRAMMAR = r"""
    ?start: formula

    ?formula: unit
            | unit "&" unit     -> and_
            | unit "|" unit     -> or_
            | unit "->" unit    -> implies

    ?unit: "!" unit                                 -> not_
         | "forall" VAR "." "(" formula ")"         -> forall
         | "exists" VAR "." "(" formula ")"         -> exists
         | PRED "(" VAR ")"                         -> pred
         | "R" "(" VAR "," VAR ")"                  -> rel
         | VAR "=" VAR                              -> eq
         | "(" formula ")"

    PRED: /P[0-9]+/
    VAR: /x|y[0-9]+/

    %import common.WS
    %ignore WS
"""


def _var_index(token) -> int:
    text = str(token)
    return X if text == "x" else int(text[1:]) + 1


@v_args(inline=True)
class _ToFol(Transformer):
    def and_(self, left, right):
        return fol.And(left, right)

    def or_(self, left, right):
        return fol.Or(left, right)

    def implies(self, left, right):
        return fol.Implies(left, right)

    def not_(self, arg):
        return fol.Not(arg)

    def forall(self, var, body):
        return fol.Forall(_var_index(var), body)

    def exists(self, var, body):
        return fol.Exists(_var_index(var), body)

    def pred(self, name, var):
        return fol.Pred(int(str(name)[1:]), _var_index(var))

    def rel(self, left, right):
        return fol.Rel(_var_index(left), _var_index(right))

    def eq(self, left, right):
        return fol.Eq(_var_index(left), _var_index(right))


@lru_cache(maxsize=1)
def _fol_parser() -> Lark:
    return Lark(FOL_GRAMMAR, parser="lalr", transformer=_ToFol())


def parse_fol(text: str) -> FolFormula:
    """Reads back what print_fol writes"""
    try:
        return _fol_parser().parse(text)
    except UnexpectedInput as e:
        raise FolSyntaxError(f"cannot parse first-order formula at offset {getattr(e, 'pos_in_stream', '?')}: {text!r}") from None
