"""
Syntax - Formula parser (lark), printer and language membership
"""
from functools import lru_cache

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from rmk.errors import FormulaSyntaxError, UnknownOperatorError
from rmk.models.formula import And, Bot, Formula, Letter, Or, Sequent, SimilarityType, Top, Unary, UnaryOp

GRAMMAR = r"""
    ?start: disj

    ?disj: conj
         | disj "|" conj        -> or_

    ?conj: unary
         | conj "&" unary       -> and_

    ?unary: WORD unary          -> unary
          | atom

    ?atom: "T"                  -> top
         | "F"                  -> bot
         | LETTER               -> letter
         | "(" disj ")"

    LETTER.2: /p[0-9]+/
    WORD: /[a-z][a-z0-9_]*/

    %import common.WS
    %ignore WS
"""

# Readable names for lark's terminal names in error messages
_TERMINAL_NAMES = {
    "VBAR": "|",
    "AMPERSAND": "&",
    "LPAR": "(",
    "RPAR": ")",
    "T": "T",
    "F": "F",
    "LETTER": "letter p<N>",
    "WORD": "operator",
    "$END": "end of input",
}

_OPERATOR_NAMES = {op.value: op for op in UnaryOp}


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", propagate_positions=False, maybe_placeholders=False)


class _ToFormula(Transformer):
    """Turns the lark tree into Formula values"""

    def __init__(self, text: str):
        super().__init__()
        self._text = text

    def top(self, _items):
        return Top()

    def bot(self, _items):
        return Bot()

    @v_args(inline=True)
    def letter(self, token: Token):
        return Letter(int(token[1:]))

    @v_args(inline=True)
    def and_(self, left, right):
        return And(left, right)

    @v_args(inline=True)
    def or_(self, left, right):
        return Or(left, right)

    @v_args(inline=True)
    def unary(self, word: Token, arg):
        op = _OPERATOR_NAMES.get(str(word))
        if op is None:
            raise UnknownOperatorError(self._text, _byte_offset(self._text, word.start_pos), str(word))
        return Unary(op, arg)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _expected(names) -> set[str]:
    return {_TERMINAL_NAMES.get(name, name) for name in names}


def parse_formula(text: str) -> Formula:
    """Parse concrete syntax; precedence unary > & > |, binary operators left-associative"""
    try:
        tree = _parser().parse(text)
        return _ToFormula(text).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, FormulaSyntaxError):
            raise e.orig_exc from None
        raise
    except UnexpectedEOF as e:
        raise FormulaSyntaxError(text, _byte_offset(text, len(text)), _expected(e.expected),
                                 "unexpected end of input") from None
    except UnexpectedToken as e:
        pos = e.token.start_pos if e.token.start_pos is not None else len(text)
        if e.token.type == "$END":
            pos = len(text)
        raise FormulaSyntaxError(text, _byte_offset(text, pos), _expected(e.expected),
                                 f"unexpected token {str(e.token)!r}") from None
    except UnexpectedCharacters as e:
        raise FormulaSyntaxError(text, _byte_offset(text, e.pos_in_stream), _expected(e.allowed or ()),
                                 f"unexpected character {text[e.pos_in_stream]!r}") from None
    except UnexpectedInput as e:
        raise FormulaSyntaxError(text, 0, set(), str(e)) from None


# Printer precedence levels
_OR, _AND, _UNARY = 1, 2, 3


def print_formula(phi: Formula) -> str:
    """Inverse of parse_formula with the fewest parentheses that keep the tree"""
    return _print(phi, _OR)


def _print(phi: Formula, context: int) -> str:
    if isinstance(phi, Top):
        return "T"
    if isinstance(phi, Bot):
        return "F"
    if isinstance(phi, Letter):
        return f"p{phi.index}"
    if isinstance(phi, Unary):
        return f"{phi.op.value} {_print(phi.arg, _UNARY)}"
    if isinstance(phi, And):
        text = f"{_print(phi.left, _AND)} & {_print(phi.right, _UNARY)}"
        return f"({text})" if context > _AND else text
    if isinstance(phi, Or):
        text = f"{_print(phi.left, _OR)} | {_print(phi.right, _AND)}"
        return f"({text})" if context > _OR else text
    raise TypeError(f"not a formula: {phi!r}")


def operators_of(phi: Formula) -> set[UnaryOp]:
    found: set[UnaryOp] = set()
    seen: set[int] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Unary):
            found.add(node.op)
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            stack.extend((node.left, node.right))
    return found


def letters_of(phi: Formula) -> set[int]:
    found: set[int] = set()
    seen: set[int] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Letter):
            found.add(node.index)
        elif isinstance(node, Unary):
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            stack.extend((node.left, node.right))
    return found


def in_language(phi: Formula, lam: SimilarityType) -> bool:
    """True iff every unary operator occurring in phi belongs to lam"""
    return operators_of(phi) <= lam.ops


def modal_depth(phi: Formula) -> int:
    memo: dict[int, int] = {}

    def depth(node: Formula) -> int:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Unary):
            result = 1 + depth(node.arg)
        elif isinstance(node, (And, Or)):
            result = max(depth(node.left), depth(node.right))
        else:
            result = 0
        memo[key] = result
        return result

    return depth(phi)


def formula_size(phi: Formula) -> int:
    """Number of nodes of phi read as a tree (shared subformulas counted per use)"""
    memo: dict[int, int] = {}
    stack = [(phi, False)]
    while stack:
        node, ready = stack.pop()
        if id(node) in memo:
            continue
        children = _children(node)
        if ready:
            memo[id(node)] = 1 + sum(memo[id(c)] for c in children)
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in children)
    return memo[id(phi)]


def _children(node: Formula) -> tuple[Formula, ...]:
    if isinstance(node, Unary):
        return (node.arg,)
    if isinstance(node, (And, Or)):
        return (node.left, node.right)
    return ()


def parse_sequent(text: str) -> Sequent:
    """``"phi1, phi2 |- psi1, psi2"``; either side may be empty"""
    if text.count("|-") != 1:
        raise FormulaSyntaxError(text, _byte_offset(text, len(text)), {"|-"}, "a sequent needs exactly one '|-'")
    left, right = text.split("|-")
    return Sequent(premises=_formula_list(left), conclusions=_formula_list(right))


def _formula_list(text: str) -> tuple[Formula, ...]:
    return tuple(parse_formula(part) for part in text.split(",") if part.strip())


def print_sequent(sequent: Sequent) -> str:
    left = ", ".join(print_formula(phi) for phi in sequent.premises)
    right = ", ".join(print_formula(phi) for phi in sequent.conclusions)
    return f"{left} |- {right}".strip()
