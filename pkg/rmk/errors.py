"""
Errors - Exception hierarchy shared by the library and the CLI
"""
from typing import Optional


class RmkError(Exception):
    """Base class for every error raised by rmk"""


class FormulaSyntaxError(RmkError):
    """Formula text does not match the grammar"""

    def __init__(self, text: str, offset: int, expected: Optional[set[str]] = None, message: str = ""):
        self.text = text
        self.offset = offset
        self.expected = set(expected or ())
        detail = message or "syntax error"
        if self.expected:
            detail += f"; expected one of {sorted(self.expected)}"
        super().__init__(f"{detail} at offset {offset} in {text!r}")


class UnknownOperatorError(FormulaSyntaxError):
    """An operator word that is not one of the nine unary operators"""

    def __init__(self, text: str, offset: int, name: str):
        self.name = name
        super().__init__(text, offset, message=f"unknown operator {name!r}")


class FolSyntaxError(RmkError):
    """First-order text does not match the printer's grammar"""


class ModelSchemaError(RmkError):
    """Model document violates the JSON schema or names a dangling world"""


class ClosureCapExceeded(RmkError):
    """Definable closure grew past its cap"""

    def __init__(self, cap: int, size: int):
        self.cap = cap
        self.size = size
        super().__init__(f"definable closure exceeded cap {cap} (reached {size} sets)")


class WitnessError(RmkError):
    """A constructed distinguishing formula failed its re-check"""


class UnassignedVariableError(RmkError):
    """FOL evaluation met a free variable with no world assigned"""

    def __init__(self, var: int):
        self.var = var
        super().__init__(f"variable {var} is free but unassigned")
