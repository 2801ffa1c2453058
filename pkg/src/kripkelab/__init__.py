"""Finite model theory workbench for modal and first-order logic."""

__version__ = "0.1.0"

from .errors import (ArityError, BudgetExceeded, KripkeLabError, ParseError, PositivityError,
                     ShapeKindError, StructureError, UnassignedVariable)
from .syntax import parse_fo, parse_modal, parse_program

__all__ = [
    "ArityError", "BudgetExceeded", "KripkeLabError", "ParseError", "PositivityError",
    "ShapeKindError", "StructureError", "UnassignedVariable", "__version__", "parse_fo",
    "parse_modal", "parse_program",
]
