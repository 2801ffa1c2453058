"""Formula ASTs, parsers, printers and syntactic transformations."""

from . import fo, modal
from .modal import modal_depth, nnf, relativize as relativize_modal, substitute
from .fo import relativize as relativize_fo
from .parsing import parse_fo, parse_modal, parse_program
from .shapes import shape_check
from .translate import standard_translation


def to_text(phi):
    """Print a modal formula, FO formula or program in parseable form."""
    return str(phi)


__all__ = [
    "fo", "modal", "modal_depth", "nnf", "parse_fo", "parse_modal", "parse_program",
    "relativize_fo", "relativize_modal", "shape_check", "standard_translation",
    "substitute", "to_text",
]
