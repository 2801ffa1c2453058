"""Finite Kripke frames and models, model checking and frame operations."""

from .bisim import bisimilar, bisimilar_naive, bisimulation_classes, largest_bisimulation, quotient
from .io import (format_structure, parse_structure, parse_structures, read_structure,
                 read_structures, to_dot, write_structure)
from .operations import (disjoint_union, find_bounded_morphism_onto, gaifman_r_neighbourhood,
                         generated_subframe, is_bounded_morphism, is_model_bounded_morphism,
                         model_pair, reachable, restrict, structure_disjoint_union, tree_unravel,
                         ultrafilter_extension_finite, unravel_projection)
from .semantics import extension, globally_true, model_check
from .structures import FOStructure, Frame, Model, as_model, is_isomorphism

__all__ = [
    "FOStructure", "Frame", "Model", "as_model", "bisimilar", "bisimilar_naive",
    "bisimulation_classes", "disjoint_union", "extension", "find_bounded_morphism_onto",
    "format_structure", "gaifman_r_neighbourhood", "generated_subframe", "globally_true",
    "is_bounded_morphism", "is_isomorphism", "is_model_bounded_morphism", "largest_bisimulation",
    "model_check", "model_pair", "parse_structure", "parse_structures", "quotient",
    "reachable", "read_structure", "read_structures", "restrict", "structure_disjoint_union",
    "to_dot", "tree_unravel", "ultrafilter_extension_finite", "unravel_projection",
    "write_structure",
]
