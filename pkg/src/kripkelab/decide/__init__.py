"""Validity, satisfiability, frame validity and semantic-property deciders."""

from .framevalid import budget_bits, frame_valid, frames_valid
from .properties import (KINDS, confirm_validity_witness, oracle_property, reduction_validities,
                         semantic_property, violation_in_model)
from .tableau import k_sat, k_valid
from .verdict import Verdict

__all__ = [
    "KINDS", "Verdict", "budget_bits", "confirm_validity_witness", "frame_valid", "frames_valid",
    "k_sat", "k_valid", "oracle_property", "reduction_validities", "semantic_property",
    "violation_in_model",
]
