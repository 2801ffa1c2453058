"""Named formulas, frame families, reductions and the definability check."""

from .families import (DjuReport, dju_preservation_test, make_An_Bn, make_dju_pair,
                       make_interpretation_I, make_parity_frames)
from .formulas import FO_TEXT, MODAL_TEXT, fo_formula, formula_constants, modal_formula, psi_phi
from .gt import DefinabilityReport, gt_definable_check, gt_dollar_formula, gt_model
from .reductions import (HornInstance, HornResult, SetSplittingInstance, format_horn,
                         format_set_splitting, horn_brute_force, horn_forward_chain,
                         horn_of_frame, horn_to_frame, horn_valuation_exists, hornsat_eval,
                         parse_horn, parse_set_splitting, set_splitting_to_frame,
                         solve_set_splitting)

__all__ = [
    "DefinabilityReport", "DjuReport", "FO_TEXT", "HornInstance", "HornResult", "MODAL_TEXT",
    "SetSplittingInstance", "dju_preservation_test", "fo_formula", "format_horn",
    "format_set_splitting", "formula_constants", "gt_definable_check", "gt_dollar_formula",
    "gt_model", "horn_brute_force", "horn_forward_chain", "horn_of_frame", "horn_to_frame",
    "horn_valuation_exists", "hornsat_eval", "make_An_Bn", "make_dju_pair",
    "make_interpretation_I", "make_parity_frames", "modal_formula", "parse_horn",
    "parse_set_splitting", "psi_phi", "set_splitting_to_frame", "solve_set_splitting",
]
