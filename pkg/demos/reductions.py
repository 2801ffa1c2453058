"""Set Splitting and Horn satisfiability encoded as frame validity.

Run:  python3 demos/reductions.py
"""

from kripkelab.decide import frame_valid
from kripkelab.gallery import (SetSplittingInstance, fo_formula, horn_forward_chain, horn_to_frame,
                               hornsat_eval, modal_formula, parse_horn, set_splitting_to_frame,
                               solve_set_splitting)
from kripkelab.folog import fo_eval

mckinsey = modal_formula("mckinsey")
for ground, family in [(("1", "2", "3"), [("1", "2"), ("2", "3"), ("1", "3")]),
                       (("1", "2", "3"), [("1", "2"), ("2", "3")]),
                       (("1",), [("1",)])]:
    inst = SetSplittingInstance(ground, family)
    split = solve_set_splitting(inst)
    valid = frame_valid(set_splitting_to_frame(inst), mckinsey)
    print(f"family {[sorted(f) for f in inst.family]}: splitting {split}, frame validates McKinsey: {bool(valid)}")

print()
phih = modal_formula("phih")
for text in ["+P1\n-P1 +P2\n-P2\n", "+P1\n-P1 +P2\n-P2 -P3\n"]:
    alpha = parse_horn(text)
    F = horn_to_frame(alpha)
    chained = horn_forward_chain(alpha)
    lfp = [hornsat_eval(F, w) for w in F.worlds]
    print(" & ".join(text.strip().splitlines()))
    print(f"  forward chaining sat: {chained.sat}; frame validates phi_h: {bool(frame_valid(F, phih))}")
    print(f"  fixed-point HornSat per world: {lfp}")
    print(f"  no world Horn-satisfiable (first-order): {fo_eval(F, fo_formula('no_horn_sat'))}")
