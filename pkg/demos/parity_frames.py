"""McKinsey's axiom on the parity frames, and the interpretation that builds them.

Run:  python3 demos/parity_frames.py
"""

from kripkelab.decide import frame_valid
from kripkelab.folog import apply_interpretation
from kripkelab.gallery import make_interpretation_I, make_parity_frames, modal_formula
from kripkelab.kripke import format_structure, model_check

mckinsey = modal_formula("mckinsey")
print("formula:", mckinsey)

for n in range(7):
    F, G = make_parity_frames(n)
    verdict = frame_valid(F, mckinsey)
    rebuilt = apply_interpretation(make_interpretation_I(), G)
    same = rebuilt.binary["R"] == F.rel("R")
    line = f"n={n}  worlds={F.n:2d}  valid={bool(verdict)!s:5}  interpretation rebuilds frame: {same}"
    if not verdict:
        assert not model_check(verdict.model, verdict.world, mckinsey)
        line += f"  (fails at {F.names[verdict.world]})"
    print(line)

# the first failing valuation on the smallest odd frame
verdict = frame_valid(make_parity_frames(1)[0], mckinsey)
print()
print(format_structure(verdict.model), end="")
