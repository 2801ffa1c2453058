"""Bounded modal definability of frame classes through characteristic formulas.

Run:  python3 demos/definability.py
"""

from kripkelab.gallery import gt_definable_check, gt_dollar_formula
from kripkelab.kripke import Frame


def reflexive_point(F):
    return any(F.succ("R")[w] >> w & 1 for w in F.worlds)


def irreflexive(F):
    return not reflexive_point(F)


print("characteristic formula of the two-cycle:")
print(" ", gt_dollar_formula(Frame(["u", "v"], {"R": [(0, 1), (1, 0)]})))
print()
for name, member in [("has a reflexive point", reflexive_point), ("irreflexive", irreflexive)]:
    print(name)
    for line in gt_definable_check(member, max_size=3).summary().splitlines():
        print("  " + line)
