"""Semantic properties of modal formulas, decided two ways.

Each property reduces to a validity that the tableau prover settles; the
brute-force oracle checks the defining condition on every model with at
most three worlds.

Run:  python3 demos/property_deciders.py
"""

from kripkelab.decide import oracle_property, semantic_property
from kripkelab.programs import ca_to_program
from kripkelab.syntax import parse_modal, shape_check

CASES = [
    ("monotone", "<a>p & [a](q -> p)", None),
    ("monotone", "[a]~p", None),
    ("preserved_induced_sub", "[a](p | [b]q)", None),
    ("preserved_induced_sub", "<a>p", None),
    ("completely_additive", "q & <a>(p & ~q)", None),
    ("completely_additive", "[a]p", None),
    ("n_continuous", "<a>p & <b>p", 1),
    ("n_continuous", "<a>p & <b>p", 2),
]

print(f"{'property':24} {'formula':22} n  tableau oracle")
for kind, text, n in CASES:
    phi = parse_modal(text)
    decided = semantic_property(kind, phi, "p", n)
    oracle = oracle_property(kind, phi, "p", n, max_worlds=3)
    print(f"{kind:24} {text:22} {n if n is not None else '-'}  {bool(decided)!s:7} {bool(oracle)!s}")

# formulas in the additive grammar compile to programs reaching a p-world
theta = parse_modal("q & <a>(p & ~q) | (p & [b]q)")
if shape_check("ca_grammar", theta, "p"):
    print()
    print("compiled", theta, "to", ca_to_program(theta, "p"))
