"""Named modal and first-order formulas.

Each constant is kept as source text and parsed on demand, so the printed
form of every constant is stable and can be compared against golden files.
"""

from functools import lru_cache

from ..syntax import fo
from ..syntax.parsing import parse_fo, parse_modal

MODAL_TEXT = {
    "mckinsey": "[R]<R>p -> <R>[R]p",
    "lob": "[R]([R]p -> p) -> [R]p",
    "tc_axioms": "([b]p <-> p & [a][b]p) & (p & [b](p -> [a]p) -> [b]p)",
    "phih": "<R>([R-]t & [R+]~t) & (<R+>t -> [R+]t)",
    # a valuation of t making this true at a world is a model of the
    # world's Horn formula
    "horn_cover": "[R](<R->~t | <R+>t)",
}

# the five conjuncts of the tree-shape formula in the free variable u
PHI_U_CONJUNCTS = (
    "R3(u,u)",
    "A v. (R3(u,v) -> E w. (R3(v,w) & R2(w,v)))",
    "A v w. (R3(u,v) & R3(v,w) -> R3(u,w))",
    "!(E v. R2(u,v))",
    "A v w. (R3(u,v) & (E>=2 s. (R2(v,s) & R3(u,s))) & R1(u,w) -> R4(w,v))",
)

# well-ordering axioms for (N, <, successor); Lt is the order, Suc the successor
THETA_CONJUNCTS = (
    "A x y z. (Lt(x,y) & Lt(y,z) -> Lt(x,z))",
    "A x y. (Lt(x,y) | Lt(y,x) | x = y)",
    "A x. E y. Lt(x,y)",
    "E x. A y. !Lt(y,x)",
    "(E x. Lt(x,x)) -> (E x y. (Lt(x,x) & Lt(x,y) & !Lt(y,y)))",
    "A x. E y. Suc(x,y)",
    "A x y. (Suc(x,y) -> Lt(x,y))",
    "A x y. (Suc(x,y) -> A z. (Lt(x,z) -> y = z | Lt(y,z)))",
)

HORN_CL = "LFP[T,x]{E u. (R(y,u) & R+(u,x) & A v. (R-(u,v) -> T(v)))}(z)"

FO_TEXT = {
    "phi_u": " & ".join(f"({c})" for c in PHI_U_CONJUNCTS),
    "dju_psi": "(E x. P(x,x)) & ((E<=1 x. Q(x,x)) | (E>=2 x. P(x,x)))",
    "theta": " & ".join(f"({c})" for c in THETA_CONJUNCTS),
    "horn_cl": HORN_CL,
    "horn_sat": ("A x. (R(y,x) -> (E z. (R-(x,z) & !" + HORN_CL + "))"
                 " | (E z. (R+(x,z) & " + HORN_CL + ")))"),
    "func_rplus": "A x y z. (R+(x,y) & R+(x,z) -> y = z)",
}
FO_TEXT["psi_x"] = f"E u. (R1(u,x) & {FO_TEXT['phi_u']})"
FO_TEXT["chi"] = f"A x. ((E y. R4(x,y)) -> {FO_TEXT['psi_x']})"
FO_TEXT["no_horn_sat"] = f"(A y. !({FO_TEXT['horn_sat']})) & ({FO_TEXT['func_rplus']})"

SIGNATURES = {
    "phi_u": {"R1": 2, "R2": 2, "R3": 2, "R4": 2},
    "psi_x": {"R1": 2, "R2": 2, "R3": 2, "R4": 2},
    "chi": {"R1": 2, "R2": 2, "R3": 2, "R4": 2},
    "dju_psi": {"P": 2, "Q": 2},
    "theta": {"Lt": 2, "Suc": 2},
    "horn_cl": {"R": 2, "R+": 2, "R-": 2},
    "horn_sat": {"R": 2, "R+": 2, "R-": 2},
    "func_rplus": {"R+": 2},
    "no_horn_sat": {"R": 2, "R+": 2, "R-": 2},
}


@lru_cache(maxsize=None)
def modal_formula(name):
    return parse_modal(MODAL_TEXT[name])


@lru_cache(maxsize=None)
def fo_formula(name):
    return parse_fo(FO_TEXT[name], SIGNATURES.get(name))


def formula_constants():
    """Every named formula, keyed by name."""
    table = {name: modal_formula(name) for name in MODAL_TEXT}
    table.update({name: fo_formula(name) for name in FO_TEXT})
    return table


def psi_phi(phi):
    """Wrap ``phi`` so the result is preserved under disjoint unions.

    On structures with exactly one P-reflexive element the result is
    equivalent to ``phi``.
    """
    loop = fo.Atom("P", ("x", "x"))
    return fo.And(fo.Exists("x", loop), fo.Or(phi, fo.CountGE(2, "x", loop)))
