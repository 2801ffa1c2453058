"""Standard translation of modal formulas into first-order logic.

A proposition ``p`` becomes the unary atom ``p(x)`` and a modality labelled
``a`` becomes the binary atom ``a(x,y)``, so a Kripke model and its FO
structure share relation names.  The universal modality translates into
unrestricted quantification.
"""

from . import fo, modal


def standard_translation(phi, x="x"):
    """FO formula with the single free variable ``x`` equivalent to ``phi``.

    Two variables are alternated (``x`` and one other), which is enough for
    the basic modal language.
    """
    other = "y" if x != "y" else "z"
    return _st(phi, x, other)


def _st(phi, x, y):
    if isinstance(phi, modal.Top):
        return fo.TRUE
    if isinstance(phi, modal.Bot):
        return fo.FALSE
    if isinstance(phi, modal.Prop):
        return fo.Atom(phi.name, (x,))
    if isinstance(phi, modal.Not):
        return fo.Not(_st(phi.sub, x, y))
    if isinstance(phi, modal.And):
        return fo.And(_st(phi.left, x, y), _st(phi.right, x, y))
    if isinstance(phi, modal.Or):
        return fo.Or(_st(phi.left, x, y), _st(phi.right, x, y))
    if isinstance(phi, modal.Implies):
        return fo.Implies(_st(phi.left, x, y), _st(phi.right, x, y))
    if isinstance(phi, modal.Iff):
        left, right = _st(phi.left, x, y), _st(phi.right, x, y)
        return fo.And(fo.Implies(left, right), fo.Implies(right, left))
    inner = _st(phi.sub, y, x)
    if phi.label == modal.UNIVERSAL:
        return (fo.Exists if isinstance(phi, modal.Dia) else fo.Forall)(y, inner)
    edge = fo.Atom(phi.label, (x, y))
    if isinstance(phi, modal.Dia):
        return fo.Exists(y, fo.And(edge, inner))
    return fo.Forall(y, fo.Implies(edge, inner))
