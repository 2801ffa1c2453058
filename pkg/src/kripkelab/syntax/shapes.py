"""Syntactic recognizers for the formula classes used by the preservation results.

Every recognizer decides literal membership in a grammar; none of them
looks for an equivalent formula of the right shape.  The modal recognizers
first put the formula in negation normal form (a purely syntactic step that
keeps operand order and constants).
"""

from ..errors import ShapeKindError
from . import fo, modal

MODAL_KINDS = ("positive", "box_only_nnf", "ca_grammar", "continuous")
FO_KINDS = ("p_sentence", "exists_bounded", "two_way_restricted")


def shape_check(kind, phi, p=None):
    """Return True iff ``phi`` is literally generated by the grammar ``kind``."""
    if kind in MODAL_KINDS:
        if not isinstance(phi, modal.Formula):
            raise ShapeKindError(f"{kind} expects a modal formula")
        if kind != "box_only_nnf" and p is None:
            raise ShapeKindError(f"{kind} needs a proposition")
        normal = modal.nnf(phi)
        if kind == "positive":
            return is_positive(normal, p)
        if kind == "box_only_nnf":
            return not any(isinstance(n, modal.Dia) for n in modal.subformulas(normal))
        if kind == "ca_grammar":
            return is_ca_disjunction(normal, p)
        return is_continuous_shape(normal, p)
    if kind in FO_KINDS:
        if not isinstance(phi, fo.Formula):
            raise ShapeKindError(f"{kind} expects a first-order formula")
        if kind == "p_sentence":
            return fo.is_sentence(phi) and is_p_formula(phi)
        if kind == "exists_bounded":
            return is_exists_bounded(phi)
        return is_two_way_restricted(phi)
    raise ShapeKindError(f"unknown shape kind {kind!r}")


# modal --------------------------------------------------------------------

def is_positive(normal, p):
    return not any(isinstance(n, modal.Not) and n.sub == modal.Prop(p)
                   for n in modal.subformulas(normal))


def _p_free(phi, p):
    return p not in modal.props(phi)


def disjuncts(phi):
    if isinstance(phi, modal.Or):
        return disjuncts(phi.left) + disjuncts(phi.right)
    return [phi]


def is_ca_term(theta, p):
    """``theta := p & F | F & <a>theta`` with every ``F`` free of ``p``."""
    if not isinstance(theta, modal.And):
        return False
    left, right = theta.left, theta.right
    if left == modal.Prop(p) and _p_free(right, p):
        return True
    return (isinstance(right, modal.Dia) and right.label != modal.UNIVERSAL
            and _p_free(left, p) and is_ca_term(right.sub, p))


def is_ca_disjunction(normal, p):
    return all(is_ca_term(t, p) for t in disjuncts(normal))


def is_continuous_shape(normal, p):
    def ok(phi, under_box):
        if isinstance(phi, modal.Prop):
            return phi.name != p or not under_box
        if isinstance(phi, (modal.Top, modal.Bot)):
            return True
        if isinstance(phi, modal.Not):
            return phi.sub != modal.Prop(p)
        if isinstance(phi, modal.Box):
            return ok(phi.sub, True)
        if isinstance(phi, modal.Dia):
            return ok(phi.sub, under_box)
        return ok(phi.left, under_box) and ok(phi.right, under_box)
    return ok(normal, False)


# first-order --------------------------------------------------------------

def _is_atomic(phi):
    return isinstance(phi, (fo.Atom, fo.Equals, fo.Verum, fo.Falsum))


def _is_literal(phi):
    return _is_atomic(phi) or (isinstance(phi, fo.Not) and _is_atomic(phi.sub))


def _guard_target(guard, x, two_way):
    """True iff ``guard`` is ``R(y,x)`` (or ``R(x,y)`` when two_way) with ``y != x``."""
    if not isinstance(guard, fo.Atom) or len(guard.args) != 2:
        return False
    a, b = guard.args
    if b == x and a != x:
        return True
    return two_way and a == x and b != x


def _conjuncts(phi):
    if isinstance(phi, fo.And):
        return _conjuncts(phi.left) + _conjuncts(phi.right)
    return [phi]


def _bounded_exists(phi, two_way, inner):
    parts = _conjuncts(phi.body)
    for i, part in enumerate(parts):
        if _guard_target(part, phi.var, two_way):
            rest = parts[:i] + parts[i + 1:]
            return all(inner(r) for r in rest)
    return False


def _bounded_forall(phi, two_way, inner):
    body = phi.body
    return (isinstance(body, fo.Implies) and _guard_target(body.left, phi.var, two_way)
            and inner(body.right))


def is_exists_bounded(phi):
    """Literals, ``&``, ``|``, bounded ``E x.(R(y,x) & ...)``, bounded
    ``A x.(R(y,x) -> ...)`` and unrestricted universal quantification."""
    if _is_literal(phi):
        return True
    if isinstance(phi, (fo.And, fo.Or)):
        return is_exists_bounded(phi.left) and is_exists_bounded(phi.right)
    if isinstance(phi, fo.Implies):
        # an atomic antecedent is sugar for a negated literal in a disjunction
        return _is_atomic(phi.left) and is_exists_bounded(phi.right)
    if isinstance(phi, fo.Exists):
        return _bounded_exists(phi, False, is_exists_bounded)
    if isinstance(phi, fo.Forall):
        return is_exists_bounded(phi.body)
    return False


def is_two_way_restricted(phi):
    """Any Boolean structure, with every quantifier guarded by one binary atom
    linking the bound variable to another variable in either direction."""
    if _is_atomic(phi):
        return True
    if isinstance(phi, fo.Not):
        return is_two_way_restricted(phi.sub)
    if isinstance(phi, fo.CONNECTIVES):
        return is_two_way_restricted(phi.left) and is_two_way_restricted(phi.right)
    if isinstance(phi, fo.Exists):
        return _bounded_exists(phi, True, is_two_way_restricted)
    if isinstance(phi, fo.Forall):
        return _bounded_forall(phi, True, is_two_way_restricted)
    return False


def is_p_formula(phi):
    """Positive formulas with ``E``, ``A`` and bounded ``A x.(R(y,x) -> ...)``."""
    if _is_atomic(phi):
        return True
    if isinstance(phi, (fo.And, fo.Or)):
        return is_p_formula(phi.left) and is_p_formula(phi.right)
    if isinstance(phi, fo.Exists):
        return is_p_formula(phi.body)
    if isinstance(phi, fo.Forall):
        if _bounded_forall(phi, False, is_p_formula):
            return True
        return is_p_formula(phi.body)
    return False
