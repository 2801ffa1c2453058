"""Multi-modal formula AST and purely syntactic transformations.

Modalities carry a label; the reserved label ``U`` is the universal modality.
Implication and bi-implication are kept in the tree and removed by :func:`nnf`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from ._node import Node

UNIVERSAL = "U"
DEFAULT_LABEL = "R"


class Formula(Node):
    """Base class of modal formulas."""

    __slots__ = ()

    def __str__(self):
        return to_text(self)

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True, eq=False)
class Top(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Prop(Formula):
    name: str


@dataclass(frozen=True, eq=False)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Dia(Formula):
    label: str
    sub: Formula


@dataclass(frozen=True, eq=False)
class Box(Formula):
    label: str
    sub: Formula


TOP = Top()
BOT = Bot()

BINARY = (And, Or, Implies, Iff)
MODAL = (Dia, Box)


def conj(formulas):
    """Left-nested conjunction; empty input gives ``true``."""
    formulas = list(formulas)
    if not formulas:
        return TOP
    return reduce(And, formulas)


def disj(formulas):
    """Left-nested disjunction; empty input gives ``false``."""
    formulas = list(formulas)
    if not formulas:
        return BOT
    return reduce(Or, formulas)


def dia(sub, label=DEFAULT_LABEL):
    return Dia(label, sub)


def box(sub, label=DEFAULT_LABEL):
    return Box(label, sub)


def children(phi):
    if isinstance(phi, (Top, Bot, Prop)):
        return ()
    if isinstance(phi, (Not, Dia, Box)):
        return (phi.sub,)
    return (phi.left, phi.right)


def subformulas(phi):
    """All subformula occurrences, pre-order."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def props(phi):
    return {node.name for node in subformulas(phi) if isinstance(node, Prop)}


def labels(phi):
    return {node.label for node in subformulas(phi) if isinstance(node, MODAL)}


def size(phi):
    return sum(1 for _ in subformulas(phi))


def modal_depth(phi):
    if isinstance(phi, (Top, Bot, Prop)):
        return 0
    if isinstance(phi, Not):
        return modal_depth(phi.sub)
    if isinstance(phi, MODAL):
        return 1 + modal_depth(phi.sub)
    return max(modal_depth(phi.left), modal_depth(phi.right))


def _rebuild(phi, kids):
    if isinstance(phi, Not):
        return Not(kids[0])
    if isinstance(phi, MODAL):
        return type(phi)(phi.label, kids[0])
    return type(phi)(kids[0], kids[1])


def substitute(phi, p, psi):
    """Replace every occurrence of the proposition ``p`` by ``psi``."""
    if isinstance(phi, Prop):
        return psi if phi.name == p else phi
    if isinstance(phi, (Top, Bot)):
        return phi
    return _rebuild(phi, [substitute(c, p, psi) for c in children(phi)])


def simplify_connectives(phi):
    """Rewrite ``->`` and ``<->`` in terms of negation, conjunction, disjunction."""
    if isinstance(phi, (Top, Bot, Prop)):
        return phi
    if isinstance(phi, Implies):
        return Or(Not(simplify_connectives(phi.left)), simplify_connectives(phi.right))
    if isinstance(phi, Iff):
        left = simplify_connectives(phi.left)
        right = simplify_connectives(phi.right)
        return And(Or(Not(left), right), Or(Not(right), left))
    return _rebuild(phi, [simplify_connectives(c) for c in children(phi)])


def nnf(phi):
    """Negation normal form.

    The result uses only constants, literals, conjunction, disjunction and
    modal operators.  Operand order and constants are kept as they are, so
    ``p & true`` stays ``p & true``.
    """
    return _nnf(phi, True)


def _nnf(phi, positive):
    if isinstance(phi, Top):
        return TOP if positive else BOT
    if isinstance(phi, Bot):
        return BOT if positive else TOP
    if isinstance(phi, Prop):
        return phi if positive else Not(phi)
    if isinstance(phi, Not):
        return _nnf(phi.sub, not positive)
    if isinstance(phi, And):
        cls = And if positive else Or
        return cls(_nnf(phi.left, positive), _nnf(phi.right, positive))
    if isinstance(phi, Or):
        cls = Or if positive else And
        return cls(_nnf(phi.left, positive), _nnf(phi.right, positive))
    if isinstance(phi, Implies):
        if positive:
            return Or(_nnf(phi.left, False), _nnf(phi.right, True))
        return And(_nnf(phi.left, True), _nnf(phi.right, False))
    if isinstance(phi, Iff):
        if positive:
            return And(Or(_nnf(phi.left, False), _nnf(phi.right, True)),
                       Or(_nnf(phi.right, False), _nnf(phi.left, True)))
        return Or(And(_nnf(phi.left, True), _nnf(phi.right, False)),
                  And(_nnf(phi.right, True), _nnf(phi.left, False)))
    if isinstance(phi, Dia):
        cls = Dia if positive else Box
        return cls(phi.label, _nnf(phi.sub, positive))
    if isinstance(phi, Box):
        cls = Box if positive else Dia
        return cls(phi.label, _nnf(phi.sub, positive))
    raise TypeError(f"not a modal formula: {phi!r}")


def is_nnf(phi):
    for node in subformulas(phi):
        if isinstance(node, (Implies, Iff)):
            return False
        if isinstance(node, Not) and not isinstance(node.sub, Prop):
            return False
    return True


def relativize(phi, p):
    """Relativize every modality to the proposition ``p``.

    ``<a>F`` becomes ``<a>(p & F')`` and ``[a]F`` becomes ``[a](p -> F')``.
    Implication and bi-implication are eliminated first so that no modality
    hides under a connective with mixed polarity.
    """
    return _relativize(simplify_connectives(phi), p)


def _relativize(phi, p):
    if isinstance(phi, (Top, Bot, Prop)):
        return phi
    if isinstance(phi, Dia):
        return Dia(phi.label, And(Prop(p), _relativize(phi.sub, p)))
    if isinstance(phi, Box):
        return Box(phi.label, Implies(Prop(p), _relativize(phi.sub, p)))
    return _rebuild(phi, [_relativize(c, p) for c in children(phi)])


def fresh_prop(base, taken):
    """A proposition name in the reserved ``#`` namespace, absent from ``taken``.

    The parser treats ``#`` as a comment marker, so such names can never
    collide with user-written propositions.
    """
    i = 1
    while f"{base}#{i}" in taken:
        i += 1
    return f"{base}#{i}"


# printing -----------------------------------------------------------------

_BINARY_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def to_text(phi, top=True):
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bot):
        return "false"
    if isinstance(phi, Prop):
        return phi.name
    if isinstance(phi, Not):
        return "~" + to_text(phi.sub, top=False)
    if isinstance(phi, Dia):
        return f"<{phi.label}>" + to_text(phi.sub, top=False)
    if isinstance(phi, Box):
        return f"[{phi.label}]" + to_text(phi.sub, top=False)
    op = _BINARY_OPS[type(phi)]
    body = f"{to_text(phi.left, top=False)} {op} {to_text(phi.right, top=False)}"
    return body if top else f"({body})"
