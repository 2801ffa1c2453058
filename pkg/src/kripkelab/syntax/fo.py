"""First-order formulas over unary/binary relational signatures.

Besides the usual connectives and quantifiers the AST has counting
quantifiers and the monadic transitive-closure and least-fixed-point
operators.  Set variables bound by ``LFP`` occur as unary atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from ..errors import PositivityError
from ._node import Node


class Formula(Node):
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=False)
class Verum(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Falsum(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    rel: str
    args: tuple


@dataclass(frozen=True, eq=False)
class Equals(Formula):
    left: str
    right: str


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
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, eq=False)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, eq=False)
class CountGE(Formula):
    """At least ``k`` elements satisfy ``body``."""

    k: int
    var: str
    body: Formula


@dataclass(frozen=True, eq=False)
class CountLE(Formula):
    """At most ``k`` elements satisfy ``body``."""

    k: int
    var: str
    body: Formula


@dataclass(frozen=True, eq=False)
class TC(Formula):
    """``[TC_{x,y} body](s, t)``: ``t`` is reachable from ``s`` in one or more steps."""

    x: str
    y: str
    body: Formula
    s: str
    t: str


@dataclass(frozen=True, eq=False)
class LFP(Formula):
    """``[LFP_{X,x} body](s)``: ``s`` belongs to the least fixed point."""

    setvar: str
    x: str
    body: Formula
    s: str


TRUE = Verum()
FALSE = Falsum()

QUANTIFIERS = (Forall, Exists)
COUNTING = (CountGE, CountLE)
BINDERS = (Forall, Exists, CountGE, CountLE)
CONNECTIVES = (And, Or, Implies)


def atom(rel, *args):
    return Atom(rel, tuple(args))


def conj(formulas):
    formulas = list(formulas)
    return reduce(And, formulas) if formulas else TRUE


def disj(formulas):
    formulas = list(formulas)
    return reduce(Or, formulas) if formulas else FALSE


def forall(variables, body):
    for v in reversed(variables.split() if isinstance(variables, str) else variables):
        body = Forall(v, body)
    return body


def exists(variables, body):
    for v in reversed(variables.split() if isinstance(variables, str) else variables):
        body = Exists(v, body)
    return body


def children(phi):
    if isinstance(phi, (Verum, Falsum, Atom, Equals)):
        return ()
    if isinstance(phi, Not):
        return (phi.sub,)
    if isinstance(phi, CONNECTIVES):
        return (phi.left, phi.right)
    return (phi.body,)


def subformulas(phi):
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def size(phi):
    return sum(1 for _ in subformulas(phi))


def free_vars(phi):
    """Free individual variables."""
    if isinstance(phi, (Verum, Falsum)):
        return set()
    if isinstance(phi, Atom):
        return set(phi.args)
    if isinstance(phi, Equals):
        return {phi.left, phi.right}
    if isinstance(phi, Not):
        return free_vars(phi.sub)
    if isinstance(phi, CONNECTIVES):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, BINDERS):
        return free_vars(phi.body) - {phi.var}
    if isinstance(phi, TC):
        return (free_vars(phi.body) - {phi.x, phi.y}) | {phi.s, phi.t}
    if isinstance(phi, LFP):
        return (free_vars(phi.body) - {phi.x}) | {phi.s}
    raise TypeError(f"not an FO formula: {phi!r}")


def relation_arities(phi, bound_sets=frozenset()):
    """Map each relation symbol (excluding bound set variables) to its arities."""
    out = {}
    for node, sets in _walk_with_sets(phi, bound_sets):
        if isinstance(node, Atom) and node.rel not in sets:
            out.setdefault(node.rel, set()).add(len(node.args))
    return out


def _walk_with_sets(phi, sets):
    yield phi, sets
    if isinstance(phi, LFP):
        yield from _walk_with_sets(phi.body, sets | {phi.setvar})
        return
    for child in children(phi):
        yield from _walk_with_sets(child, sets)


def is_sentence(phi):
    return not free_vars(phi)


def check_positive(setvar, body):
    """Raise :class:`PositivityError` unless ``setvar`` occurs only positively.

    Counting quantifiers of the form "at most k" reverse polarity, since they
    are antitone in their body.
    """
    bad = _negative_occurrence(setvar, body, True)
    if bad:
        raise PositivityError(f"set variable {setvar} occurs negatively in LFP body")


def _negative_occurrence(setvar, phi, positive):
    if isinstance(phi, Atom):
        return phi.rel == setvar and not positive
    if isinstance(phi, (Verum, Falsum, Equals)):
        return False
    if isinstance(phi, Not):
        return _negative_occurrence(setvar, phi.sub, not positive)
    if isinstance(phi, Implies):
        return (_negative_occurrence(setvar, phi.left, not positive)
                or _negative_occurrence(setvar, phi.right, positive))
    if isinstance(phi, (And, Or)):
        return (_negative_occurrence(setvar, phi.left, positive)
                or _negative_occurrence(setvar, phi.right, positive))
    if isinstance(phi, CountLE):
        return _negative_occurrence(setvar, phi.body, not positive)
    if isinstance(phi, LFP) and phi.setvar == setvar:
        return False
    return _negative_occurrence(setvar, phi.body, positive)


def map_atoms(phi, fn):
    """Rebuild ``phi`` with every ``Atom`` node replaced by ``fn(atom)``.

    Set-variable atoms inside an ``LFP`` are left alone.
    """
    return _map_atoms(phi, fn, frozenset())


def _map_atoms(phi, fn, sets):
    if isinstance(phi, Atom):
        return phi if phi.rel in sets else fn(phi)
    if isinstance(phi, (Verum, Falsum, Equals)):
        return phi
    if isinstance(phi, Not):
        return Not(_map_atoms(phi.sub, fn, sets))
    if isinstance(phi, CONNECTIVES):
        return type(phi)(_map_atoms(phi.left, fn, sets), _map_atoms(phi.right, fn, sets))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.var, _map_atoms(phi.body, fn, sets))
    if isinstance(phi, COUNTING):
        return type(phi)(phi.k, phi.var, _map_atoms(phi.body, fn, sets))
    if isinstance(phi, TC):
        return TC(phi.x, phi.y, _map_atoms(phi.body, fn, sets), phi.s, phi.t)
    if isinstance(phi, LFP):
        return LFP(phi.setvar, phi.x, _map_atoms(phi.body, fn, sets | {phi.setvar}), phi.s)
    raise TypeError(f"not an FO formula: {phi!r}")


def relativize(phi, pred):
    """Relativize all quantifiers (and TC/LFP ranges) to the unary predicate ``pred``."""
    if isinstance(phi, (Verum, Falsum, Atom, Equals)):
        return phi
    if isinstance(phi, Not):
        return Not(relativize(phi.sub, pred))
    if isinstance(phi, CONNECTIVES):
        return type(phi)(relativize(phi.left, pred), relativize(phi.right, pred))
    if isinstance(phi, Forall):
        return Forall(phi.var, Implies(atom(pred, phi.var), relativize(phi.body, pred)))
    if isinstance(phi, Exists):
        return Exists(phi.var, And(atom(pred, phi.var), relativize(phi.body, pred)))
    if isinstance(phi, COUNTING):
        return type(phi)(phi.k, phi.var, And(atom(pred, phi.var), relativize(phi.body, pred)))
    if isinstance(phi, TC):
        guard = And(atom(pred, phi.x), atom(pred, phi.y))
        return TC(phi.x, phi.y, And(guard, relativize(phi.body, pred)), phi.s, phi.t)
    if isinstance(phi, LFP):
        return LFP(phi.setvar, phi.x, And(atom(pred, phi.x), relativize(phi.body, pred)), phi.s)
    raise TypeError(f"not an FO formula: {phi!r}")


def quantifier_rank(phi):
    if isinstance(phi, (Verum, Falsum, Atom, Equals)):
        return 0
    if isinstance(phi, Not):
        return quantifier_rank(phi.sub)
    if isinstance(phi, CONNECTIVES):
        return max(quantifier_rank(phi.left), quantifier_rank(phi.right))
    if isinstance(phi, TC):
        return 2 + quantifier_rank(phi.body)
    return 1 + quantifier_rank(phi.body)


# printing -----------------------------------------------------------------

_OPS = {And: "&", Or: "|", Implies: "->"}


def to_text(phi, top=True):
    if isinstance(phi, Verum):
        return "true"
    if isinstance(phi, Falsum):
        return "false"
    if isinstance(phi, Atom):
        return f"{phi.rel}({','.join(phi.args)})"
    if isinstance(phi, Equals):
        return f"{phi.left}={phi.right}"
    if isinstance(phi, Not):
        return "!" + to_text(phi.sub, top=False)
    if isinstance(phi, CONNECTIVES):
        body = f"{to_text(phi.left, top=False)} {_OPS[type(phi)]} {to_text(phi.right, top=False)}"
        return body if top else f"({body})"
    if isinstance(phi, TC):
        return f"TC[{phi.x},{phi.y}]{{{to_text(phi.body)}}}({phi.s},{phi.t})"
    if isinstance(phi, LFP):
        return f"LFP[{phi.setvar},{phi.x}]{{{to_text(phi.body)}}}({phi.s})"
    if isinstance(phi, Forall):
        head = f"A {phi.var}."
    elif isinstance(phi, Exists):
        head = f"E {phi.var}."
    elif isinstance(phi, CountGE):
        head = f"E>={phi.k} {phi.var}."
    else:
        head = f"E<={phi.k} {phi.var}."
    body = f"{head} {to_text(phi.body)}"
    return body if top else f"({body})"
