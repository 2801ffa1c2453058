"""Evaluation of first-order formulas (with counting, TC and LFP) on finite
structures, first-order interpretations, and the exists-bounded game."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ArityError, BudgetExceeded, PositivityError, UnassignedVariable
from .kripke.structures import FOStructure, Frame, Model, members
from .syntax import fo


def as_structure(A):
    if isinstance(A, FOStructure):
        return A
    if isinstance(A, (Frame, Model)):
        return A.to_structure()
    raise TypeError(f"not a structure: {A!r}")


class _Evaluator:
    def __init__(self, A):
        self.A = A
        self.tc_cache = {}
        self.lfp_cache = {}

    def atom(self, phi, env):
        rel, args = phi.rel, phi.args
        try:
            vals = [env[a] for a in args]
        except KeyError as e:
            raise UnassignedVariable(f"variable {e.args[0]} is unassigned") from None
        bound = env.get(rel)
        if isinstance(bound, frozenset):
            return vals[0] in bound
        A = self.A
        if len(vals) == 1:
            if rel in A.binary:
                raise ArityError(f"relation {rel} is binary in the structure")
            return vals[0] in A.unary.get(rel, ())
        if rel in A.unary:
            raise ArityError(f"relation {rel} is unary in the structure")
        return A.succ(rel)[vals[0]] >> vals[1] & 1 == 1

    def ev(self, phi, env):
        if isinstance(phi, fo.Atom):
            return self.atom(phi, env)
        if isinstance(phi, fo.Verum):
            return True
        if isinstance(phi, fo.Falsum):
            return False
        if isinstance(phi, fo.Equals):
            try:
                return env[phi.left] == env[phi.right]
            except KeyError as e:
                raise UnassignedVariable(f"variable {e.args[0]} is unassigned") from None
        if isinstance(phi, fo.Not):
            return not self.ev(phi.sub, env)
        if isinstance(phi, fo.And):
            return self.ev(phi.left, env) and self.ev(phi.right, env)
        if isinstance(phi, fo.Or):
            return self.ev(phi.left, env) or self.ev(phi.right, env)
        if isinstance(phi, fo.Implies):
            return not self.ev(phi.left, env) or self.ev(phi.right, env)
        if isinstance(phi, (fo.Exists, fo.Forall)):
            want = isinstance(phi, fo.Exists)
            saved = env.get(phi.var, _MISSING)
            try:
                for a in range(self.A.n):
                    env[phi.var] = a
                    if self.ev(phi.body, env) == want:
                        return want
                return not want
            finally:
                _restore(env, phi.var, saved)
        if isinstance(phi, (fo.CountGE, fo.CountLE)):
            return self.count(phi, env)
        if isinstance(phi, fo.TC):
            return self.tc(phi, env)
        if isinstance(phi, fo.LFP):
            return self.lfp(phi, env)
        raise TypeError(f"not an FO formula: {phi!r}")

    def count(self, phi, env):
        k = phi.k
        saved = env.get(phi.var, _MISSING)
        hits = 0
        try:
            for a in range(self.A.n):
                env[phi.var] = a
                if self.ev(phi.body, env):
                    hits += 1
                    if hits > k:
                        break
                    if hits >= k and isinstance(phi, fo.CountGE):
                        return True
        finally:
            _restore(env, phi.var, saved)
        if isinstance(phi, fo.CountGE):
            return hits >= k
        return hits <= k

    def _context(self, phi, env, bound):
        free = sorted(fo.free_vars(phi.body) - bound)
        sets = sorted(k for k, v in env.items() if isinstance(v, frozenset))
        try:
            return (phi,) + tuple((v, env[v]) for v in free) + tuple((s, env[s]) for s in sets)
        except KeyError as e:
            raise UnassignedVariable(f"variable {e.args[0]} is unassigned") from None

    def tc_relation(self, phi, env):
        """Successor bitmasks of the pair relation defined by the TC body."""
        key = self._context(phi, env, {phi.x, phi.y})
        hit = self.tc_cache.get(key)
        if hit is not None:
            return hit
        local = dict(env)
        succ = []
        for a in range(self.A.n):
            local[phi.x] = a
            mask = 0
            for b in range(self.A.n):
                local[phi.y] = b
                if self.ev(phi.body, local):
                    mask |= 1 << b
            succ.append(mask)
        self.tc_cache[key] = succ
        return succ

    def tc(self, phi, env):
        try:
            s, t = env[phi.s], env[phi.t]
        except KeyError as e:
            raise UnassignedVariable(f"variable {e.args[0]} is unassigned") from None
        succ = self.tc_relation(phi, env)
        # one or more steps
        seen = 0
        frontier = succ[s]
        while frontier:
            seen |= frontier
            nxt = 0
            for v in members(frontier):
                nxt |= succ[v]
            frontier = nxt & ~seen
        return bool(seen >> t & 1)

    def lfp_stages(self, phi, env):
        key = self._context(phi, env, {phi.x})
        hit = self.lfp_cache.get(key)
        if hit is not None:
            return hit
        local = dict(env)
        current = frozenset()
        stages = [current]
        for _ in range(self.A.n + 1):
            local[phi.setvar] = current
            nxt = set()
            for a in range(self.A.n):
                local[phi.x] = a
                if self.ev(phi.body, local):
                    nxt.add(a)
            nxt = frozenset(nxt)
            if nxt == current:
                break
            if not current <= nxt:
                raise PositivityError("LFP iteration is not increasing")
            current = nxt
            stages.append(current)
        self.lfp_cache[key] = stages
        return stages

    def lfp(self, phi, env):
        try:
            s = env[phi.s]
        except KeyError as e:
            raise UnassignedVariable(f"variable {e.args[0]} is unassigned") from None
        return s in self.lfp_stages(phi, env)[-1]


_MISSING = object()


def _restore(env, var, saved):
    if saved is _MISSING:
        env.pop(var, None)
    else:
        env[var] = saved


def _prepare(A, phi, assignment):
    A = as_structure(A)
    env = {}
    for k, v in (assignment or {}).items():
        if isinstance(v, str):
            v = A.index(v)
        elif isinstance(v, (set, frozenset, list, tuple)):
            v = frozenset(A.index(x) if isinstance(x, str) else x for x in v)
        env[k] = v
    missing = fo.free_vars(phi) - set(env)
    if missing:
        raise UnassignedVariable(f"free variables without a value: {sorted(missing)}")
    for node in fo.subformulas(phi):
        if isinstance(node, fo.LFP):
            fo.check_positive(node.setvar, node.body)
    return A, env


def fo_eval(A, phi, assignment=None):
    """Truth of ``phi`` in ``A`` under ``assignment`` (variable -> element id or name).

    Set variables may be assigned sets of elements.
    """
    A, env = _prepare(A, phi, assignment)
    return _Evaluator(A).ev(phi, env)


def lfp_stages(A, phi, assignment=None):
    """Kleene stages ``X_0 = {}, X_1, ...`` of an ``LFP`` node up to its fixpoint."""
    if not isinstance(phi, fo.LFP):
        raise TypeError("lfp_stages expects an LFP formula")
    A, env = _prepare(A, phi, assignment)
    return _Evaluator(A).lfp_stages(phi, env)


def definable_set(A, phi, x="x", assignment=None):
    """Elements ``a`` with ``A |= phi[x := a]``."""
    A, env = _prepare(as_structure(A), phi, dict(assignment or {}, **{x: 0}))
    ev = _Evaluator(A)
    out = []
    for a in range(A.n):
        env[x] = a
        if ev.ev(phi, env):
            out.append(a)
    return out


# interpretations ------------------------------------------------------------------------

@dataclass
class Interpretation:
    """Domain formula in ``x`` plus a defining formula for each output relation.

    Relations map a name to ``(formula, variables)`` where ``variables`` is
    ``("x",)`` or ``("x", "y")``.
    """

    domain: fo.Formula = fo.TRUE
    relations: dict = field(default_factory=dict)
    domain_var: str = "x"

    def __post_init__(self):
        extra = fo.free_vars(self.domain) - {self.domain_var}
        if extra:
            raise ValueError(f"domain formula has unexpected free variables {sorted(extra)}")
        for name, (phi, variables) in self.relations.items():
            if len(variables) not in (1, 2):
                raise ArityError(f"relation {name} must be unary or binary")
            extra = fo.free_vars(phi) - set(variables)
            if extra:
                raise ValueError(f"formula for {name} has unexpected free variables {sorted(extra)}")


def identity_interpretation(signature):
    rels = {}
    for name, arity in signature.items():
        variables = ("x",) if arity == 1 else ("x", "y")
        rels[name] = (fo.Atom(name, variables), variables)
    return Interpretation(fo.TRUE, rels)


def apply_interpretation(interp, A, name=None):
    A = as_structure(A)
    ev = _Evaluator(A)
    dom = [a for a in range(A.n) if ev.ev(interp.domain, {interp.domain_var: a})]
    pos = {a: i for i, a in enumerate(dom)}
    unary, binary = {}, {}
    for rel, (phi, variables) in interp.relations.items():
        if len(variables) == 1:
            unary[rel] = [pos[a] for a in dom if ev.ev(phi, {variables[0]: a})]
        else:
            x, y = variables
            binary[rel] = [(pos[a], pos[b]) for a in dom for b in dom if ev.ev(phi, {x: a, y: b})]
    return FOStructure([A.names[a] for a in dom], unary, binary, name or f"I({A.name})")


# exists-bounded game ------------------------------------------------------------------------

class Player(enum.Enum):
    SPOILER = "Spoiler"
    DUPLICATOR = "Duplicator"

    def __str__(self):
        return self.value


def is_partial_isomorphism(A, B, config):
    """Does the list of pairs ``(a_i, b_i)`` induce a partial isomorphism?"""
    unary = set(A.unary) | set(B.unary)
    binary = set(A.binary) | set(B.binary)
    for a, b in config:
        for P in unary:
            if (a in A.unary.get(P, ())) != (b in B.unary.get(P, ())):
                return False
    for a1, b1 in config:
        for a2, b2 in config:
            if (a1 == a2) != (b1 == b2):
                return False
            for R in binary:
                if ((a1, a2) in A.binary.get(R, ())) != ((b1, b2) in B.binary.get(R, ())):
                    return False
    return True


def _bounded_elements(A, chosen, both_directions):
    out = 0
    for R, pairs in A.binary.items():
        succ = A.succ(R)
        for a in chosen:
            out |= succ[a]
        if both_directions:
            for x, y in pairs:
                if y in chosen:
                    out |= 1 << x
    return members(out)


def ebounded_game_winner(A, B, rounds, start=None, both_directions=False, budget=2_000_000):
    """Winner of the ``rounds``-round exists-bounded game on ``(A, B)``.

    In each round Spoiler either picks any element of ``B`` or an element of
    ``A`` one relational step (forward, or either way with
    ``both_directions``) from an element already chosen in ``A``; Duplicator
    answers with any element of the other structure.  Duplicator wins iff
    every configuration reached is a partial isomorphism.  ``start`` pins an
    initial pair ``(a, b)`` (element ids or names).
    """
    A, B = as_structure(A), as_structure(B)
    config = ()
    if start is not None:
        a, b = start
        a = A.index(a) if isinstance(a, str) else a
        b = B.index(b) if isinstance(b, str) else b
        config = ((a, b),)
    memo = {}
    nodes = 0

    def duplicator_wins(config, left):
        nonlocal nodes
        key = (frozenset(config), left)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"game search exceeded {budget} positions")
        if not is_partial_isomorphism(A, B, config):
            memo[key] = False
            return False
        if left == 0:
            memo[key] = True
            return True
        result = True
        chosen_a = {a for a, _ in config}
        for b in range(B.n):
            if not any(duplicator_wins(config + ((a, b),), left - 1) for a in range(A.n)):
                result = False
                break
        if result:
            for a in _bounded_elements(A, chosen_a, both_directions):
                if not any(duplicator_wins(config + ((a, b),), left - 1) for b in range(B.n)):
                    result = False
                    break
        memo[key] = result
        return result

    return Player.DUPLICATOR if duplicator_wins(config, rounds) else Player.SPOILER
