"""Modal programs: tests, atomic relations, composition, union and dynamic negation.

A program denotes a binary relation on the worlds of a model.  Tests carry
an arbitrary modal formula, not just a proposition, because the compiler
for completely additive formulas emits them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import count

import numpy as np

from .errors import ShapeKindError
from .kripke.batch import evaluate
from .kripke.bisim import largest_bisimulation, quotient
from .kripke.enumerate import all_frames
from .kripke.semantics import extension
from .kripke.structures import Model, as_model, members
from .kripke.operations import tree_unravel
from .kripke.enumerate import random_model
from .syntax import fo, modal
from .syntax._node import Node
from .syntax.shapes import disjuncts, is_ca_disjunction
from .syntax.translate import standard_translation


class Program(Node):
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=False)
class Test(Program):
    formula: modal.Formula


@dataclass(frozen=True, eq=False)
class Atom(Program):
    label: str


@dataclass(frozen=True, eq=False)
class Comp(Program):
    left: Program
    right: Program


@dataclass(frozen=True, eq=False)
class Union(Program):
    left: Program
    right: Program


@dataclass(frozen=True, eq=False)
class DynNeg(Program):
    sub: Program


def children(prog):
    if isinstance(prog, (Test, Atom)):
        return ()
    if isinstance(prog, DynNeg):
        return (prog.sub,)
    return (prog.left, prog.right)


def size(prog):
    return 1 + sum(size(c) for c in children(prog))


def prog_props(prog):
    if isinstance(prog, Test):
        return modal.props(prog.formula)
    out = set()
    for c in children(prog):
        out |= prog_props(c)
    return out


def prog_labels(prog):
    if isinstance(prog, Atom):
        return {prog.label}
    if isinstance(prog, Test):
        return modal.labels(prog.formula)
    out = set()
    for c in children(prog):
        out |= prog_labels(c)
    return out


def to_text(prog, top=True):
    if isinstance(prog, Test):
        return modal.to_text(prog.formula, top=False) + "?"
    if isinstance(prog, Atom):
        return prog.label
    if isinstance(prog, DynNeg):
        inner = prog.sub
        text = to_text(inner, top=False)
        # ~p? would read back as a test of ~p
        if isinstance(inner, Test):
            text = f"({text})"
        return "~" + text
    op = ";" if isinstance(prog, Comp) else "|"
    # both operators parse left-associatively and ';' binds tighter than '|'
    union = isinstance(prog, Union)
    left = to_text(prog.left, top=type(prog.left) is type(prog) or (union and isinstance(prog.left, Comp)))
    right = to_text(prog.right, top=union and isinstance(prog.right, Comp))
    body = f"{left}{op}{right}"
    return body if top else f"({body})"


# semantics ---------------------------------------------------------------------------

def _succ(M, prog):
    n = M.n
    if isinstance(prog, Test):
        ext = extension(M, prog.formula)
        return [(1 << w) if ext >> w & 1 else 0 for w in range(n)]
    if isinstance(prog, Atom):
        return list(M.succ(prog.label))
    if isinstance(prog, Comp):
        first, second = _succ(M, prog.left), _succ(M, prog.right)
        out = []
        for w in range(n):
            acc = 0
            for v in members(first[w]):
                acc |= second[v]
            out.append(acc)
        return out
    if isinstance(prog, Union):
        return [a | b for a, b in zip(_succ(M, prog.left), _succ(M, prog.right))]
    if isinstance(prog, DynNeg):
        inner = _succ(M, prog.sub)
        return [0 if inner[w] else (1 << w) for w in range(n)]
    raise TypeError(f"not a program: {prog!r}")


def prog_eval(M, prog):
    """The relation denoted by ``prog`` in ``M``, as a frozen set of world pairs."""
    M = as_model(M)
    return frozenset((w, v) for w, s in enumerate(_succ(M, prog)) for v in members(s))


def prog_successors(M, prog):
    """Per-world successor bitmasks of the relation denoted by ``prog``."""
    return _succ(as_model(M), prog)


def prog_eval_batch(prog, ctx, cache=None):
    """Relation of ``prog`` as a bool array ``(..., n, n)`` over a batch context."""
    if cache is None:
        cache = {}
    n = ctx.n
    eye = np.eye(n, dtype=bool)
    if isinstance(prog, Test):
        s = evaluate(prog.formula, ctx, cache)
        return eye & s[..., None, :]
    if isinstance(prog, Atom):
        rt = ctx.rel_t.get(prog.label)
        if rt is None:
            return np.zeros(ctx.batch_shape + (n, n), dtype=bool)
        return np.swapaxes(rt, -1, -2) > 0
    if isinstance(prog, Comp):
        a = prog_eval_batch(prog.left, ctx, cache).astype(np.float32)
        b = prog_eval_batch(prog.right, ctx, cache).astype(np.float32)
        return np.matmul(a, b) > 0
    if isinstance(prog, Union):
        return prog_eval_batch(prog.left, ctx, cache) | prog_eval_batch(prog.right, ctx, cache)
    if isinstance(prog, DynNeg):
        inner = prog_eval_batch(prog.sub, ctx, cache)
        return eye & ~inner.any(axis=-1)[..., None, :]
    raise TypeError(f"not a program: {prog!r}")


# standard translation -------------------------------------------------------------------

def prog_st(prog, x="x", y="y"):
    """FO formula with free variables ``x`` and ``y`` defining the relation of ``prog``."""
    fresh = (f"z{i}" for i in count(1))
    return _st(prog, x, y, fresh)


def _st(prog, x, y, fresh):
    if isinstance(prog, Test):
        return fo.And(fo.Equals(x, y), standard_translation(prog.formula, x))
    if isinstance(prog, Atom):
        return fo.Atom(prog.label, (x, y))
    if isinstance(prog, Comp):
        z = next(fresh)
        return fo.Exists(z, fo.And(_st(prog.left, x, z, fresh), _st(prog.right, z, y, fresh)))
    if isinstance(prog, Union):
        return fo.Or(_st(prog.left, x, y, fresh), _st(prog.right, x, y, fresh))
    if isinstance(prog, DynNeg):
        z = next(fresh)
        return fo.And(fo.Equals(x, y), fo.Not(fo.Exists(z, _st(prog.sub, x, z, fresh))))
    raise TypeError(f"not a program: {prog!r}")


# compiler ---------------------------------------------------------------------------

def ca_to_program(theta, p):
    """Compile a completely additive formula into a ``p``-free program.

    The result ``pi`` satisfies: ``theta`` holds at ``w`` iff some ``v`` with
    ``(w, v)`` in the relation of ``pi`` satisfies ``p``.  ``theta`` must be
    a disjunction of terms ``p & F`` or ``F & <a>T`` (``T`` again a term,
    every ``F`` free of ``p``), read after conversion to negation normal form.
    """
    normal = modal.nnf(theta)
    if not is_ca_disjunction(normal, p):
        raise ShapeKindError(f"{theta} is not generated by the completely additive grammar in {p}")
    progs = [_compile_term(t, p) for t in disjuncts(normal)]
    out = progs[0]
    for prog in progs[1:]:
        out = Union(out, prog)
    return out


def _compile_term(theta, p):
    if theta.left == modal.Prop(p):
        return Test(theta.right)
    dia = theta.right
    return Comp(Comp(Test(theta.left), Atom(dia.label)), _compile_term(dia.sub, p))


# bisimulation safety --------------------------------------------------------------------

@dataclass
class SafetyViolation:
    left: Model
    right: Model
    pair: tuple
    step: tuple
    direction: str

    def describe(self):
        x, y = self.pair
        return (f"{self.direction}: {self.left.names[x]} ~ {self.right.names[y]} but the "
                f"step to {self._target()} has no matching answer")

    def _target(self):
        side = self.left if self.direction == "forth" else self.right
        return side.names[self.step[1]]


@dataclass
class SafetyReport:
    samples: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def _relation_fn(prog):
    if isinstance(prog, Program):
        return lambda M: prog_eval(M, prog)
    return lambda M: frozenset(prog(M))


def check_safety_on(rel, A, B, Z=None):
    """Violations of the back and forth clauses for ``rel`` along the largest bisimulation."""
    if Z is None:
        Z = largest_bisimulation(A, B)
    ra, rb = rel(A), rel(B)
    sa, sb = {}, {}
    for a, b in ra:
        sa.setdefault(a, []).append(b)
    for a, b in rb:
        sb.setdefault(a, []).append(b)
    out = []
    for x, y in sorted(Z):
        for x2 in sa.get(x, ()):
            if not any((x2, y2) in Z for y2 in sb.get(y, ())):
                out.append(SafetyViolation(A, B, (x, y), (x, x2), "forth"))
        for y2 in sb.get(y, ()):
            if not any((x2, y2) in Z for x2 in sa.get(x, ())):
                out.append(SafetyViolation(A, B, (x, y), (y, y2), "back"))
    return out


def bisimilar_pair(rng, max_worlds=4, props=("p",), labels=("a",), depth=2):
    """A random model paired with a bisimilar one.

    Half of the time the model is first replaced by its unravelling to
    ``depth``; in every case the partner is the bisimulation quotient.
    """
    n = rng.randint(1, max_worlds)
    M = random_model(rng, n, props, labels, density=rng.choice([0.2, 0.35, 0.5]))
    if rng.random() < 0.5:
        M, _ = tree_unravel(M, rng.randrange(n), depth)
    Q, _ = quotient(M)
    return M, Q


def safety_test(prog, samples=200, max_worlds=4, props=("p",), labels=None, seed=0):
    """Sample bisimilar model pairs and check the back and forth clauses for ``prog``.

    ``prog`` is a :class:`Program` or a callable mapping a model to a set of
    world pairs.  A violation refutes safety; no violation is only evidence.
    """
    if labels is None:
        labels = tuple(sorted(prog_labels(prog))) if isinstance(prog, Program) else ("a", "b")
        labels = labels or ("a",)
    if isinstance(prog, Program):
        props = tuple(sorted(set(props) | prog_props(prog)))
    rel = _relation_fn(prog)
    rng = random.Random(seed)
    report = SafetyReport(samples)
    for _ in range(samples):
        A, B = bisimilar_pair(rng, max_worlds, props, labels)
        report.violations.extend(check_safety_on(rel, A, B))
    return report


def find_safety_violation(prog, max_worlds=3, labels=("a", "b"), props=()):
    """Exhaustive search over frames up to ``max_worlds`` paired with their quotients."""
    rel = _relation_fn(prog)
    for F in all_frames(max_worlds, labels, up_to_iso=True):
        M = Model.on(F)
        Q, _ = quotient(M)
        found = check_safety_on(rel, M, Q)
        if found:
            return found[0]
    return None


def intersection(a, b):
    """Relation ``R_a & R_b`` as a model-to-pairs callable (not expressible as a program)."""
    return lambda M: as_model(M).rel(a) & as_model(M).rel(b)
