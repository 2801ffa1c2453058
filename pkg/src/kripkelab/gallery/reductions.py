"""Set Splitting and Horn-SAT instances, their frame encodings, and
brute-force or forward-chaining solvers used to cross-check them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParseError, StructureError
from ..folog import fo_eval
from ..kripke.batch import BatchContext, evaluate, valuation_block
from ..kripke.structures import Frame, members
from .formulas import fo_formula, modal_formula

# set splitting ------------------------------------------------------------------------


@dataclass(frozen=True)
class SetSplittingInstance:
    ground: tuple
    family: tuple

    def __post_init__(self):
        ground = tuple(self.ground)
        if len(set(ground)) != len(ground):
            raise ValueError("ground set has repeated elements")
        family = tuple(frozenset(f) for f in self.family)
        for f in family:
            if not f <= set(ground):
                raise ValueError(f"family member {sorted(f)} is not a subset of the ground set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "family", family)


def set_splitting_to_frame(inst):
    """Root ``w`` sees one world per family member; each member sees its
    elements; every element is reflexive."""
    k = len(inst.family)
    names = ["w"] + [f"f{j}" for j in range(k)] + [f"s_{x}" for x in inst.ground]
    elem = {x: 1 + k + i for i, x in enumerate(inst.ground)}
    pairs = [(0, 1 + j) for j in range(k)]
    pairs += [(1 + j, elem[x]) for j, f in enumerate(inst.family) for x in inst.ground if x in f]
    pairs += [(i, i) for i in elem.values()]
    return Frame(names, {"R": pairs}, "setsplit")


def solve_set_splitting(inst):
    """First partition ``(S1, S2)`` (by the bitmask of ``S1``) splitting
    every family member, or None.  Either part may be empty."""
    ground = inst.ground
    masks = [sum(1 << i for i, x in enumerate(ground) if x in f) for f in inst.family]
    for s1 in range(1 << len(ground)):
        if all(m & s1 and m & ~s1 for m in masks):
            return ({x for i, x in enumerate(ground) if s1 >> i & 1},
                    {x for i, x in enumerate(ground) if not s1 >> i & 1})
    return None


def _set_tokens(line):
    return [t for t in line.replace(",", " ").replace("{", " ").replace("}", " ").split() if t]


def parse_set_splitting(text):
    """First non-comment line: the ground set; each further line: one member.
    ``{}`` denotes an empty member."""
    lines = [raw.split("#", 1)[0].strip() for raw in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise ParseError("empty set splitting file", 1, 1)
    ground = _set_tokens(lines[0])
    try:
        return SetSplittingInstance(ground, [_set_tokens(line) for line in lines[1:]])
    except ValueError as e:
        raise ParseError(str(e), 1, 1) from None


def format_set_splitting(inst):
    lines = [" ".join(inst.ground)]
    for f in inst.family:
        lines.append(" ".join(x for x in inst.ground if x in f) or "{}")
    return "\n".join(lines) + "\n"


# horn ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class HornInstance:
    """Clauses are ``(negatives, positive)`` with ``positive`` None for a goal clause."""

    variables: tuple
    clauses: tuple

    def __post_init__(self):
        clauses = tuple((frozenset(neg), pos) for neg, pos in self.clauses)
        variables = tuple(self.variables)
        known = set(variables)
        for neg, pos in clauses:
            used = set(neg) | ({pos} if pos is not None else set())
            if not used <= known:
                raise ValueError(f"clause uses undeclared variables {sorted(used - known)}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def of_clauses(cls, clauses):
        seen = []
        for neg, pos in clauses:
            for v in sorted(neg) + ([pos] if pos is not None else []):
                if v not in seen:
                    seen.append(v)
        return cls(tuple(seen), clauses)

    def satisfied_by(self, true_vars):
        """``true_vars`` is a set of true variables or a ``{var: bool}`` assignment."""
        if isinstance(true_vars, dict):
            true_vars = {v for v, t in true_vars.items() if t}
        return all(not set(neg) <= true_vars or (pos is not None and pos in true_vars)
                   for neg, pos in self.clauses)


@dataclass
class HornResult:
    sat: bool
    assignment: dict = None


def horn_forward_chain(alpha):
    """Forward chaining: the least model when satisfiable."""
    true = set()
    changed = True
    while changed:
        changed = False
        for neg, pos in alpha.clauses:
            if pos is not None and pos not in true and neg <= true:
                true.add(pos)
                changed = True
    for neg, pos in alpha.clauses:
        if pos is None and neg <= true:
            return HornResult(False)
    return HornResult(True, {v: v in true for v in alpha.variables})


def horn_brute_force(alpha):
    """Satisfiability by trying every assignment."""
    vs = alpha.variables
    for mask in range(1 << len(vs)):
        true = {v for i, v in enumerate(vs) if mask >> i & 1}
        if alpha.satisfied_by(true):
            return True
    return False


def horn_to_frame(alpha):
    """Clause worlds ``c1..cn`` and variable worlds ``p_<var>``.

    Every world ``R``-sees every clause world; a clause world sees its
    positive variable along ``R+`` and its negated variables along ``R-``.
    """
    k = len(alpha.clauses)
    names = [f"c{j + 1}" for j in range(k)] + [f"p_{v}" for v in alpha.variables]
    var = {v: k + i for i, v in enumerate(alpha.variables)}
    r = [(w, j) for w in range(len(names)) for j in range(k)]
    plus = [(j, var[pos]) for j, (_, pos) in enumerate(alpha.clauses) if pos is not None]
    minus = [(j, var[v]) for j, (neg, _) in enumerate(alpha.clauses) for v in sorted(neg)]
    return Frame(names, {"R": r, "R+": plus, "R-": minus}, "horn")


def _check_functional(F):
    for w, succ in enumerate(F.succ("R+") if "R+" in F.labels else []):
        if succ & (succ - 1):
            raise StructureError(f"R+ is not functional at world {F.names[w]}")


def horn_of_frame(F, a):
    """The Horn formula read off the ``R``-successors of world ``a``.

    Variables are the ``R+``/``R-`` successors of those worlds (named after
    the worlds), clauses follow the successors in world order.
    """
    _check_functional(F)
    a = F.index(a) if isinstance(a, str) else a
    succ = lambda label, w: members(F.succ(label)[w]) if label in F.labels else []
    clause_worlds = members(F.succ("R")[a]) if "R" in F.labels else []
    var_worlds = sorted({v for c in clause_worlds for v in succ("R+", c) + succ("R-", c)})
    variables = tuple(F.names[v] for v in var_worlds)
    clauses = []
    for c in clause_worlds:
        pos = succ("R+", c)
        clauses.append(({F.names[v] for v in succ("R-", c)}, F.names[pos[0]] if pos else None))
    return HornInstance(variables, clauses)


def hornsat_eval(F, a):
    """Evaluate the fixed-point formula for satisfiability at world ``a``."""
    _check_functional(F)
    return fo_eval(F, fo_formula("horn_sat"), {"y": a})


def horn_valuation_exists(F, a):
    """Is there a valuation of ``t`` under which every ``R``-successor of ``a``
    has a false ``R-``-successor or a true ``R+``-successor?"""
    a = F.index(a) if isinstance(a, str) else a
    rels = {label: F.matrix(label) for label in F.labels}
    block = valuation_block(1, F.n, 0, 1 << F.n)
    ctx = BatchContext(F.n, rels, {"t": block[:, 0]}, (len(block),))
    return bool(np.any(evaluate(modal_formula("horn_cover"), ctx)[:, a]))


def parse_horn(text):
    """One clause per line, e.g. ``-P1 -P2 +P3``; a line ``false`` is the
    empty clause; an optional ``vars P1 P2 ...`` line declares variables."""
    declared = []
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vars":
            declared.extend(p for p in parts[1:] if p not in declared)
            continue
        if parts == ["false"]:
            clauses.append((frozenset(), None))
            continue
        neg, pos = set(), None
        for tok in parts:
            sign, name = tok[0], tok[1:]
            if sign not in "+-" or not name:
                raise ParseError(f"literal {tok!r} must be +VAR or -VAR", lineno, 1)
            if sign == "-":
                neg.add(name)
            elif pos is not None:
                raise ParseError("a Horn clause has at most one positive literal", lineno, 1)
            else:
                pos = name
        clauses.append((frozenset(neg), pos))
    alpha = HornInstance.of_clauses(clauses)
    extra = [v for v in declared if v not in alpha.variables]
    return HornInstance(alpha.variables + tuple(extra), clauses)


def format_horn(alpha):
    lines = ["vars " + " ".join(alpha.variables)] if alpha.variables else []
    for neg, pos in alpha.clauses:
        lits = [f"-{v}" for v in sorted(neg)] + ([f"+{pos}"] if pos is not None else [])
        lines.append(" ".join(lits) or "false")
    return "\n".join(lines) + "\n"
