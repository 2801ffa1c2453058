"""Tableau decision procedure for multi-modal K.

Nodes are sets of formulas in negation normal form.  Propositional rules
saturate a node (disjunctions branch semantically: the second branch also
assumes the negation of the first disjunct); a saturated, clash-free node is
satisfied by a world whose successors are built recursively, one per
diamond, each carrying the diamond's body plus every matching box body.
Without transitivity every branch terminates, so no loop check is needed.
"""

from __future__ import annotations

from ..errors import BudgetExceeded, StructureError
from ..kripke.structures import Model
from ..syntax import modal

DEFAULT_BUDGET = 200_000


def _neg_nnf(phi):
    return modal.nnf(modal.Not(phi))


class _Prover:
    def __init__(self, budget):
        self.budget = budget
        self.nodes = 0
        self.unsat = set()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"tableau exceeded {self.budget} nodes")

    def sat(self, formulas):
        """Return a tree (literals, [(label, child tree)]) or None."""
        key = frozenset(formulas)
        if key in self.unsat:
            return None
        result = self._expand(set(), list(formulas))
        if result is None:
            self.unsat.add(key)
        return result

    def _expand(self, done, pending):
        self.tick()
        done = set(done)
        pending = list(pending)
        while pending:
            phi = pending.pop()
            if phi in done:
                continue
            if isinstance(phi, modal.Bot):
                return None
            if isinstance(phi, modal.Top):
                continue
            if isinstance(phi, modal.Prop):
                if modal.Not(phi) in done:
                    return None
                done.add(phi)
            elif isinstance(phi, modal.Not):
                if phi.sub in done:
                    return None
                done.add(phi)
            elif isinstance(phi, modal.And):
                done.add(phi)
                pending.append(phi.right)
                pending.append(phi.left)
            elif isinstance(phi, modal.Or):
                if phi.left in done or phi.right in done:
                    done.add(phi)
                    continue
                done.add(phi)
                first = self._expand(done, pending + [phi.left])
                if first is not None:
                    return first
                return self._expand(done, pending + [_neg_nnf(phi.left), phi.right])
            else:
                done.add(phi)
        return self._successors(done)

    def _successors(self, node):
        children = []
        boxes = {}
        for phi in node:
            if isinstance(phi, modal.Box):
                boxes.setdefault(phi.label, []).append(phi.sub)
        for phi in sorted((f for f in node if isinstance(f, modal.Dia)), key=str):
            if phi.label == modal.UNIVERSAL:
                raise StructureError("the universal modality is not supported by the tableau")
            child = self.sat([phi.sub] + boxes.get(phi.label, []))
            if child is None:
                return None
            children.append((phi.label, child))
        if modal.UNIVERSAL in boxes:
            raise StructureError("the universal modality is not supported by the tableau")
        literals = {phi.name for phi in node if isinstance(phi, modal.Prop)}
        return literals, children


def _to_model(tree):
    names, rels, val = [], {}, {}

    def build(t):
        i = len(names)
        names.append(f"t{i}")
        literals, children = t
        for p in literals:
            val.setdefault(p, []).append(i)
        for label, child in children:
            j = build(child)
            rels.setdefault(label, []).append((i, j))
        return i

    build(tree)
    return Model(names, rels, val, "tableau")


def _check_no_universal(phi):
    if modal.UNIVERSAL in modal.labels(phi):
        raise StructureError("k_sat/k_valid do not support the universal modality")


def k_sat(phi, budget=DEFAULT_BUDGET):
    """A finite tree model whose root (world 0) satisfies ``phi``, or None."""
    _check_no_universal(phi)
    tree = _Prover(budget).sat([modal.nnf(phi)])
    return None if tree is None else _to_model(tree)


def k_valid(phi, budget=DEFAULT_BUDGET):
    """Validity over all Kripke models, as a :class:`Verdict`."""
    from .verdict import Verdict
    _check_no_universal(phi)
    model = k_sat(modal.Not(phi), budget)
    if model is None:
        return Verdict(True)
    return Verdict(False, model=model, world=0)
