"""Semantic properties of modal formulas in a proposition.

Each property is decided twice: by reduction to a validity checked with the
K tableau (:func:`semantic_property`), and by testing the defining semantic
condition on every small model (:func:`oracle_property`).
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..errors import StructureError
from ..kripke.batch import BatchContext, evaluate, valuation_block
from ..kripke.enumerate import frame_stack, stack_to_frame
from ..kripke.operations import restrict
from ..kripke.semantics import extension, model_check
from ..kripke.structures import Model, as_model, mask_of, members
from ..syntax import modal
from .tableau import DEFAULT_BUDGET, k_valid
from .verdict import Verdict

KINDS = ("monotone", "preserved_induced_sub", "completely_additive", "n_continuous")
ALIASES = {
    "monotone": "monotone", "mono": "monotone",
    "preserved_induced_sub": "preserved_induced_sub", "induced": "preserved_induced_sub",
    "completely_additive": "completely_additive", "ca": "completely_additive",
    "n_continuous": "n_continuous", "continuous": "n_continuous", "cont": "n_continuous",
}


def normalize_kind(kind):
    try:
        return ALIASES[kind]
    except KeyError:
        raise ValueError(f"unknown property kind {kind!r}; expected one of {KINDS}") from None


def _check_args(kind, phi, n):
    kind = normalize_kind(kind)
    if kind == "n_continuous" and (n is None or n < 0):
        raise ValueError("n_continuous needs a non-negative n")
    if modal.UNIVERSAL in modal.labels(phi):
        raise StructureError("semantic properties are decided for formulas without the universal modality")
    return kind


def reduction_validities(kind, phi, p, n=None):
    """The formulas whose joint validity is equivalent to the property."""
    kind = _check_args(kind, phi, n)
    taken = modal.props(phi) | {p}

    def fresh(base):
        name = modal.fresh_prop(base, taken)
        taken.add(name)
        return modal.Prop(name)

    if kind == "monotone":
        q = fresh("q")
        return [modal.Implies(phi, modal.substitute(phi, p, modal.Or(modal.Prop(p), q)))]
    if kind == "preserved_induced_sub":
        s = fresh("s")
        return [modal.Implies(modal.And(s, phi), modal.relativize(phi, s.name))]
    if kind == "completely_additive":
        q1, q2 = fresh("q"), fresh("q")
        joined = modal.substitute(phi, p, modal.Or(q1, q2))
        split = modal.Or(modal.substitute(phi, p, q1), modal.substitute(phi, p, q2))
        return [modal.Iff(joined, split), modal.Not(modal.substitute(phi, p, modal.BOT))]
    # n-continuity: n+1 fresh variables; a set of at most n witnesses then
    # always avoids one of them
    ps = [fresh("p") for _ in range(n + 1)]
    whole = modal.substitute(phi, p, modal.disj(ps))
    parts = [modal.substitute(phi, p, modal.disj(ps[:k] + ps[k + 1:])) for k in range(n + 1)]
    return [modal.Iff(whole, modal.disj(parts))]


def semantic_property(kind, phi, p, n=None, budget=DEFAULT_BUDGET):
    """Decide the property through its validity reduction."""
    for validity in reduction_validities(kind, phi, p, n):
        verdict = k_valid(validity, budget)
        if not verdict.answer:
            verdict.details["validity"] = validity
            return verdict
    return Verdict(True)


# direct semantic checks -----------------------------------------------------------------

def _subsets(n):
    return range(1 << n)


def _popcount(x):
    return bin(x).count("1")


def _table_violation(kind, table, n, base, n_cont):
    """First violation of ``kind`` in a truth table ``table[X] -> world mask``.

    ``base`` is the mask of the model's own ``p``-worlds when the condition
    refers to the actual valuation, or None to range over all of them.
    Returns ``(world, details)`` or None.
    """
    full = (1 << n) - 1
    if kind in ("monotone", "completely_additive"):
        for X in _subsets(n):
            for v in members(full & ~X):
                Y = X | (1 << v)
                bad = table[X] & ~table[Y]
                if bad:
                    w = members(bad)[0]
                    return w, {"reason": "not monotone", "smaller": X, "larger": Y}
    candidates = [base] if base is not None else list(_subsets(n))
    if kind == "completely_additive":
        for Y in candidates:
            good = 0
            for v in members(Y):
                good |= table[1 << v]
            bad = table[Y] & ~good
            if bad:
                return members(bad)[0], {"reason": "no single witness", "set": Y}
    if kind == "n_continuous":
        for Y in candidates:
            small = 0
            for X in _subsets(n):
                if X & ~Y == 0 and _popcount(X) <= n_cont:
                    small |= table[X]
            bad = table[Y] ^ small
            if bad:
                w = members(bad)[0]
                reason = "no small witness set" if table[Y] >> w & 1 else "small subset true but whole false"
                return w, {"reason": reason, "set": Y}
    return None


def violation_in_model(kind, phi, p, M, n=None, worlds=None):
    """Search one model for a violation of the defining condition.

    For monotonicity, complete additivity and continuity every valuation of
    ``p`` on the model's frame is tried (the other propositions are kept);
    for induced substructures every subset containing the world.  Returns
    ``(model, world, details)`` or None.
    """
    kind = _check_args(kind, phi, n)
    M = as_model(M)
    worlds = list(M.worlds) if worlds is None else list(worlds)
    if kind == "preserved_induced_sub":
        ext = extension(M, phi)
        for w in worlds:
            if not ext >> w & 1:
                continue
            others = [x for x in M.worlds if x != w]
            for r in range(len(others) + 1):
                for extra in combinations(others, r):
                    keep = sorted(set(extra) | {w})
                    sub = restrict(M, keep)
                    if not model_check(sub, keep.index(w), phi):
                        return M, w, {"reason": "fails in induced substructure", "subset": keep}
        return None
    table = [extension(M.with_valuation(p, members(X)), phi) for X in _subsets(M.n)]
    wanted = mask_of(worlds)
    for X in _subsets(M.n):
        table[X] &= wanted
    found = _table_violation(kind, table, M.n, None, n)
    if found is None:
        return None
    w, details = found
    return M.with_valuation(p, members(details.get("set", details.get("smaller")))), w, details


def confirm_validity_witness(kind, phi, p, verdict, n=None):
    """Check that a negative verdict's model exhibits a violation of the property."""
    if verdict.answer or verdict.model is None:
        return False
    return violation_in_model(kind, phi, p, verdict.model, n) is not None


# exhaustive oracle ------------------------------------------------------------------------

def oracle_property(kind, phi, p, n=None, max_worlds=3, labels=None):
    """Test the property's defining condition on every model up to ``max_worlds``.

    Frames are taken up to isomorphism and all valuations are tried.
    Returns a :class:`Verdict` whose witness is the first violation found.
    """
    kind = _check_args(kind, phi, n)
    if labels is None:
        labels = tuple(sorted(modal.labels(phi))) or (modal.DEFAULT_LABEL,)
    others = sorted(modal.props(phi) - {p})
    for size in range(1, max_worlds + 1):
        stack = frame_stack(size, len(labels), up_to_iso=True)
        if kind == "preserved_induced_sub":
            found = _oracle_induced(phi, stack, labels, sorted(modal.props(phi)), size)
        else:
            found = _oracle_table(kind, phi, p, n, stack, labels, others, size)
        if found is not None:
            return found
    return Verdict(True, details={"max_worlds": max_worlds})


def _oracle_table(kind, phi, p, n_cont, stack, labels, others, n):
    k = len(others)
    other_block = valuation_block(k, n, 0, 1 << (k * n))      # (V, k, n)
    p_block = valuation_block(1, n, 0, 1 << n)[:, 0]            # (X, n)
    V, X = len(other_block), len(p_block)
    val = {q: np.broadcast_to(other_block[:, i][:, None, :], (V, X, n)) for i, q in enumerate(others)}
    val[p] = np.broadcast_to(p_block[None], (V, X, n))
    rels = {label: stack[:, i][:, None, None] for i, label in enumerate(labels)}
    ctx = BatchContext(n, rels, val, (len(stack), V, X))
    truth = evaluate(phi, ctx)                                  # (F, V, X, n)
    masks = (truth.astype(np.int64) << np.arange(n, dtype=np.int64)).sum(axis=-1)
    for f in range(len(stack)):
        for v in range(V):
            table = [int(t) for t in masks[f, v]]
            found = _table_violation(kind, table, n, None, n_cont)
            if found is None:
                continue
            w, details = found
            valuation = {q: [j for j in range(n) if other_block[v, i, j]] for i, q in enumerate(others)}
            valuation[p] = members(details.get("set", details.get("smaller")))
            M = Model.on(stack_to_frame(stack[f], labels), valuation)
            return Verdict(False, M, w, details)
    return None


def _oracle_induced(phi, stack, labels, props, n):
    k = len(props)
    block = valuation_block(k, n, 0, 1 << (k * n))              # (V, k, n)
    subsets = valuation_block(1, n, 0, 1 << n)[:, 0]             # (S, n)
    keep = subsets[:, :, None] & subsets[:, None, :]             # (S, n, n)
    val = {q: block[:, i] for i, q in enumerate(props)}
    rels = {label: (stack[:, i][:, None] & keep[None])[:, :, None]
            for i, label in enumerate(labels)}                    # (F, S, 1, n, n)
    ctx = BatchContext(n, rels, val, (len(stack), len(subsets), len(block)))
    truth = evaluate(phi, ctx)                                   # (F, S, V, n)
    whole = truth[:, -1:]                                         # subset = all worlds
    bad = whole & ~truth & subsets[None, :, None, :]
    if not bad.any():
        return None
    f, s, v, w = (int(i) for i in np.argwhere(bad)[0])
    valuation = {q: [j for j in range(n) if block[v, i, j]] for i, q in enumerate(props)}
    M = Model.on(stack_to_frame(stack[f], labels), valuation)
    subset = [j for j in range(n) if subsets[s, j]]
    return Verdict(False, M, w, {"reason": "fails in induced substructure", "subset": subset})
