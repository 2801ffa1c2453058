"""Frame validity by exhaustive valuation enumeration."""

import os

import numpy as np

from ..errors import BudgetExceeded
from ..kripke.batch import BatchContext, decode_valuation, evaluate, valuation_block
from ..kripke.structures import Model
from ..syntax import modal
from .verdict import Verdict

DEFAULT_BUDGET_BITS = 24
BUDGET_ENV = "KRIPKELAB_BUDGET_BITS"
CHUNK = 1 << 14


def budget_bits(override=None):
    if override is not None:
        return int(override)
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_BUDGET_BITS


def frame_valid(F, phi, budget=None):
    """Is ``phi`` true at every world of ``F`` under every valuation?

    Valuations of the propositions of ``phi`` (sorted by name) are visited in
    increasing numeric order, proposition ``i`` at world ``j`` being bit
    ``i*n + j``; the first failing valuation and its smallest failing world
    form the witness.
    """
    props = sorted(modal.props(phi))
    n, k = F.n, len(props)
    bits = k * n
    limit = budget_bits(budget)
    if bits > limit:
        raise BudgetExceeded(f"{bits} valuation bits exceed the budget of {limit}")
    rels = {label: F.matrix(label) for label in F.labels}
    total = 1 << bits
    for start in range(0, total, CHUNK):
        stop = min(total, start + CHUNK)
        block = valuation_block(k, n, start, stop)
        ctx = BatchContext(n, rels, {p: block[:, i] for i, p in enumerate(props)}, (stop - start,))
        truth = evaluate(phi, ctx)
        bad = ~truth.all(axis=-1)
        if bad.any():
            idx = int(np.argmax(bad))
            world = int(np.argmin(truth[idx]))
            val = decode_valuation(start + idx, props, n)
            return Verdict(False, Model.on(F, val), world, {"valuation_index": start + idx})
    return Verdict(True)


def frames_valid(stack, phi, labels=("R",), chunk=4096):
    """Frame validity for every frame of a stack ``(count, n_labels, n, n)``; bool array."""
    stack = np.asarray(stack, dtype=bool)
    count, _, n, _ = stack.shape
    props = sorted(modal.props(phi))
    k = len(props)
    block = valuation_block(k, n, 0, 1 << (k * n))
    val = {p: block[:, i] for i, p in enumerate(props)}
    out = np.empty(count, dtype=bool)
    for start in range(0, count, chunk):
        part = stack[start:start + chunk]
        rels = {label: part[:, i][:, None] for i, label in enumerate(labels)}
        ctx = BatchContext(n, rels, val, (len(part), len(block)))
        out[start:start + len(part)] = evaluate(phi, ctx).all(axis=(-1, -2))
    return out
