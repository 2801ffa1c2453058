"""Vectorised modal evaluation over stacks of frames and valuations.

Truth sets are boolean arrays whose last axis indexes worlds; all leading
axes are batch axes (typically ``(frames, valuations, worlds)``).  A relation
is an array of shape ``(..., n, n)`` that broadcasts against the truth sets
once its last two axes are set aside.  The diamond is a matrix product:
``<a>S`` at ``w`` is ``sum_v R[w, v] * S[v] > 0``.
"""

import numpy as np

from ..syntax import modal


class BatchContext:
    """Relation and valuation arrays for one batch evaluation."""

    def __init__(self, n, relations, valuation, batch_shape=()):
        self.n = n
        self.rel_t = {k: np.swapaxes(np.asarray(v, dtype=np.float32), -1, -2)
                      for k, v in relations.items()}
        self.valuation = {k: np.asarray(v, dtype=bool) for k, v in valuation.items()}
        self.batch_shape = tuple(batch_shape)

    def zeros(self):
        return np.zeros(self.batch_shape + (self.n,), dtype=bool)

    def ones(self):
        return np.ones(self.batch_shape + (self.n,), dtype=bool)

    def diamond(self, label, s):
        if label == modal.UNIVERSAL:
            return np.broadcast_to(s.any(axis=-1, keepdims=True), s.shape).copy()
        rt = self.rel_t.get(label)
        if rt is None:
            return np.zeros(np.broadcast_shapes(s.shape, self.batch_shape + (self.n,)), dtype=bool)
        prod = np.matmul(s[..., None, :].astype(np.float32), rt)
        return prod[..., 0, :] > 0


def evaluate(phi, ctx, cache=None):
    """Truth-set array of ``phi`` under ``ctx``, shaped ``batch_shape + (n,)``."""
    if cache is None:
        cache = {}
    r = _evaluate(phi, ctx, cache)
    shape = np.broadcast_shapes(r.shape, ctx.batch_shape + (ctx.n,))
    return np.broadcast_to(r, shape)


def _evaluate(phi, ctx, cache):
    hit = cache.get(phi)
    if hit is not None:
        return hit
    if isinstance(phi, modal.Top):
        r = ctx.ones()
    elif isinstance(phi, modal.Bot):
        r = ctx.zeros()
    elif isinstance(phi, modal.Prop):
        r = ctx.valuation.get(phi.name)
        if r is None:
            r = ctx.zeros()
    elif isinstance(phi, modal.Not):
        r = ~_evaluate(phi.sub, ctx, cache)
    elif isinstance(phi, modal.And):
        r = _evaluate(phi.left, ctx, cache) & _evaluate(phi.right, ctx, cache)
    elif isinstance(phi, modal.Or):
        r = _evaluate(phi.left, ctx, cache) | _evaluate(phi.right, ctx, cache)
    elif isinstance(phi, modal.Implies):
        r = ~_evaluate(phi.left, ctx, cache) | _evaluate(phi.right, ctx, cache)
    elif isinstance(phi, modal.Iff):
        r = _evaluate(phi.left, ctx, cache) == _evaluate(phi.right, ctx, cache)
    elif isinstance(phi, modal.Dia):
        r = ctx.diamond(phi.label, _evaluate(phi.sub, ctx, cache))
    elif isinstance(phi, modal.Box):
        r = ~ctx.diamond(phi.label, ~_evaluate(phi.sub, ctx, cache))
    else:
        raise TypeError(f"not a modal formula: {phi!r}")
    cache[phi] = r
    return r


def valuation_block(k, n, start, stop):
    """Valuations number ``start..stop-1`` as a bool array ``(count, k, n)``.

    Valuation number ``v`` makes proposition ``i`` true at world ``j`` iff
    bit ``i*n + j`` of ``v`` is set, so counting upwards walks the
    bit-vectors in lexicographic order of their binary numerals.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(k * n, dtype=np.int64)[None, :]) & 1
    return bits.astype(bool).reshape(len(idx), k, n)


def decode_valuation(v, props, n):
    """Valuation number ``v`` as a ``{prop: set of worlds}`` map."""
    return {p: {j for j in range(n) if v >> (i * n + j) & 1} for i, p in enumerate(props)}


def frame_arrays(frame, labels=None):
    labels = labels if labels is not None else frame.labels
    return {label: frame.matrix(label) for label in labels}
