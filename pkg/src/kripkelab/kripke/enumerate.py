"""Exhaustive and random generation of small frames and models."""

from itertools import permutations, product

import numpy as np

from .structures import Frame, Model

MAX_LABELLED_BITS = 22


def _decode(codes, n, n_labels):
    bits = np.arange(n_labels * n * n, dtype=np.int64)
    arr = (codes[:, None] >> bits[None, :]) & 1
    return arr.astype(bool).reshape(len(codes), n_labels, n, n)


def _encode(stack):
    N, L, n, _ = stack.shape
    weights = (np.int64(1) << np.arange(L * n * n, dtype=np.int64))
    return stack.reshape(N, -1).astype(np.int64) @ weights


def canonical_codes(stack):
    """Smallest code over all world permutations, per frame in the stack."""
    N, L, n, _ = stack.shape
    best = None
    for perm in permutations(range(n)):
        p = list(perm)
        permuted = stack[:, :, p][:, :, :, p]
        codes = _encode(permuted)
        best = codes if best is None else np.minimum(best, codes)
    return best if best is not None else np.zeros(N, dtype=np.int64)


def frame_stack(n, n_labels=1, up_to_iso=False):
    """All frames on ``n`` worlds as a bool array ``(count, n_labels, n, n)``.

    With ``up_to_iso`` one representative (the one with the smallest code)
    is kept per isomorphism class.
    """
    bits = n_labels * n * n
    if bits > MAX_LABELLED_BITS:
        raise ValueError(f"{bits} relation bits is too many to enumerate")
    codes = np.arange(1 << bits, dtype=np.int64)
    stack = _decode(codes, n, n_labels)
    if not up_to_iso or n <= 1:
        return stack
    canon = canonical_codes(stack)
    keep = np.unique(canon)
    return _decode(keep, n, n_labels)


def stack_to_frame(arr, labels=("R",), name="F"):
    n = arr.shape[-1]
    rels = {label: [tuple(int(x) for x in ij) for ij in zip(*np.nonzero(arr[i]))]
            for i, label in enumerate(labels)}
    return Frame(n, rels, name)


def all_frames(max_worlds, labels=("R",), up_to_iso=True, min_worlds=1):
    """Frames with ``min_worlds..max_worlds`` worlds."""
    for n in range(min_worlds, max_worlds + 1):
        for arr in frame_stack(n, len(labels), up_to_iso):
            yield stack_to_frame(arr, labels)


def valuations(n, props):
    """Every valuation of ``props`` over ``n`` worlds, as ``{prop: set}`` maps."""
    subsets = [frozenset(w for w in range(n) if mask >> w & 1) for mask in range(1 << n)]
    for choice in product(subsets, repeat=len(props)):
        yield dict(zip(props, choice))


def all_models(max_worlds, props=("p",), labels=("R",), up_to_iso=True, min_worlds=1):
    for F in all_frames(max_worlds, labels, up_to_iso, min_worlds):
        for val in valuations(F.n, props):
            yield Model.on(F, val)


def random_frame(rng, n, labels=("R",), density=0.3, name="F"):
    rels = {label: [(a, b) for a in range(n) for b in range(n) if rng.random() < density]
            for label in labels}
    return Frame(n, rels, name)


def random_model(rng, n, props=("p",), labels=("R",), density=0.3, p_true=0.5, name="M"):
    F = random_frame(rng, n, labels, density)
    val = {p: [w for w in range(n) if rng.random() < p_true] for p in props}
    return Model(n, F.relations, val, name)
