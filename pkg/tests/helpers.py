"""Shared generators for the test suite."""

from kripkelab.programs import Atom, Comp, DynNeg, Test, Union
from kripkelab.syntax import modal


def enumerate_programs(max_size, props=("p",), labels=("a",)):
    """Every program over atoms and proposition tests with at most ``max_size`` nodes."""
    by_size = {1: [Atom(a) for a in labels] + [Test(modal.Prop(p)) for p in props]}
    for s in range(2, max_size + 1):
        out = [DynNeg(x) for x in by_size[s - 1]]
        for left in range(1, s - 1):
            for cls in (Comp, Union):
                out += [cls(a, b) for a in by_size[left] for b in by_size[s - 1 - left]]
        by_size[s] = out
    for s in range(1, max_size + 1):
        yield from by_size[s]


def batched_models(n, props, labels, up_to_iso=True):
    """Every model on ``n`` worlds as one batch context ``(frames, valuations)``."""
    from kripkelab.kripke.batch import BatchContext, valuation_block
    from kripkelab.kripke.enumerate import frame_stack
    stack = frame_stack(n, len(labels), up_to_iso=up_to_iso)
    k = len(props)
    block = valuation_block(k, n, 0, 1 << (k * n))
    rels = {label: stack[:, i][:, None] for i, label in enumerate(labels)}
    val = {p: block[:, i] for i, p in enumerate(props)}
    return BatchContext(n, rels, val, (len(stack), len(block)))
