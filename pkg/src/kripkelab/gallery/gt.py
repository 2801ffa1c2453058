"""Characteristic formulas of finite frames and a bounded check of modal
definability by closure under bounded morphic images."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..decide.framevalid import frames_valid
from ..errors import BudgetExceeded
from ..kripke.enumerate import frame_stack, stack_to_frame
from ..kripke.operations import find_bounded_morphism_onto
from ..kripke.structures import Model
from ..syntax import modal

PREFIX = "p_"


def world_prop(F, w):
    return PREFIX + F.names[w]


def gt_model(F):
    """``F`` with each world's proposition true exactly there."""
    return Model.on(F, {world_prop(F, w): [w] for w in F.worlds})


def gt_dollar_formula(F, labels=None, surjective=True):
    """Global description of ``F`` up to bounded morphic preimages.

    Under a universal box: every point carries exactly one world proposition,
    ``p_s -> <a>p_t`` for each edge and ``p_s -> [a]~p_t`` for each non-edge.
    With ``surjective`` every world proposition must also be realised
    somewhere, which is what makes the induced map onto.
    """
    labels = tuple(labels) if labels is not None else (F.labels or (modal.DEFAULT_LABEL,))
    ps = [modal.Prop(world_prop(F, w)) for w in F.worlds]
    parts = [modal.disj(ps)]
    parts += [modal.Not(modal.And(ps[s], ps[t])) for s in F.worlds for t in F.worlds if s < t]
    for label in labels:
        succ = F.succ(label)
        for s in F.worlds:
            for t in F.worlds:
                if succ[s] >> t & 1:
                    parts.append(modal.Implies(ps[s], modal.Dia(label, ps[t])))
                else:
                    parts.append(modal.Implies(ps[s], modal.Box(label, modal.Not(ps[t]))))
    phi = modal.Box(modal.UNIVERSAL, modal.conj(parts))
    if surjective:
        phi = modal.conj([phi] + [modal.Dia(modal.UNIVERSAL, p) for p in ps])
    return phi


@dataclass
class DefinabilityReport:
    max_size: int
    frames: int
    class_size: int
    closed: bool
    counterexample: tuple = None
    defining: list = field(default_factory=list)
    defined: bool = False
    mismatches: list = field(default_factory=list)

    def summary(self):
        lines = [f"frames enumerated up to isomorphism (<= {self.max_size} worlds): {self.frames}",
                 f"members of the class: {self.class_size}",
                 f"closed under bounded morphic images: {self.closed}"]
        if self.counterexample:
            G, H = self.counterexample
            lines.append(f"  {H.name} is an image of member {G.name} but is not a member")
        lines.append(f"defining formulas ~$(H), H a non-member: {len(self.defining)} "
                     f"(theory truncated to frames with <= {self.max_size} worlds)")
        lines.append(f"class equals the models of those formulas: {self.defined}")
        return "\n".join(lines)


def _enumerate(max_size, labels):
    stacks = {}
    frames = []
    for n in range(1, max_size + 1):
        stack = frame_stack(n, len(labels), up_to_iso=True)
        stacks[n] = (len(frames), stack)
        for i, arr in enumerate(stack):
            frames.append(stack_to_frame(arr, labels, name=f"F{n}_{i}"))
    return frames, stacks


def gt_definable_check(member, max_size=3, labels=("R",), budget=200_000):
    """Test a frame class (given by the predicate ``member``) for modal
    definability within frames of at most ``max_size`` worlds.

    Closure: every surjective bounded morphic image of a member must be a
    member; images are never larger than their source, so this is exact
    for the truncated class.  Definition: a frame belongs to the class iff
    it validates ``~$(H)`` for every enumerated non-member ``H``.
    """
    labels = tuple(labels)
    frames, stacks = _enumerate(max_size, labels)
    if len(frames) ** 2 > budget:
        raise BudgetExceeded(f"{len(frames)} frames exceed the pair budget {budget}")
    inside = [bool(member(F)) for F in frames]
    image = {}
    counterexample = None
    for g, G in enumerate(frames):
        if not inside[g]:
            continue
        for h, H in enumerate(frames):
            if H.n > G.n:
                continue
            found = find_bounded_morphism_onto(G, H) is not None
            image[g, h] = found
            if found and not inside[h] and counterexample is None:
                counterexample = (G, H)
    report = DefinabilityReport(max_size, len(frames), sum(inside), counterexample is None,
                                counterexample)
    outsiders = [h for h, H in enumerate(frames) if not inside[h]]
    validates_all = np.ones(len(frames), dtype=bool)
    for h in outsiders:
        H = frames[h]
        neg = modal.Not(gt_dollar_formula(H, labels))
        report.defining.append(neg)
        for n, (offset, stack) in stacks.items():
            valid = frames_valid(stack, neg, labels)
            validates_all[offset:offset + len(stack)] &= valid
            # cross-check the formula against the morphism search for members
            for i, ok in enumerate(valid):
                g = offset + i
                if (g, h) in image and ok == image[g, h]:
                    report.mismatches.append((frames[g], H))
    report.defined = report.closed and all(bool(v) == i for v, i in zip(validates_all, inside))
    return report
