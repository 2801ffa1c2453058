"""Frame and structure families: parity frames, the tree structures for
generated subframes, and the disjoint-union pair."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from ..folog import Interpretation, fo_eval
from ..kripke.operations import structure_disjoint_union
from ..kripke.structures import FOStructure, Frame
from ..syntax import fo
from ..syntax.parsing import parse_fo


def make_parity_frames(n):
    """The cycle frame on ``2n+3`` worlds and its relational encoding.

    The frame has a root ``r`` seeing ``a0..an``; each ``ai`` sees ``bi`` and
    ``b(i+1 mod n+1)``; every ``bi`` is reflexive.  The structure keeps only
    the non-root edges as ``R'`` and marks the root with the unary ``P``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    names = ["r"] + [f"a{i}" for i in range(n + 1)] + [f"b{i}" for i in range(n + 1)]
    a = lambda i: 1 + i
    b = lambda i: n + 2 + i
    inner = set()
    for i in range(n + 1):
        inner.add((a(i), b(i)))
        inner.add((a(i), b((i + 1) % (n + 1))))
        inner.add((b(i), b(i)))
    root = {(0, a(i)) for i in range(n + 1)}
    F = Frame(names, {"R": sorted(root | inner)}, f"F{n}")
    G = FOStructure(names, {"P": [0]}, {"R'": sorted(inner)}, f"G{n}")
    return F, G


def make_interpretation_I():
    """Recovers the parity frame from its relational encoding."""
    phi = parse_fo("R'(x,y) | (P(x) & !P(y) & !R'(y,y))")
    return Interpretation(fo.TRUE, {"R": (phi, ("x", "y"))})


def _words(n):
    out = []
    for length in range(n + 1):
        out.extend("".join(bits) for bits in product("01", repeat=length))
    return out


def _tree_structure(n, letter, with_r1):
    words = _words(n)
    idx = {w: 1 + i for i, w in enumerate(words)}
    names = [letter] + [f"{letter}_{w or 'eps'}" for w in words]
    r1 = [(idx["0" * n], 0)] if with_r1 else []
    r2 = [(idx[w], idx[w + c]) for w in words if len(w) < n for c in "01"]
    r2.append((idx[""], idx[""]))
    r3 = [(idx[w], idx[w[:k]]) for w in words for k in range(len(w))]
    r3 += [(idx[w], idx[w]) for w in words if len(w) in (0, n)]
    r4 = [(0, idx[""])]
    name = ("A" if with_r1 else "B") + str(n)
    return FOStructure(names, binary={"R1": r1, "R2": r2, "R3": r3, "R4": r4}, name=name)


def make_An_Bn(n):
    """The tree structure with its single ``R1`` edge, and the copy without it.

    Elements are the distinguished point ``a`` (``b``) and ``a_w`` (``b_w``)
    for binary words ``w`` of length at most ``n``, the root being ``a_eps``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return _tree_structure(n, "a", True), _tree_structure(n, "b", False)


def make_dju_pair():
    A = FOStructure(["a", "b"], binary={"P": [(0, 0)], "Q": [(1, 1)]}, name="A")
    B = FOStructure(["c", "d", "e"], binary={"P": [(0, 0)], "Q": [(1, 1), (2, 2)]}, name="B")
    return A, B


@dataclass
class DjuReport:
    samples: int
    applicable: int = 0
    violations: list = field(default_factory=list)

    @property
    def preserved(self):
        return not self.violations


def _random_structure(rng, signature, size, density, name):
    unary = {r: [a for a in range(size) if rng.random() < density]
             for r, k in signature.items() if k == 1}
    binary = {r: [(a, b) for a in range(size) for b in range(size) if rng.random() < density]
              for r, k in signature.items() if k == 2}
    return FOStructure([f"e{i}" for i in range(size)], unary, binary, name)


def dju_preservation_test(phi, samples=1000, max_parts=3, max_size=3, density=0.5, seed=0,
                          stop_at_first=False):
    """Sample families of small structures and test preservation under disjoint unions.

    A family counts when every member satisfies ``phi``; it is a violation
    when their disjoint union does not.  Violations are conclusive.
    """
    signature = {r: min(ks) for r, ks in fo.relation_arities(phi).items()}
    rng = random.Random(seed)
    report = DjuReport(samples)
    for i in range(samples):
        parts = [_random_structure(rng, signature, rng.randint(1, max_size), density, f"A{j}")
                 for j in range(rng.randint(2, max_parts))]
        if not all(fo_eval(A, phi) for A in parts):
            continue
        report.applicable += 1
        union = structure_disjoint_union(parts)
        if not fo_eval(union, phi):
            report.violations.append((i, parts, union))
            if stop_at_first:
                break
    return report
