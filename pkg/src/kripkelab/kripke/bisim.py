"""Bisimilarity by partition refinement, a naive fixpoint reference, and quotients."""

from .operations import disjoint_union
from .structures import Model, as_model


def bisimulation_classes(M):
    """Block id for every world of ``M`` under the coarsest bisimulation."""
    M = as_model(M)
    props = sorted(M.valuation)
    labels = M.labels
    block = _renumber([tuple(w in M.val(p) for p in props) for w in M.worlds])
    while True:
        sigs = [(block[w],) + tuple(frozenset(block[v] for v in M.successors(w, a)) for a in labels)
                for w in M.worlds]
        refined = _renumber(sigs)
        if max(refined, default=-1) == max(block, default=-1):
            return refined
        block = refined


def _renumber(keys):
    ids = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def bisimilar(M, w, N, v):
    """Are the pointed models ``(M, w)`` and ``(N, v)`` bisimilar?"""
    M, N = as_model(M), as_model(N)
    U = disjoint_union([M, N])
    block = bisimulation_classes(U)
    return block[w] == block[M.n + v]


def bisimilar_naive(M, w, N, v):
    """Greatest-fixpoint computation over world pairs; a slow reference."""
    M, N = as_model(M), as_model(N)
    props = set(M.valuation) | set(N.valuation)
    labels = set(M.labels) | set(N.labels)
    Z = {(x, y) for x in M.worlds for y in N.worlds
         if all((x in M.val(p)) == (y in N.val(p)) for p in props)}
    changed = True
    while changed:
        changed = False
        for x, y in list(Z):
            ok = True
            for a in labels:
                xs, ys = M.successors(x, a), N.successors(y, a)
                if any(not any((x2, y2) in Z for y2 in ys) for x2 in xs):
                    ok = False
                elif any(not any((x2, y2) in Z for x2 in xs) for y2 in ys):
                    ok = False
                if not ok:
                    break
            if not ok:
                Z.discard((x, y))
                changed = True
    return (w, v) in Z


def largest_bisimulation(M, N):
    """All bisimilar world pairs between ``M`` and ``N``."""
    M, N = as_model(M), as_model(N)
    block = bisimulation_classes(disjoint_union([M, N]))
    return {(x, y) for x in M.worlds for y in N.worlds if block[x] == block[M.n + y]}


def quotient(M):
    """Bisimulation quotient; returns ``(model, class_of)`` with ``class_of[w]`` the image of ``w``."""
    M = as_model(M)
    block = bisimulation_classes(M)
    k = max(block, default=-1) + 1
    rep = {}
    for w in M.worlds:
        rep.setdefault(block[w], w)
    names = [f"q{b}" for b in range(k)]
    rels = {a: {(block[x], block[y]) for x, y in M.rel(a)} for a in M.labels}
    val = {p: {block[w] for w in ws} for p, ws in M.valuation.items()}
    return Model(names, rels, val, f"{M.name}_q"), block
