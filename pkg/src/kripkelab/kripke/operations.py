"""Frame operations: generated subframes, disjoint unions, bounded morphisms,
unravelling, ultrafilter extensions and Gaifman neighbourhoods."""

from __future__ import annotations

from collections import deque
from itertools import combinations

from ..errors import BudgetExceeded, StructureError
from .structures import FOStructure, Frame, Model, as_model, mask_of, members


def _rebuild(F, keep, name=None):
    """Substructure of a frame or model on the world list ``keep``."""
    keep = sorted(keep)
    pos = {w: i for i, w in enumerate(keep)}
    rels = {label: [(pos[a], pos[b]) for a, b in pairs if a in pos and b in pos]
            for label, pairs in F.relations.items()}
    names = [F.names[w] for w in keep]
    if isinstance(F, Model):
        val = {p: [pos[w] for w in ws if w in pos] for p, ws in F.valuation.items()}
        return Model(names, rels, val, name or F.name)
    return Frame(names, rels, name or F.name)


def reachable(F, start, labels=None):
    """Bitmask of worlds reachable from ``start`` (a world or iterable of worlds)."""
    labels = F.labels if labels is None else labels
    seen = mask_of([start] if isinstance(start, int) else start)
    frontier = seen
    while frontier:
        nxt = 0
        for w in members(frontier):
            for label in labels:
                nxt |= F.succ(label)[w]
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def is_generated(F, worlds):
    mask = mask_of(worlds)
    return all(F.succ(label)[w] & ~mask == 0 for label in F.labels for w in worlds)


def generated_subframe(F, worlds):
    """Restriction of ``F`` to ``worlds``, which must be closed under every relation."""
    worlds = set(worlds)
    if not worlds <= set(F.worlds):
        raise StructureError("world set is not a subset of the frame")
    if not is_generated(F, worlds):
        raise StructureError("world set is not closed under the relations")
    return _rebuild(F, worlds)


def restrict(F, worlds):
    """Induced substructure on an arbitrary world set (no closure required)."""
    return _rebuild(F, set(worlds))


def disjoint_union(frames, name="U"):
    """Disjoint union; world ``w`` of component ``i`` is named ``c<i>_<w>``.

    Returns a model if any component is a model.
    """
    names, rels, val = [], {}, {}
    offset = 0
    any_model = any(isinstance(f, Model) for f in frames)
    for i, F in enumerate(frames):
        names.extend(f"c{i}_{nm}" for nm in F.names)
        for label, pairs in F.relations.items():
            rels.setdefault(label, []).extend((a + offset, b + offset) for a, b in pairs)
        if isinstance(F, Model):
            for p, ws in F.valuation.items():
                val.setdefault(p, []).extend(w + offset for w in ws)
        offset += F.n
    if any_model:
        return Model(names, rels, val, name)
    return Frame(names, rels, name)


def structure_disjoint_union(structures, name="U"):
    names, unary, binary = [], {}, {}
    offset = 0
    for i, A in enumerate(structures):
        names.extend(f"c{i}_{nm}" for nm in A.names)
        for k, v in A.unary.items():
            unary.setdefault(k, []).extend(e + offset for e in v)
        for k, v in A.binary.items():
            binary.setdefault(k, []).extend((a + offset, b + offset) for a, b in v)
        offset += A.n
    return FOStructure(names, unary, binary, name)


# bounded morphisms -------------------------------------------------------------

def _as_map(F, f):
    if isinstance(f, dict):
        if set(f) != set(F.worlds):
            raise StructureError("map is not total on the source worlds")
        return [f[w] for w in F.worlds]
    f = list(f)
    if len(f) != F.n:
        raise StructureError("map is not total on the source worlds")
    return f


def is_bounded_morphism(F, G, f):
    """Frame-level check of the forth and back clauses for every label."""
    f = _as_map(F, f)
    if any(not 0 <= t < G.n for t in f):
        raise StructureError("map leaves the target frame")
    for label in set(F.labels) | set(G.labels):
        gs = G.succ(label)
        fs = F.succ(label)
        for w in F.worlds:
            image = mask_of(f[v] for v in members(fs[w]))
            # forth: images of successors are successors of the image
            if image & ~gs[f[w]]:
                return False
            # back: every successor of the image is hit by a successor
            if gs[f[w]] & ~image:
                return False
    return True


def is_model_bounded_morphism(N, M, f, surjective=True):
    """Bounded morphism that also preserves the truth of every proposition."""
    N, M = as_model(N), as_model(M)
    f = _as_map(N, f)
    if not is_bounded_morphism(N, M, f):
        return False
    for p in set(N.valuation) | set(M.valuation):
        if any((w in N.val(p)) != (f[w] in M.val(p)) for w in N.worlds):
            return False
    return not surjective or set(f) == set(M.worlds)


def find_bounded_morphism_onto(N, M, budget=200_000):
    """Search for a surjective model-level bounded morphism from ``N`` onto ``M``.

    Returns the map as a list (source world id -> target world id) or None.
    Raises :class:`BudgetExceeded` after ``budget`` search nodes.
    """
    N, M = as_model(N), as_model(M)
    props = sorted(set(N.valuation) | set(M.valuation))
    labels = sorted(set(N.labels) | set(M.labels))
    sig_n = [tuple(w in N.val(p) for p in props) for w in N.worlds]
    sig_m = [tuple(t in M.val(p) for p in props) for t in M.worlds]
    candidates = [[t for t in M.worlds if sig_m[t] == sig_n[w]] for w in N.worlds]
    if any(not c for c in candidates):
        return None
    if M.n > N.n:
        return None

    def degree(w):
        return sum(bin(N.succ(a)[w]).count("1") + bin(N.pred(a)[w]).count("1") for a in labels)

    order = sorted(N.worlds, key=lambda w: (-degree(w), w))
    f = [None] * N.n
    used = [0] * M.n
    nodes = 0

    def consistent(w):
        t = f[w]
        for a in labels:
            ns, ms = N.succ(a), M.succ(a)
            for v in members(ns[w]):
                if f[v] is not None and not ms[t] >> f[v] & 1:
                    return False
            for v in members(N.pred(a)[w]):
                if f[v] is not None and not ms[f[v]] >> t & 1:
                    return False
        return True

    def back_ok():
        for a in labels:
            ns, ms = N.succ(a), M.succ(a)
            for w in N.worlds:
                image = mask_of(f[v] for v in members(ns[w]))
                if ms[f[w]] & ~image:
                    return False
        return True

    def search(i, uncovered):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"bounded morphism search exceeded {budget} nodes")
        if uncovered > N.n - i:
            return False
        if i == N.n:
            return back_ok()
        w = order[i]
        for t in candidates[w]:
            f[w] = t
            if consistent(w):
                used[t] += 1
                if search(i + 1, uncovered - (used[t] == 1)):
                    return True
                used[t] -= 1
            f[w] = None
        return False

    if search(0, M.n):
        return list(f)
    return None


# unravelling -------------------------------------------------------------------

def tree_unravel(M, w, depth):
    """Tree unravelling of ``M`` from ``w`` truncated at paths of length ``depth``.

    Worlds are paths ``w = v0, a1, v1, ..., ak, vk`` with ``k <= depth``; the
    root (path of length 0) is world 0.  Returns ``(model, root)``.
    """
    T, _ = _unravel(M, w, depth)
    return T, 0


def _unravel(M, w, depth):
    if depth < 0:
        raise StructureError("depth must be non-negative")
    M = as_model(M)
    paths = [((w,), ())]
    parents = [None]
    names = [M.names[w]]
    rels = {label: [] for label in M.labels}
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for i in frontier:
            worlds, steps = paths[i]
            last = worlds[-1]
            for label in M.labels:
                for v in M.successors(last, label):
                    j = len(paths)
                    paths.append((worlds + (v,), steps + (label,)))
                    parents.append(i)
                    names.append(f"{names[i]}.{label}.{M.names[v]}" if len(M.labels) > 1
                                 else f"{names[i]}.{M.names[v]}")
                    rels[label].append((i, j))
                    nxt.append(j)
        frontier = nxt
    val = {p: [i for i, (worlds, _) in enumerate(paths) if worlds[-1] in ws]
           for p, ws in M.valuation.items()}
    T = Model(names, rels, val, f"{M.name}_unr")
    return T, [worlds[-1] for worlds, _ in paths]


def unravel_projection(M, w, depth):
    """The unravelling, its root and the map sending each path to its last world."""
    T, proj = _unravel(M, w, depth)
    return T, 0, proj


# ultrafilter extension ------------------------------------------------------------

def ultrafilter_extension_finite(F):
    """Ultrafilter extension of a finite frame.

    Every ultrafilter over a finite set is principal, so the ultrafilter
    generated by ``w`` is ``{X : w in X}`` and is represented by ``w``.  The
    relation is computed from its definition, ``u R u'`` iff ``<a>X`` belongs
    to ``u`` for every ``X`` in ``u'``, by running over all subsets ``X``.
    Returns ``(frame, isomorphism)`` where the isomorphism maps ``w`` to the
    principal ultrafilter it generates.
    """
    n = F.n
    rels = {}
    for label in F.labels:
        pred = F.pred(label)
        pairs = []
        for u in range(n):
            for v in range(n):
                ok = True
                others = [x for x in range(n) if x != v]
                # every X containing v, i.e. every member of the ultrafilter of v
                for r in range(len(others) + 1):
                    for extra in combinations(others, r):
                        X = mask_of(extra) | (1 << v)
                        dia = 0
                        for x in members(X):
                            dia |= pred[x]
                        if not dia >> u & 1:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    pairs.append((u, v))
        rels[label] = pairs
    names = [f"up_{nm}" for nm in F.names]
    ue = Frame(names, rels, f"ue_{F.name}")
    return ue, {w: w for w in F.worlds}


# Gaifman graph -----------------------------------------------------------------

def gaifman_adjacency(A):
    adj = [0] * A.n
    for pairs in A.binary.values():
        for a, b in pairs:
            if a != b:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


def gaifman_distances(A, a):
    adj = gaifman_adjacency(A)
    dist = {a: 0}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for v in members(adj[u]):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def gaifman_r_neighbourhood(A, a, r):
    """Induced substructure on the elements at Gaifman distance at most ``r`` from ``a``."""
    if isinstance(a, str):
        a = A.index(a)
    dist = gaifman_distances(A, a)
    return A.induced([e for e, d in dist.items() if d <= r], name=f"N{r}({A.names[a]})")


def model_pair(K, M, left="P", right="Q"):
    """Disjoint union of ``K`` and ``M`` with fresh unary predicates marking each part."""
    for name in (left, right):
        if name in K.signature or name in M.signature:
            raise StructureError(f"predicate {name} already occurs in the signature")
    U = structure_disjoint_union([K, M], name=f"[{K.name},{M.name}]")
    unary = dict(U.unary)
    unary[left] = range(K.n)
    unary[right] = range(K.n, K.n + M.n)
    return FOStructure(U.names, unary, U.binary, U.name)
