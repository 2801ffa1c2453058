"""Random and exhaustive generators for formulas and programs."""

from __future__ import annotations

from . import fo, modal

_MODAL_BINARY = (modal.And, modal.Or, modal.Implies, modal.Iff)


def random_modal(rng, props=("p", "q"), labels=("R",), depth=3, size=8, constants=True):
    """A random modal formula with modal depth at most ``depth``.

    ``size`` caps the number of connectives and modalities.
    """
    budget = [size]

    def leaf():
        if constants and rng.random() < 0.1:
            return rng.choice((modal.TOP, modal.BOT))
        return modal.Prop(rng.choice(props))

    def gen(d):
        if budget[0] <= 0 or rng.random() < 0.25:
            return leaf()
        budget[0] -= 1
        r = rng.random()
        if r < 0.15:
            return modal.Not(gen(d))
        if d > 0 and r < 0.5:
            label = rng.choice(labels)
            return (modal.Dia if rng.random() < 0.5 else modal.Box)(label, gen(d - 1))
        cls = rng.choice(_MODAL_BINARY)
        return cls(gen(d), gen(d))

    return gen(depth)


def enumerate_modal(max_size, props=("q",), labels=("a",), constants=True, binary=(modal.And, modal.Or)):
    """Every modal formula with at most ``max_size`` nodes, smallest first.

    Only negation, the connectives in ``binary`` and the modalities are used.
    """
    by_size = {1: ([modal.TOP, modal.BOT] if constants else []) + [modal.Prop(p) for p in props]}
    for s in range(2, max_size + 1):
        out = [modal.Not(f) for f in by_size[s - 1]]
        for label in labels:
            out += [modal.Dia(label, f) for f in by_size[s - 1]]
            out += [modal.Box(label, f) for f in by_size[s - 1]]
        for left_size in range(1, s - 1):
            for cls in binary:
                out += [cls(a, b) for a in by_size[left_size] for b in by_size[s - 1 - left_size]]
        by_size[s] = out
    for s in range(1, max_size + 1):
        yield from by_size[s]


def enumerate_ca_terms(max_size, p="p", others=("q",), labels=("a",)):
    """Every term of the grammar ``p & F | F & <a>T`` with at most ``max_size`` nodes,
    each ``F`` drawn from the ``p``-free formulas."""
    free = {}
    for f in enumerate_modal(max(1, max_size - 2), others, labels):
        free.setdefault(modal.size(f), []).append(f)
    terms = {}
    for s in range(1, max_size + 1):
        out = [modal.And(modal.Prop(p), f) for f in free.get(s - 2, [])]
        for fs in range(1, s - 2):
            for label in labels:
                out += [modal.And(f, modal.Dia(label, t))
                        for f in free.get(fs, []) for t in terms.get(s - 2 - fs, [])]
        terms[s] = out
    for s in range(1, max_size + 1):
        yield from terms[s]


def random_ca_formula(rng, p="p", others=("q",), labels=("a",), terms=2, depth=2):
    """A random finite disjunction of grammar terms."""
    def free():
        return random_modal(rng, others, labels, depth=1, size=2)

    def term(d):
        if d == 0 or rng.random() < 0.4:
            return modal.And(modal.Prop(p), free())
        return modal.And(free(), modal.Dia(rng.choice(labels), term(d - 1)))

    return modal.disj([term(depth) for _ in range(rng.randint(1, terms))])


def random_shaped(rng, kind, p="p", others=("q",), labels=("a",), depth=2, size=6):
    """A random formula built directly inside one of the syntactic classes."""
    if kind == "ca_grammar":
        return random_ca_formula(rng, p, others, labels, depth=depth)
    props = (p,) + tuple(others)
    budget = [size]

    def literal(under_box):
        q = rng.choice(props)
        if kind == "positive":
            return modal.Prop(q) if q == p or rng.random() < 0.5 else modal.Not(modal.Prop(q))
        if kind == "continuous" and q == p:
            if under_box:
                return modal.Not(modal.Prop(rng.choice(others))) if others else modal.TOP
            return modal.Prop(q)
        return modal.Prop(q) if rng.random() < 0.5 else modal.Not(modal.Prop(q))

    def gen(d, under_box):
        if budget[0] <= 0 or rng.random() < 0.3:
            return literal(under_box)
        budget[0] -= 1
        r = rng.random()
        if d > 0 and r < 0.5:
            label = rng.choice(labels)
            use_box = kind == "box_only_nnf" or rng.random() < 0.5
            if use_box:
                return modal.Box(label, gen(d - 1, True))
            return modal.Dia(label, gen(d - 1, under_box))
        cls = modal.And if rng.random() < 0.5 else modal.Or
        return cls(gen(d, under_box), gen(d, under_box))

    return gen(depth, False)


def random_fo(rng, unary=("P",), binary=("R",), variables=("x", "y", "z"), depth=3, extras=True):
    """A random FO formula; with ``extras`` also counting, TC and LFP nodes."""
    def atom():
        r = rng.random()
        if r < 0.15:
            return fo.Equals(rng.choice(variables), rng.choice(variables))
        if r < 0.45 and unary:
            return fo.Atom(rng.choice(unary), (rng.choice(variables),))
        if r < 0.5:
            return rng.choice((fo.TRUE, fo.FALSE))
        return fo.Atom(rng.choice(binary), (rng.choice(variables), rng.choice(variables)))

    def gen(d):
        if d == 0 or rng.random() < 0.25:
            return atom()
        r = rng.random()
        v = rng.choice(variables)
        if r < 0.1:
            return fo.Not(gen(d - 1))
        if r < 0.4:
            return rng.choice((fo.And, fo.Or, fo.Implies))(gen(d - 1), gen(d - 1))
        if r < 0.65:
            return rng.choice((fo.Forall, fo.Exists))(v, gen(d - 1))
        if not extras or r < 0.75:
            return fo.Exists(v, gen(d - 1))
        if r < 0.85:
            return rng.choice((fo.CountGE, fo.CountLE))(rng.randint(0, 3), v, gen(d - 1))
        if r < 0.93:
            s, t = rng.choice(variables), rng.choice(variables)
            return fo.TC("u", "w", fo.Atom(rng.choice(binary), ("u", "w")), s, t)
        body = fo.Or(atom_on("u"), fo.Exists("w", fo.And(fo.Atom(rng.choice(binary), ("w", "u")),
                                                           fo.Atom("X", ("w",)))))
        return fo.LFP("X", "u", body, rng.choice(variables))

    def atom_on(var):
        if unary:
            return fo.Atom(rng.choice(unary), (var,))
        return fo.Atom(rng.choice(binary), (var, var))

    return gen(depth)


def random_exists_bounded(rng, binary=("R",), depth=2, variables=("x", "y", "z")):
    """A random exists-bounded sentence: bounded existentials, free universals."""
    def literal(bound):
        a, b = rng.choice(bound), rng.choice(bound)
        phi = fo.Equals(a, b) if rng.random() < 0.2 else fo.Atom(rng.choice(binary), (a, b))
        return fo.Not(phi) if rng.random() < 0.4 else phi

    def gen(d, bound):
        fresh = [v for v in variables if v not in bound]
        if d == 0 or not fresh or rng.random() < 0.2:
            return literal(bound) if bound else fo.TRUE
        v = fresh[0]
        r = rng.random()
        if r < 0.3 or not bound:
            return fo.Forall(v, gen(d - 1, bound + [v]))
        if r < 0.7:
            guard = fo.Atom(rng.choice(binary), (rng.choice(bound), v))
            return fo.Exists(v, fo.And(guard, gen(d - 1, bound + [v])))
        return rng.choice((fo.And, fo.Or))(gen(d, bound), gen(d, bound))

    return gen(depth, [])
