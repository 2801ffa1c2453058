"""Finite Kripke frames, models and relational structures.

Worlds are dense integer ids ``0..n-1``; every world also carries a display
name used by the file format and in reports.  Relations are kept both as
frozen pair sets and as per-world successor/predecessor bitmasks (Python
ints), the latter being the hot path for model checking.
"""

from __future__ import annotations

from ..errors import StructureError
from ..syntax.modal import UNIVERSAL


def _names(worlds):
    if isinstance(worlds, int):
        return tuple(f"w{i}" for i in range(worlds))
    names = tuple(str(w) for w in worlds)
    if len(set(names)) != len(names):
        raise StructureError("world names must be unique")
    for name in names:
        if not name or any(c.isspace() for c in name):
            raise StructureError(f"invalid world name {name!r}")
    return names


def _pairs(pairs, n, what):
    out = set()
    for pair in pairs:
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise StructureError(f"{what} references a world outside 0..{n - 1}: {pair}")
        out.add((int(a), int(b)))
    return frozenset(out)


def _worlds(ws, n, what):
    out = set()
    for w in ws:
        if not 0 <= w < n:
            raise StructureError(f"{what} references a world outside 0..{n - 1}: {w}")
        out.add(int(w))
    return frozenset(out)


def mask_of(ws):
    m = 0
    for w in ws:
        m |= 1 << w
    return m


def members(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Frame:
    """Worlds plus labelled binary relations."""

    def __init__(self, worlds, relations=None, name="F"):
        self.names = _names(worlds)
        self.n = len(self.names)
        self.name = name
        rels = {}
        for label, pairs in (relations or {}).items():
            if label == UNIVERSAL:
                raise StructureError(f"relation name {UNIVERSAL!r} is reserved for the universal modality")
            rels[label] = _pairs(pairs, self.n, f"relation {label}")
        self.relations = rels
        self._succ = {}
        self._pred = {}
        self._index = None

    @property
    def worlds(self):
        return range(self.n)

    @property
    def labels(self):
        return tuple(sorted(self.relations))

    @property
    def full(self):
        return (1 << self.n) - 1

    def index(self, name):
        if self._index is None:
            self._index = {nm: i for i, nm in enumerate(self.names)}
        try:
            return self._index[name]
        except KeyError:
            raise StructureError(f"unknown world {name!r}") from None

    def rel(self, label):
        return self.relations.get(label, frozenset())

    def succ(self, label):
        """Per-world successor bitmasks for ``label`` (``U`` relates everything)."""
        if label == UNIVERSAL:
            return [self.full] * self.n
        if label not in self._succ:
            s = [0] * self.n
            for a, b in self.rel(label):
                s[a] |= 1 << b
            self._succ[label] = s
        return self._succ[label]

    def pred(self, label):
        if label == UNIVERSAL:
            return [self.full] * self.n
        if label not in self._pred:
            s = [0] * self.n
            for a, b in self.rel(label):
                s[b] |= 1 << a
            self._pred[label] = s
        return self._pred[label]

    def successors(self, w, label):
        return members(self.succ(label)[w])

    def matrix(self, label):
        import numpy as np
        m = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.rel(label):
            m[a, b] = True
        return m

    @property
    def frame(self):
        return self

    def key(self):
        return (self.n, tuple(sorted((k, tuple(sorted(v))) for k, v in self.relations.items() if v)))

    def __eq__(self, other):
        return isinstance(other, Frame) and type(other) is type(self) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        rels = ", ".join(f"{k}:{len(v)}" for k, v in sorted(self.relations.items()))
        return f"Frame({self.name!r}, {self.n} worlds, {rels})"

    def to_structure(self):
        return FOStructure(self.names, binary=self.relations, name=self.name)

    def with_relations(self, relations, name=None):
        return Frame(self.names, relations, name or self.name)


class Model(Frame):
    """A frame together with a valuation of propositions.

    Propositions that are absent from the valuation denote the empty set.
    """

    def __init__(self, worlds, relations=None, valuation=None, name="M"):
        super().__init__(worlds, relations, name)
        self.valuation = {p: _worlds(ws, self.n, f"proposition {p}")
                          for p, ws in (valuation or {}).items()}

    @classmethod
    def on(cls, frame, valuation=None, name=None):
        return cls(frame.names, frame.relations, valuation, name or frame.name)

    @property
    def frame(self):
        return Frame(self.names, self.relations, self.name)

    @property
    def props(self):
        return tuple(sorted(self.valuation))

    def val(self, p):
        return self.valuation.get(p, frozenset())

    def val_mask(self, p):
        return mask_of(self.val(p))

    def true_props(self, w):
        return frozenset(p for p, ws in self.valuation.items() if w in ws)

    def with_valuation(self, p, worlds):
        """The model ``M[p -> worlds]``."""
        val = dict(self.valuation)
        val[p] = worlds
        return Model(self.names, self.relations, val, self.name)

    def key(self):
        val = tuple(sorted((p, tuple(sorted(ws))) for p, ws in self.valuation.items() if ws))
        return super().key() + (val,)

    def __repr__(self):
        return f"Model({self.name!r}, {self.n} worlds, props={list(self.props)})"

    def to_structure(self):
        return FOStructure(self.names, unary=self.valuation, binary=self.relations, name=self.name)


def as_model(obj):
    if isinstance(obj, Model):
        return obj
    if isinstance(obj, Frame):
        return Model.on(obj)
    if isinstance(obj, FOStructure):
        return obj.to_model()
    raise TypeError(f"cannot view {obj!r} as a model")


class FOStructure:
    """Domain with named unary and binary relations."""

    def __init__(self, domain, unary=None, binary=None, name="A"):
        self.names = _names(domain)
        self.n = len(self.names)
        self.name = name
        self.unary = {k: _worlds(v, self.n, f"relation {k}") for k, v in (unary or {}).items()}
        self.binary = {k: _pairs(v, self.n, f"relation {k}") for k, v in (binary or {}).items()}
        clash = set(self.unary) & set(self.binary)
        if clash:
            raise StructureError(f"relation names used with two arities: {sorted(clash)}")
        self._index = None
        self._succ = {}

    @property
    def domain(self):
        return range(self.n)

    @property
    def signature(self):
        sig = {k: 1 for k in self.unary}
        sig.update({k: 2 for k in self.binary})
        return sig

    def index(self, name):
        if self._index is None:
            self._index = {nm: i for i, nm in enumerate(self.names)}
        try:
            return self._index[name]
        except KeyError:
            raise StructureError(f"unknown element {name!r}") from None

    def succ(self, rel):
        if rel not in self._succ:
            s = [0] * self.n
            for a, b in self.binary.get(rel, ()):
                s[a] |= 1 << b
            self._succ[rel] = s
        return self._succ[rel]

    def holds(self, rel, args):
        if len(args) == 1:
            return args[0] in self.unary.get(rel, ())
        return tuple(args) in self.binary.get(rel, ())

    def key(self):
        return (self.n,
                tuple(sorted((k, tuple(sorted(v))) for k, v in self.unary.items() if v)),
                tuple(sorted((k, tuple(sorted(v))) for k, v in self.binary.items() if v)))

    def __eq__(self, other):
        return isinstance(other, FOStructure) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"FOStructure({self.name!r}, {self.n} elements, "
                f"unary={sorted(self.unary)}, binary={sorted(self.binary)})")

    def to_model(self):
        return Model(self.names, self.binary, self.unary, self.name)

    def to_frame(self):
        return Frame(self.names, self.binary, self.name)

    def induced(self, elements, name=None):
        """Induced substructure on ``elements`` (renumbered in increasing order)."""
        keep = sorted(set(elements))
        pos = {e: i for i, e in enumerate(keep)}
        unary = {k: [pos[e] for e in v if e in pos] for k, v in self.unary.items()}
        binary = {k: [(pos[a], pos[b]) for a, b in v if a in pos and b in pos]
                  for k, v in self.binary.items()}
        return FOStructure([self.names[e] for e in keep], unary, binary, name or self.name)


def is_isomorphism(a, b, f):
    """Check that the world map ``f`` is an isomorphism between two frames or models."""
    if a.n != b.n or sorted(f[w] for w in a.worlds) != list(b.worlds):
        return False
    for label in set(a.relations) | set(b.relations):
        if {(f[x], f[y]) for x, y in a.rel(label)} != set(b.rel(label)):
            return False
    if isinstance(a, Model) or isinstance(b, Model):
        a, b = as_model(a), as_model(b)
        for p in set(a.valuation) | set(b.valuation):
            if {f[w] for w in a.val(p)} != set(b.val(p)):
                return False
    return True
