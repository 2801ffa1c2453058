import dataclasses


class Node:
    """Immutable AST node base with structural equality and a cached hash.

    Subclasses are declared with ``@dataclass(frozen=True, eq=False)`` so that
    this class's ``__eq__``/``__hash__`` stay in effect.  Tableau search hashes
    the same formulas many times, hence the cache.
    """

    __slots__ = ()

    def _fields(self):
        return tuple(getattr(self, f.name) for f in dataclasses.fields(self))

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((type(self).__name__,) + self._fields())
            object.__setattr__(self, "_hash", h)
            return h

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented
        if hash(self) != hash(other):
            return False
        return self._fields() == other._fields()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result
