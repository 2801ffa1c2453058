"""Single-model modal evaluation over bitmask world sets."""

from ..errors import StructureError
from ..syntax import modal
from .structures import as_model


def extension(M, phi):
    """Bitmask of the worlds of ``M`` where ``phi`` holds."""
    M = as_model(M)
    cache = {}
    return _ext(M, phi, cache)


def _diamond(M, label, target):
    if label == modal.UNIVERSAL:
        return M.full if target else 0
    pred = M.pred(label)
    out = 0
    t = target
    while t:
        low = t & -t
        out |= pred[low.bit_length() - 1]
        t ^= low
    return out


def _ext(M, phi, cache):
    hit = cache.get(phi)
    if hit is not None:
        return hit
    full = M.full
    if isinstance(phi, modal.Top):
        r = full
    elif isinstance(phi, modal.Bot):
        r = 0
    elif isinstance(phi, modal.Prop):
        r = M.val_mask(phi.name)
    elif isinstance(phi, modal.Not):
        r = full & ~_ext(M, phi.sub, cache)
    elif isinstance(phi, modal.And):
        r = _ext(M, phi.left, cache) & _ext(M, phi.right, cache)
    elif isinstance(phi, modal.Or):
        r = _ext(M, phi.left, cache) | _ext(M, phi.right, cache)
    elif isinstance(phi, modal.Implies):
        r = (full & ~_ext(M, phi.left, cache)) | _ext(M, phi.right, cache)
    elif isinstance(phi, modal.Iff):
        r = full & ~(_ext(M, phi.left, cache) ^ _ext(M, phi.right, cache))
    elif isinstance(phi, modal.Dia):
        r = _diamond(M, phi.label, _ext(M, phi.sub, cache))
    elif isinstance(phi, modal.Box):
        r = full & ~_diamond(M, phi.label, full & ~_ext(M, phi.sub, cache))
    else:
        raise TypeError(f"not a modal formula: {phi!r}")
    cache[phi] = r
    return r


def model_check(M, w, phi):
    """Does ``phi`` hold at world ``w`` (an id or a world name) of ``M``?"""
    if isinstance(w, str):
        w = M.index(w)
    if not 0 <= w < M.n:
        raise StructureError(f"unknown world id {w}")
    return bool(extension(M, phi) >> w & 1)


def globally_true(M, phi):
    return extension(M, phi) == M.full
