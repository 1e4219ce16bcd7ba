"""Example spaces: Cantor-type endpoint sets, the harmonic sequence, random clouds."""

from fractions import Fraction

import numpy as np

from .exceptions import CapExceededError
from .io import InputDocument
from .selfsim import leaf_cap

KINDS = ("random-points", "cantor", "cantor-square", "harmonic")


def _cap(count, cap):
    cap = leaf_cap() if cap is None else cap
    if count > cap:
        raise CapExceededError(f"{count} points exceeds the cap of {cap}")


def cantor_endpoints(depth):
    """Left endpoints of the ``2**depth`` intervals at depth ``depth``, ascending.

    >>> [str(x) for x in cantor_endpoints(2)]
    ['0', '2/9', '2/3', '8/9']
    """
    ends = [Fraction(0)]
    for k in range(1, depth + 1):
        step = Fraction(2, 3 ** k)
        ends = [e + s for e in ends for s in (0, step)]
    return sorted(ends)


def generate(kind, depth=None, count=None, dim=2, seed=None, cap=None):
    """Build an :class:`~chaindev.io.InputDocument` of the requested kind.

    ``cantor`` and ``cantor-square`` take ``depth``; ``harmonic`` takes
    ``count`` (the points ``1/n`` for ``n = 1..count``); ``random-points``
    takes ``count``, ``dim`` and ``seed``.
    """
    if kind == "cantor":
        _require(depth, "depth")
        _cap(2 ** depth, cap)
        ends = cantor_endpoints(depth)
        return InputDocument(
            labels=[str(e) for e in ends],
            points=[[float(e)] for e in ends],
            metric="euclidean",
        )
    if kind == "cantor-square":
        _require(depth, "depth")
        _cap(4 ** depth, cap)
        ends = cantor_endpoints(depth)
        pairs = [(x, y) for x in ends for y in ends]
        return InputDocument(
            labels=[f"({x},{y})" for x, y in pairs],
            points=[[float(x), float(y)] for x, y in pairs],
            metric="chebyshev",
        )
    if kind == "harmonic":
        _require(count, "count")
        _cap(count, cap)
        return InputDocument(
            labels=[f"1/{n}" for n in range(1, count + 1)],
            points=[[1.0 / n] for n in range(1, count + 1)],
            metric="euclidean",
        )
    if kind == "random-points":
        _require(count, "count")
        _cap(count, cap)
        rng = np.random.default_rng(seed)
        pts = rng.uniform(size=(count, dim))
        return InputDocument(
            labels=[f"p{i}" for i in range(count)],
            points=pts.tolist(),
            metric="euclidean",
        )
    raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")


def _require(value, name):
    if value is None:
        raise ValueError(f"{name} is required")
    if value < 0:
        raise ValueError(f"{name} must be >= 0")
