"""Uniformly self-similar zero-dimensional compacts, handled symbolically.

A spec describes an infinite cluster tree in which every node has
``branching`` children and nodes at level ``k`` have diameter
``root_diameter * ratio**k``.
"""

import math
import os
from dataclasses import dataclass, replace
from itertools import product

import numpy as np

from .exceptions import CapExceededError
from .metric import FiniteMetricSpace

DEFAULT_LEAF_CAP = 2 ** 16
LEAF_CAP_ENV = "CHAINDEV_LEAF_CAP"


def leaf_cap():
    """Maximum number of leaves, overridable through ``CHAINDEV_LEAF_CAP``."""
    value = os.environ.get(LEAF_CAP_ENV)
    return int(value) if value else DEFAULT_LEAF_CAP


@dataclass(frozen=True)
class SelfSimilarSpec:
    branching: int
    root_diameter: float
    ratio: float

    def __post_init__(self):
        if int(self.branching) != self.branching or self.branching < 2:
            raise ValueError(f"branching must be an integer >= 2, got {self.branching!r}")
        if not self.root_diameter > 0:
            raise ValueError(f"root_diameter must be positive, got {self.root_diameter!r}")
        if not 0 < self.ratio < 1:
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio!r}")
        object.__setattr__(self, "branching", int(self.branching))
        object.__setattr__(self, "root_diameter", float(self.root_diameter))
        object.__setattr__(self, "ratio", float(self.ratio))

    @property
    def growth(self):
        """Ratio of consecutive width-series terms, ``branching * ratio``."""
        return self.branching * self.ratio

    @property
    def convergent(self):
        return self.growth < 1

    def total_width(self):
        """Closed-form width, or ``inf`` when the series diverges."""
        if not self.convergent:
            return math.inf
        return (self.branching - 1) * self.root_diameter / (1 - self.growth)

    def diameter_at(self, level):
        return self.root_diameter * self.ratio ** level


CANTOR = SelfSimilarSpec(2, 1 / 3, 1 / 3)
CANTOR_SQUARE = SelfSimilarSpec(4, 1 / 3, 1 / 3)


@dataclass(frozen=True)
class WidthSeries:
    terms: tuple
    convergent: bool
    total: float
    ratio: float

    def partial_sum(self, n=None):
        return math.fsum(self.terms[:n])


def width_series(spec, depth):
    """First ``depth`` level contributions ``b**k * (b - 1) * r0 * q**k``."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    b, r0, q = spec.branching, spec.root_diameter, spec.ratio
    terms = tuple((b - 1) * r0 * spec.growth ** k for k in range(depth))
    return WidthSeries(terms, spec.convergent, spec.total_width(), spec.growth)


@dataclass(frozen=True)
class Verdict:
    exists: bool
    ratio: float
    minimal_diameter: float = None
    witness: str = ""


def exists_development(spec):
    """A development exists iff the width series converges."""
    if spec.convergent:
        return Verdict(True, spec.growth, spec.total_width(), "width series converges")
    if spec.growth == 1:
        witness = "ratio = 1: terms are constant and the width series diverges"
    else:
        witness = f"ratio = {spec.growth!r} > 1: terms grow and the width series diverges"
    return Verdict(False, spec.growth, None, witness)


def _check_cap(spec, depth, cap):
    cap = leaf_cap() if cap is None else cap
    if spec.branching ** depth > cap:
        raise CapExceededError(f"{spec.branching}**{depth} leaves exceeds the cap of {cap}")


def truncate(spec, depth, cap=None):
    """The finite ultrametric space of depth-``depth`` clusters.

    Leaves are labeled by their base-``b`` digit strings; two leaves are at
    distance ``r0 * q**k`` where ``k`` is the length of their common prefix.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    _check_cap(spec, depth, cap)
    b = spec.branching
    n = b ** depth
    idx = np.arange(n)
    dist = np.zeros((n, n))
    # walk from the deepest level up, so shallower common prefixes overwrite
    for k in range(depth - 1, -1, -1):
        block = b ** (depth - k)
        same_parent = (idx[:, None] // block) == (idx[None, :] // block)
        split = (idx[:, None] // (block // b)) != (idx[None, :] // (block // b))
        dist[same_parent & split] = spec.diameter_at(k)
    labels = ["".join(map(str, digits)) or "root" for digits in product(range(b), repeat=depth)]
    return FiniteMetricSpace.from_matrix(dist, labels)


@dataclass(frozen=True)
class SymbolicDevelopment:
    """Development of a spec resolved to depth ``depth``.

    Every depth-``depth`` cluster is a closed interval (its image is not
    resolved further); gaps between clusters are explicit.

    Attributes
    ----------
    intervals : tuple of (float, float)
        Leaf cluster images, left to right.
    gaps : tuple of (int, float)
        ``(level, length)`` of each removed interval, left to right.
    excess : float
        Measure added on top of the minimal development.
    """

    spec: SelfSimilarSpec
    depth: int
    intervals: tuple
    gaps: tuple
    excess: float = 0.0

    @property
    def diameter(self):
        return self.intervals[-1][1] - self.intervals[0][0]

    @property
    def leaf_length(self):
        return self.intervals[0][1] - self.intervals[0][0]

    @property
    def measure(self):
        """Total length of the leaf intervals."""
        return math.fsum(hi - lo for lo, hi in self.intervals)


def _layout(spec, depth, leaf_len):
    b = spec.branching
    intervals, gaps = [], []
    cursor = 0.0

    def place(level):
        nonlocal cursor
        if level == depth:
            intervals.append((cursor, cursor + leaf_len))
            cursor += leaf_len
            return
        for k in range(b):
            if k:
                gaps.append((level, spec.diameter_at(level)))
                cursor += spec.diameter_at(level)
            place(level + 1)

    place(0)
    return tuple(intervals), tuple(gaps)


def symbolic_development(spec, depth, cap=None):
    """Minimal development: leaf clusters get their own residual width."""
    if not spec.convergent:
        raise ValueError("no development exists: the width series diverges")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    _check_cap(spec, depth, cap)
    leaf_len = spec.total_width() * spec.ratio ** depth
    intervals, gaps = _layout(spec, depth, leaf_len)
    return SymbolicDevelopment(spec, depth, intervals, gaps)


def stretch(dev, excess):
    """Add measure ``excess`` to the image, spread evenly over leaf clusters.

    Gap lengths are untouched, so the result is still a development; its
    diameter grows by exactly ``excess``.
    """
    if excess < 0:
        raise ValueError(f"excess must be >= 0, got {excess!r}")
    if dev.depth < 1:
        raise ValueError("stretch needs depth >= 1")
    spec = dev.spec
    leaf_len = dev.leaf_length + excess / spec.branching ** dev.depth
    cursor = 0.0
    intervals = []
    gap_iter = iter(dev.gaps)
    for k in range(len(dev.intervals)):
        if k:
            cursor += next(gap_iter)[1]
        intervals.append((cursor, cursor + leaf_len))
        cursor += leaf_len
    return replace(dev, intervals=tuple(intervals), excess=dev.excess + excess)
