"""Chain developments: embeddings into the line preserving chain distance."""

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .metric import chain_distance, gap_chain_matrix
from .tree import cluster_tree
from .width import width

PAIR_ATOL = 1e-9
DIAMETER_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class Development:
    """Coordinates of every point plus the removed open intervals.

    Attributes
    ----------
    coords : ndarray of shape (n,)
        ``coords[i]`` is the image of point ``i``.
    width : float
        Length of the allocated interval ``[origin, origin + width]``.
    gaps : tuple of (int, float)
        ``(node id, length)`` of each removed interval, left to right.
    origin : float
    """

    coords: np.ndarray
    width: float
    gaps: tuple
    origin: float = 0.0

    @property
    def diameter(self):
        return float(self.coords.max() - self.coords.min())

    def order(self):
        """Point indices sorted by coordinate."""
        return np.argsort(self.coords, kind="stable")


def _subtree_widths(tree):
    w = [0.0] * len(tree.nodes)
    for v in reversed(tree.nodes):
        if v.children:
            w[v.id] = sum(w[c] for c in v.children) + v.r * (v.n_children - 1)
    return w


def build_development(tree, random_state=None):
    """Lay the tree out on ``[0, width]``.

    Each node places its children's intervals left to right, separated by
    ``n(v) - 1`` gaps of length ``r(v)``. Children follow the tree order
    unless ``random_state`` is given, in which case every node's children
    are shuffled independently.
    """
    rng = None if random_state is None else np.random.default_rng(random_state)
    sub = _subtree_widths(tree)
    left = [0.0] * len(tree.nodes)
    coords = np.zeros(tree.n_points)
    gaps = []
    # breadth-first ids: parents are visited before their children
    for v in tree.nodes:
        if not v.children:
            coords[tree.leaf_order[v.start]] = left[v.id]
            continue
        kids = list(v.children)
        if rng is not None:
            rng.shuffle(kids)
        cursor = left[v.id]
        for k, child in enumerate(kids):
            if k:
                gaps.append((cursor, v.id, v.r))
                cursor += v.r
            left[child] = cursor
            cursor += sub[child]
    gaps.sort()
    return Development(coords, width(tree).width, tuple((node, r) for _, node, r in gaps))


def _as_coords(space, coords):
    if isinstance(coords, Development):
        coords = coords.coords
    if isinstance(coords, Mapping):
        missing = set(range(space.n)) - set(coords)
        if missing:
            raise ValueError(f"no coordinate for points {sorted(missing)}")
        coords = [coords[i] for i in range(space.n)]
    coords = np.asarray(coords, dtype=float).reshape(-1)
    if coords.shape[0] != space.n:
        raise ValueError(f"expected {space.n} coordinates, got {coords.shape[0]}")
    return coords


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    max_error: Optional[float]
    worst_pair: Optional[tuple]
    diameter: float
    width: float
    excess: Optional[float]
    collision: Optional[tuple] = None


def verify_development(space, coords, atol=PAIR_ATOL):
    """Check that ``coords`` preserves chain distance on every pair.

    The chain distance of the image is measured with the gap rule: the
    largest gap between consecutive images lying between two points.
    """
    x = _as_coords(space, coords)
    w = width(cluster_tree(space)).width
    diameter = float(x.max() - x.min())
    order = np.argsort(x, kind="stable")
    same = np.nonzero(np.diff(x[order]) == 0)[0]
    if same.size:
        a, b = int(order[same[0]]), int(order[same[0] + 1])
        return VerificationReport(False, None, (a, b), diameter, w, None, (min(a, b), max(a, b)))
    err = np.abs(chain_distance(space).c - gap_chain_matrix(x))
    k = int(np.argmax(err))
    max_err = float(err.flat[k])
    worst = tuple(sorted(divmod(k, space.n))) if max_err > 0 else None
    passed = max_err <= atol
    return VerificationReport(passed, max_err, worst, diameter, w, diameter - w if passed else None)


@dataclass(frozen=True)
class TVReport:
    passed: bool
    triples: int
    violation: Optional[tuple] = None


def tv_check(space, coords):
    """Check ``c(x_i, x_k) == max(c(x_i, x_j), c(x_j, x_k))`` for ``i < j < k``.

    Points are enumerated in order of coordinate. Comparison is exact.
    ``violation`` holds the first failing triple as point indices.
    """
    x = _as_coords(space, coords)
    order = np.argsort(x, kind="stable")
    c = chain_distance(space).c[np.ix_(order, order)]
    n = space.n
    triples = 0
    for j in range(1, n - 1):
        expect = np.maximum.outer(c[:j, j], c[j, j + 1:])
        bad = c[:j, j + 1:] != expect
        triples += expect.size
        if bad.any():
            i, k = np.argwhere(bad)[0]
            return TVReport(False, triples, (int(order[i]), int(order[j]), int(order[j + 1 + k])))
    return TVReport(True, triples)


@dataclass(frozen=True)
class DiameterReport:
    diameter: float
    width: float
    passed: bool


def diameter_identity(space, coords, rtol=DIAMETER_RTOL):
    """Check ``diam f(X) == w(X, d)``; the image of a finite space has measure 0."""
    x = _as_coords(space, coords)
    d = float(x.max() - x.min())
    w = width(cluster_tree(space)).width
    return DiameterReport(d, w, abs(d - w) <= rtol * abs(w))
