"""Finite metric spaces, chain distance and its oracles."""

from bisect import bisect_left
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from ._mst import UnionFind, prim_mst, prim_mst_points, sorted_edges
from .exceptions import InvalidSpaceError

METRICS = {"euclidean": "euclidean", "chebyshev": "chebyshev", "manhattan": "cityblock"}

TRIANGLE_TOL = 1e-12
BRUTE_FORCE_MAX_N = 10


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Labeled points with a symmetric dissimilarity.

    Either ``dist`` is given explicitly, or ``points`` together with a metric
    name; in the latter case the dense matrix is computed on first access
    and MST routines work row by row instead.

    Parameters
    ----------
    labels : sequence of str
    dist : ndarray of shape (n, n), optional
    points : ndarray of shape (n, m), optional
    metric : {"euclidean", "chebyshev", "manhattan"}, optional
    require_metric : bool, default=False
        Whether validation should also check the triangle inequality.
    """

    labels: tuple
    dist_matrix: Optional[np.ndarray] = field(default=None, repr=False)
    points: Optional[np.ndarray] = field(default=None, repr=False)
    metric: Optional[str] = None
    require_metric: bool = False

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        n = len(self.labels)
        if n < 1:
            raise ValueError("a space needs at least one point")
        if len(set(self.labels)) != n:
            raise ValueError("labels must be unique")
        if (self.dist_matrix is None) == (self.points is None):
            raise ValueError("give exactly one of dist_matrix or points")
        if self.dist_matrix is not None:
            d = np.array(self.dist_matrix, dtype=float)
            if d.shape != (n, n):
                raise ValueError(f"dist has shape {d.shape}, expected {(n, n)}")
            if not np.all(np.isfinite(d)):
                raise ValueError("dist entries must be finite")
            d.setflags(write=False)
            object.__setattr__(self, "dist_matrix", d)
        else:
            if self.metric not in METRICS:
                raise ValueError(f"unknown metric {self.metric!r}; choose from {sorted(METRICS)}")
            p = np.array(self.points, dtype=float)
            if p.ndim == 1:
                p = p[:, None]
            if p.ndim != 2 or p.shape[0] != n:
                raise ValueError(f"points has shape {p.shape}, expected ({n}, m)")
            if not np.all(np.isfinite(p)):
                raise ValueError("coordinates must be finite")
            p.setflags(write=False)
            object.__setattr__(self, "points", p)

    @classmethod
    def from_matrix(cls, dist, labels=None, require_metric=False):
        dist = np.asarray(dist, dtype=float)
        if labels is None:
            labels = [str(i) for i in range(dist.shape[0])]
        return cls(labels, dist_matrix=dist, require_metric=require_metric)

    @classmethod
    def from_points(cls, points, metric="euclidean", labels=None, require_metric=False):
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if labels is None:
            labels = [str(i) for i in range(points.shape[0])]
        return cls(labels, points=points, metric=metric, require_metric=require_metric)

    @property
    def n(self):
        return len(self.labels)

    def __len__(self):
        return self.n

    @cached_property
    def dist(self):
        """Dense (n, n) dissimilarity matrix (read-only)."""
        if self.dist_matrix is not None:
            return self.dist_matrix
        d = cdist(self.points, self.points, METRICS[self.metric])
        d.setflags(write=False)
        return d

    def mst_edges(self):
        """MST edges ``(i, j, w)`` computed with Prim's algorithm."""
        if self.dist_matrix is None and "dist" not in self.__dict__:
            return prim_mst_points(self.points, METRICS[self.metric])
        return prim_mst(self.dist)


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid


def _pairs(mask):
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(mask, k=1)))]


def validate_space(space, require_metric=None):
    """Check the axioms of a (semi)metric and report every violation.

    Never raises. Triangle inequality violations are reported once per
    offending pair ``(i, k)`` together with one witness ``j``.
    """
    if require_metric is None:
        require_metric = space.require_metric
    out = []
    if space.dist_matrix is None and not require_metric:
        # symmetric with zero diagonal by construction; only duplicates can fail
        _, first, counts = np.unique(space.points, axis=0, return_index=True, return_counts=True)
        for f, cnt in zip(first, counts):
            if cnt > 1:
                dup = np.nonzero(np.all(space.points == space.points[f], axis=1))[0]
                out.append(Violation("positivity", (int(dup[0]), int(dup[1])),
                                     "distinct points at distance 0"))
        return ValidationReport(tuple(out))

    d = space.dist
    for i in np.nonzero(np.diag(d) != 0)[0]:
        out.append(Violation("diagonal", (int(i), int(i)), f"d[{i}][{i}] = {float(d[i, i])!r}"))
    for i, j in _pairs(d != d.T):
        out.append(Violation("symmetry", (i, j), f"d[{i}][{j}] = {float(d[i, j])!r} != d[{j}][{i}] = {float(d[j, i])!r}"))
    for i, j in _pairs(d <= 0):
        out.append(Violation("positivity", (i, j), f"d[{i}][{j}] = {float(d[i, j])!r}"))
    if require_metric and d.shape[0] > 2:
        for i in range(d.shape[0]):
            # via[j, k] = d[i, j] + d[j, k]
            via = d[i][:, None] + d
            bad = d[i][None, :] > via + TRIANGLE_TOL
            for k in np.nonzero(bad.any(axis=0))[0]:
                if k <= i:
                    continue
                j = int(np.argmax(bad[:, k]))
                out.append(Violation(
                    "triangle", (i, j, int(k)),
                    f"d[{i}][{k}] = {float(d[i, k])!r} > d[{i}][{j}] + d[{j}][{k}] = {float(d[i, j] + d[j, k])!r}"))
    return ValidationReport(tuple(out))


def check_space(space):
    """Raise :class:`InvalidSpaceError` unless ``space`` validates."""
    report = validate_space(space)
    if not report.valid:
        raise InvalidSpaceError(report)
    return space


@dataclass(frozen=True, eq=False)
class ChainMatrix:
    """Chain (minimax) distances; every entry is a copy of some input entry."""

    c: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        self.c.setflags(write=False)

    @property
    def n(self):
        return self.c.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.c if dtype is None else self.c.astype(dtype)


def _chain_from_edges(n, edges):
    c = np.zeros((n, n))
    uf = UnionFind(n)
    for i, j, w in sorted_edges(edges):
        a, b = uf.members(uf.find(i)), uf.members(uf.find(j))
        c[np.ix_(a, b)] = w
        c[np.ix_(b, a)] = w
        uf.union(i, j)
    return c


def chain_distance(space):
    """All-pairs chain distance of a validated space.

    MST edges are swept in ascending order; the edge that merges two
    components is the chain distance of every cross pair.
    """
    check_space(space)
    return ChainMatrix(_chain_from_edges(space.n, space.mst_edges()), space.labels)


def brute_force_chain_distance(space, i, j):
    """Minimax over every simple chain from ``i`` to ``j``.

    Exhaustive depth-first enumeration, pruned only by the incumbent value.
    Intended as a test oracle for small spaces.
    """
    n = space.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"point index out of range for n = {n}")
    if i == j:
        return 0.0
    d = space.dist.tolist()
    best = d[i][j]
    visited = [False] * n
    visited[i] = True

    def extend(u, bottleneck):
        nonlocal best
        for v in range(n):
            if visited[v]:
                continue
            b = max(bottleneck, d[u][v])
            if b >= best:
                continue
            if v == j:
                best = b
                continue
            visited[v] = True
            extend(v, b)
            visited[v] = False

    extend(i, 0.0)
    return float(best)


def is_ultrametric(matrix):
    """True iff ``m[i][k] <= max(m[i][j], m[j][k])`` for every triple.

    A symmetric matrix with zero diagonal is ultrametric exactly when it
    equals its own chain distance, which takes O(n^2) instead of O(n^3).
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(m, m.T) or np.any(np.diag(m) != 0):
        raise ValueError("expected a symmetric matrix with zero diagonal")
    return bool(np.array_equal(_chain_from_edges(m.shape[0], prim_mst(m)), m))


def gap_chain_distance(points: Sequence[float], s, t):
    """Chain distance between ``s`` and ``t`` inside a finite subset of the line.

    It is the largest gap between consecutive members lying between them.

    >>> gap_chain_distance([0, 1, 1.5, 3], 0, 3)
    1.5
    """
    pts = sorted(points)
    a, b = bisect_left(pts, s), bisect_left(pts, t)
    if a == len(pts) or pts[a] != s:
        raise ValueError(f"{s!r} is not in the set")
    if b == len(pts) or pts[b] != t:
        raise ValueError(f"{t!r} is not in the set")
    if a > b:
        a, b = b, a
    if a == b:
        return 0.0
    return float(max(pts[k + 1] - pts[k] for k in range(a, b)))


def gap_chain_matrix(coords):
    """All-pairs version of :func:`gap_chain_distance`, indexed like ``coords``."""
    coords = np.asarray(coords, dtype=float)
    n = coords.shape[0]
    order = np.argsort(coords, kind="stable")
    gaps = np.diff(coords[order])
    g = np.zeros((n, n))
    for a in range(n - 1):
        g[a, a + 1:] = np.maximum.accumulate(gaps[a:])
    g = g + g.T
    out = np.empty_like(g)
    out[np.ix_(order, order)] = g
    return out
