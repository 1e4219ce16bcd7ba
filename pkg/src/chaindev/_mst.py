"""Minimum spanning tree routines and a union-find with member lists."""

import numpy as np
from scipy.spatial.distance import cdist


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path compression and union by size.

    Each root also keeps the list of its members, so that merging two
    components can touch every cross pair.

    >>> uf = UnionFind(4)
    >>> uf.union(0, 1)
    0
    >>> uf.find(1)
    0
    >>> sorted(uf.members(0))
    [0, 1]
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self._members = [[i] for i in range(n)]
        self.n_components = n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def members(self, root):
        return self._members[root]

    def union(self, x, y):
        """Merge the sets of ``x`` and ``y``; return the surviving root."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if len(self._members[rx]) < len(self._members[ry]):
            rx, ry = ry, rx
        self.parent[ry] = rx
        self._members[rx].extend(self._members[ry])
        self._members[ry] = []
        self.n_components -= 1
        return rx


def kruskal_mst(dist):
    """Ascending edge sweep over the complete graph.

    Ties are broken by lexicographic ``(i, j)`` with ``i < j``. Returns a
    list of ``(i, j, w)`` with ``w`` taken verbatim from ``dist``.
    """
    dist = np.asarray(dist)
    n = dist.shape[0]
    if n < 2:
        return []
    iu, ju = np.triu_indices(n, k=1)
    w = dist[iu, ju]
    # triu_indices is row-major, so a stable sort keeps (i, j) order among ties
    order = np.argsort(w, kind="stable")
    uf = UnionFind(n)
    edges = []
    for e in order:
        i, j = int(iu[e]), int(ju[e])
        if uf.find(i) != uf.find(j):
            uf.union(i, j)
            edges.append((i, j, w[e].item()))
            if uf.n_components == 1:
                break
    return edges


def _prim(n, row):
    """Dense Prim's algorithm; ``row(v)`` returns distances from ``v``."""
    if n < 2:
        return []
    best = np.array(row(0), dtype=float, copy=True)
    parent = np.zeros(n, dtype=np.intp)
    done = np.zeros(n, dtype=bool)
    done[0] = True
    best[0] = np.inf
    edges = []
    for _ in range(n - 1):
        v = int(np.argmin(best))
        u = int(parent[v])
        edges.append((min(u, v), max(u, v), best[v].item()))
        done[v] = True
        best[v] = np.inf
        d = row(v)
        closer = (d < best) & ~done
        best[closer] = d[closer]
        parent[closer] = v
    return edges


def prim_mst(dist):
    """MST of a dense symmetric matrix, O(n^2) time."""
    dist = np.asarray(dist, dtype=float)
    return _prim(dist.shape[0], lambda v: dist[v])


def prim_mst_points(points, metric):
    """MST of a point cloud without materialising the distance matrix."""
    points = np.asarray(points, dtype=float)
    return _prim(points.shape[0], lambda v: cdist(points[v:v + 1], points, metric)[0])


def sorted_edges(edges):
    """Edges in ascending ``(w, i, j)`` order."""
    return sorted(edges, key=lambda e: (e[2], e[0], e[1]))
