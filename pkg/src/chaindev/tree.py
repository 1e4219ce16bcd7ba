"""The labeled cluster tree of a finite space.

Each node is a cluster ``Q(v)`` labeled with its chain diameter ``r(v)``;
its children are the classes of ``c(x, y) < r(v)`` inside the cluster.
"""

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._mst import UnionFind, prim_mst, sorted_edges
from .exceptions import NotUltrametricError
from .metric import ChainMatrix, check_space, is_ultrametric


@dataclass(frozen=True)
class ClusterNode:
    """One cluster of the tree.

    Members are not stored on the node; they are the slice
    ``leaf_order[start:stop]`` of the owning tree, see
    :meth:`ClusterTree.members`.
    """

    id: int
    parent: Optional[int]
    children: tuple
    r: float
    level: int
    start: int
    stop: int

    @property
    def n_children(self):
        return len(self.children)

    @property
    def size(self):
        return self.stop - self.start

    @property
    def is_leaf(self):
        return not self.children


@dataclass(frozen=True)
class ClusterTree:
    """Labeled cluster tree. Node ids follow breadth-first discovery order.

    Attributes
    ----------
    nodes : tuple of ClusterNode
        Indexed by node id; ``nodes[root]`` is the root.
    root : int
    point_leaf : tuple of int
        Leaf node id of every point.
    leaf_order : tuple of int
        Points in depth-first order; every cluster is a contiguous slice.
    """

    nodes: tuple
    root: int
    point_leaf: tuple
    leaf_order: tuple

    @property
    def n_points(self):
        return len(self.point_leaf)

    def __getitem__(self, v):
        return self.nodes[v]

    def __len__(self):
        return len(self.nodes)

    def members(self, v):
        node = self.nodes[v]
        return frozenset(self.leaf_order[node.start:node.stop])

    def internal_nodes(self):
        return [v for v in self.nodes if v.children]

    def path_to_root(self, v):
        path = [v]
        while self.nodes[path[-1]].parent is not None:
            path.append(self.nodes[path[-1]].parent)
        return path


def _tree_from_edges(n, edges):
    """Flatten the ascending single-linkage merges into a cluster tree.

    All merges at one height inside one component become a single node.
    """
    # provisional nodes 0..n-1 are the leaves
    r = [0.0] * n
    kids = [()] * n
    min_member = list(range(n))
    uf = UnionFind(n)
    top = list(range(n))
    for i, j, w in sorted_edges(edges):
        parts = []
        for t in (top[uf.find(i)], top[uf.find(j)]):
            if kids[t] and r[t] == w:
                parts.extend(kids[t])
            else:
                parts.append(t)
        r.append(w)
        kids.append(tuple(parts))
        min_member.append(min(min_member[p] for p in parts))
        top[uf.union(i, j)] = len(r) - 1
    if uf.n_components != 1:
        raise ValueError("edges do not span the space")
    root_tmp = top[uf.find(0)]

    # breadth-first ids, children ordered by smallest member
    ids = {root_tmp: 0}
    order = [root_tmp]
    parent = {root_tmp: None}
    queue = deque([root_tmp])
    while queue:
        t = queue.popleft()
        for k in sorted(kids[t], key=min_member.__getitem__):
            ids[k] = len(order)
            order.append(k)
            parent[k] = t
            queue.append(k)
    children = [tuple(sorted((ids[k] for k in kids[t]))) for t in order]
    levels = [0] * len(order)
    for v in range(1, len(order)):
        levels[v] = levels[ids[parent[order[v]]]] + 1

    # depth-first leaf order and contiguous spans
    leaf_order = []
    start = [0] * len(order)
    stop = [0] * len(order)
    stack = [(0, False)]
    while stack:
        v, closing = stack.pop()
        if closing:
            stop[v] = len(leaf_order)
            continue
        start[v] = len(leaf_order)
        if not children[v]:
            leaf_order.append(order[v])
            stop[v] = len(leaf_order)
            continue
        stack.append((v, True))
        stack.extend((c, False) for c in reversed(children[v]))

    nodes = tuple(
        ClusterNode(
            id=v,
            parent=None if parent[t] is None else ids[parent[t]],
            children=children[v],
            r=float(r[t]),
            level=levels[v],
            start=start[v],
            stop=stop[v],
        )
        for v, t in enumerate(order)
    )
    point_leaf = tuple(ids[p] for p in range(n))
    return ClusterTree(nodes, 0, point_leaf, tuple(leaf_order))


def build_tree(c):
    """Build the cluster tree from an ultrametric chain matrix.

    Parameters
    ----------
    c : ChainMatrix or array-like of shape (n, n)

    Raises
    ------
    NotUltrametricError
        If ``c`` violates the strong triangle inequality, or identifies two
        distinct points.
    """
    m = c.c if isinstance(c, ChainMatrix) else np.asarray(c, dtype=float)
    try:
        ok = is_ultrametric(m)
    except ValueError as exc:
        raise NotUltrametricError(str(exc)) from exc
    if not ok:
        raise NotUltrametricError("matrix violates the strong triangle inequality")
    n = m.shape[0]
    if n > 1 and np.any(m[~np.eye(n, dtype=bool)] <= 0):
        raise NotUltrametricError("distinct points at chain distance 0")
    return _tree_from_edges(n, prim_mst(m))


def cluster_tree(space):
    """Cluster tree of a validated space, straight from its MST."""
    check_space(space)
    return _tree_from_edges(space.n, space.mst_edges())


def lca(tree, i, j):
    """Lowest common ancestor of the leaves of points ``i`` and ``j``."""
    n = tree.n_points
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"unknown point index ({i}, {j}) for {n} points")
    u, v = tree.point_leaf[i], tree.point_leaf[j]
    nodes = tree.nodes
    while nodes[u].level > nodes[v].level:
        u = nodes[u].parent
    while nodes[v].level > nodes[u].level:
        v = nodes[v].parent
    while u != v:
        u, v = nodes[u].parent, nodes[v].parent
    return u


def lca_distance(tree, i, j):
    """``r`` of the lowest common ancestor; 0 when ``i == j``."""
    return tree.nodes[lca(tree, i, j)].r


def lca_matrix(tree):
    """All-pairs :func:`lca_distance` as a dense matrix."""
    n = tree.n_points
    m_sorted = np.zeros((n, n))
    # parents precede children in breadth-first order, so children overwrite
    for node in tree.nodes:
        if node.children:
            m_sorted[node.start:node.stop, node.start:node.stop] = node.r
        else:
            m_sorted[node.start, node.start] = 0.0
    perm = np.asarray(tree.leaf_order)
    out = np.empty_like(m_sorted)
    out[np.ix_(perm, perm)] = m_sorted
    return out
