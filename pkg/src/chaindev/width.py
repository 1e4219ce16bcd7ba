"""Width of a cluster tree and the MST certificate for disconnectivity."""

import math
from dataclasses import dataclass, field

from ._mst import UnionFind, kruskal_mst
from .metric import chain_distance, check_space
from .tree import build_tree

WIDTH_MST_RTOL = 1e-9


@dataclass(frozen=True)
class WidthReport:
    width: float
    per_node_terms: dict = field(default_factory=dict)


@dataclass(frozen=True)
class DisCertificate:
    """Identification pairs ``(i, j, d)`` whose quotient is connected."""

    pairs: tuple
    total: float

    def connects(self, n):
        """True if identifying every pair leaves a single component."""
        uf = UnionFind(n)
        for i, j, _ in self.pairs:
            uf.union(i, j)
        return uf.n_components == 1


def width(tree):
    """Sum of ``r(v) * (n(v) - 1)`` over the internal nodes of ``tree``."""
    terms = {v.id: v.r * (v.n_children - 1) for v in tree.nodes if v.children}
    return WidthReport(math.fsum(terms.values()), terms)


def mst_weight(space):
    """Kruskal MST of the complete graph, as a disconnectivity certificate."""
    check_space(space)
    pairs = tuple(kruskal_mst(space.dist))
    return DisCertificate(pairs, math.fsum(w for _, _, w in pairs))


@dataclass(frozen=True)
class WidthMSTReport:
    width: float
    mst_total: float
    difference: float
    passed: bool


def check_width_mst(space):
    """Compare the tree width with the MST weight of ``space``."""
    w = width(build_tree(chain_distance(space))).width
    total = mst_weight(space).total
    diff = abs(w - total)
    return WidthMSTReport(w, total, diff, diff <= WIDTH_MST_RTOL * max(1.0, w))
