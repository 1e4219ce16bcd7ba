"""Chain distance, cluster trees and chain developments of finite metric spaces."""

from .development import (
    Development,
    build_development,
    diameter_identity,
    tv_check,
    verify_development,
)
from .exceptions import CapExceededError, InvalidSpaceError, NotUltrametricError
from .metric import (
    ChainMatrix,
    FiniteMetricSpace,
    brute_force_chain_distance,
    chain_distance,
    gap_chain_distance,
    is_ultrametric,
    validate_space,
)
from .selfsim import (
    SelfSimilarSpec,
    exists_development,
    stretch,
    symbolic_development,
    truncate,
    width_series,
)
from .tree import ClusterTree, build_tree, cluster_tree, lca_distance
from .width import check_width_mst, mst_weight, width

__version__ = "0.1.0"


def __getattr__(name):
    # keeps scikit-learn out of the import path of the CLI
    if name == "ChainDevelopment":
        from .estimator import ChainDevelopment

        return ChainDevelopment
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
