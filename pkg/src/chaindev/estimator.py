"""Scikit-learn style front end."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, _fit_context
from sklearn.utils._param_validation import StrOptions
from sklearn.utils.validation import check_is_fitted, validate_data

from .development import build_development
from .metric import METRICS, FiniteMetricSpace, chain_distance, check_space
from .tree import cluster_tree
from .width import mst_weight, width


def check_dissimilarity(X):
    """Validate a precomputed dissimilarity matrix and return it as floats."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"precomputed input must be a square matrix, got shape {X.shape}")
    return X


class ChainDevelopment(TransformerMixin, BaseEstimator):
    """Embed samples into the real line preserving chain distance.

    The chain distance between two samples is the smallest ``eps`` such
    that they can be joined by a sequence of samples with consecutive
    distances at most ``eps`` (the single-linkage merge height). The
    embedding has the smallest possible diameter, equal to the weight of a
    minimum spanning tree of the samples.

    Parameters
    ----------
    metric : {"euclidean", "chebyshev", "manhattan", "precomputed"}, default="euclidean"
        With ``"precomputed"``, ``X`` is a symmetric dissimilarity matrix.
    shuffle_children : bool, default=False
        Lay out the children of each cluster in random order instead of by
        smallest member. Any order gives a valid embedding of the same
        diameter.
    random_state : int, Generator or None, default=None
        Seed for ``shuffle_children``.

    Attributes
    ----------
    space_ : FiniteMetricSpace
    tree_ : ClusterTree
    width_ : float
        Diameter of the embedding.
    development_ : Development
    embedding_ : ndarray of shape (n_samples, 1)

    Examples
    --------
    >>> import numpy as np
    >>> from chaindev import ChainDevelopment
    >>> X = np.array([[0.0], [1.0], [1.5], [3.0]])
    >>> ChainDevelopment().fit(X).width_
    3.0
    """

    _parameter_constraints = {
        "metric": [StrOptions(set(METRICS) | {"precomputed"})],
        "shuffle_children": ["boolean"],
        "random_state": ["random_state"],
    }

    def __init__(self, metric="euclidean", shuffle_children=False, random_state=None):
        self.metric = metric
        self.shuffle_children = shuffle_children
        self.random_state = random_state

    @_fit_context(prefer_skip_nested_validation=True)
    def fit(self, X, y=None):
        if self.metric == "precomputed":
            X = check_dissimilarity(X)
            self.n_features_in_ = X.shape[1]
            space = FiniteMetricSpace.from_matrix(X)
        else:
            X = validate_data(self, X, ensure_min_samples=1)
            space = FiniteMetricSpace.from_points(X, self.metric)
        check_space(space)
        self.space_ = space
        self.tree_ = cluster_tree(space)
        self.width_ = width(self.tree_).width
        seed = None
        if self.shuffle_children:
            seed = self.random_state if self.random_state is not None else np.random.default_rng()
        self.development_ = build_development(self.tree_, random_state=seed)
        self.embedding_ = self.development_.coords.reshape(-1, 1)
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_

    def transform(self, X):
        """Return the embedding of the fitted samples.

        The embedding is transductive: ``X`` must be the training data.
        """
        check_is_fitted(self)
        if self.metric != "precomputed":
            X = validate_data(self, X, reset=False)
        if np.asarray(X).shape[0] != self.embedding_.shape[0]:
            raise ValueError("ChainDevelopment cannot embed unseen samples; pass the training data")
        return self.embedding_

    def chain_distances(self):
        """Dense chain distance matrix of the fitted samples."""
        check_is_fitted(self)
        return chain_distance(self.space_).c

    def mst_certificate(self):
        check_is_fitted(self)
        return mst_weight(self.space_)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.pairwise = self.metric == "precomputed"
        return tags
