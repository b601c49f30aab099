import numpy as np

from ..config import config
from ..exceptions import DimensionMismatch, EmptyExpertSet, InvalidWeights
from . import _caching
from .gaussian import DiagonalGaussian

__all__ = ["ExpertSet"]


class ExpertSet:
    """An ordered collection of diagonal-Gaussian experts with weights on the simplex.

    Parameters
    ----------
    experts : iterable of DiagonalGaussian
        At least one expert; all must share the same dimension.
    weights : array_like, optional
        Non-negative weights summing to one.  Uniform weights ``1/M`` by default.

    Pairwise quantities (log affinities, weighted pair matrix) are computed on
    first use and cached; see ``get_property``.
    """

    _property_getters = {
        "log_affinity": _caching.get_log_affinity,
        "log_weights": _caching.get_log_weights,
        "pair_weights": _caching.get_pair_weights,
        "pair_log_shift": _caching.get_pair_log_shift,
    }

    def __init__(self, experts, weights=None):
        experts = tuple(experts)
        if not experts:
            raise EmptyExpertSet("an expert set needs at least one expert")
        for g in experts:
            if not isinstance(g, DiagonalGaussian):
                raise TypeError(f"experts must be DiagonalGaussian; got {type(g).__name__}")
        dims = {g.dim for g in experts}
        if len(dims) != 1:
            raise DimensionMismatch(f"experts have differing dimensions: {sorted(dims)}")
        M = len(experts)
        if weights is None:
            weights = np.full(M, 1 / M)
        else:
            weights = np.array(weights, dtype=np.float64, ndmin=1)
            if weights.shape != (M,):
                raise InvalidWeights(f"expected {M} weights; got {weights.size}")
            if not np.isfinite(weights).all() or (weights < 0).any():
                raise InvalidWeights(f"weights must be finite and non-negative; got {weights}")
            total = weights.sum()
            if abs(total - 1) > config.get("weights_atol"):
                raise InvalidWeights(f"weights must sum to 1; got sum {total!r}")
        weights.flags.writeable = False
        means = np.stack([g.mean for g in experts])
        variances = np.stack([g.variance for g in experts])
        means.flags.writeable = False
        variances.flags.writeable = False
        self.experts = experts
        self.weights = weights
        self.means = means
        self.variances = variances
        self._cache = {}

    @property
    def dim(self):
        return self.means.shape[1]

    @property
    def uniform(self):
        """Whether all weights are equal"""
        return bool((self.weights == self.weights[0]).all())

    def __len__(self):
        return len(self.experts)

    def __iter__(self):
        return iter(self.experts)

    def __getitem__(self, index):
        return self.experts[index]

    def __repr__(self):
        return f"ExpertSet(M={len(self)}, D={self.dim}, weights={self.weights.tolist()})"

    def get_property(self, name):
        return self._property_getters[name](self)

    def get_properties(self, names):
        if isinstance(names, str):
            names = names.split()
        return [self.get_property(name) for name in names]

    def with_weights(self, weights):
        rv = type(self)(self.experts, weights)
        if "log_affinity" in self._cache:
            rv._cache["log_affinity"] = self._cache["log_affinity"]
        return rv

    def uniform_weights(self):
        """The same experts with uniform weights"""
        if self.uniform:
            return self
        return self.with_weights(None)

    def subset(self, ids, weights=None):
        """Experts at positions ``ids`` (uniform weights unless given).

        The cached log-affinity matrix, if present, is shared with the subset.
        """
        ids = [int(i) for i in ids]
        rv = type(self)([self.experts[i] for i in ids], weights)
        if "log_affinity" in self._cache:
            rv._cache["log_affinity"] = self._cache["log_affinity"][ids, ids].new(
                name="log_affinity"
            )
        return rv

    def permuted(self, order):
        """Experts and their weights reordered together"""
        order = [int(i) for i in order]
        return type(self)([self.experts[i] for i in order], self.weights[order])
