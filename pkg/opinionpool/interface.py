from functools import partial

from . import algorithms
from .classes import DiagonalGaussian, ExpertSet
from .exceptions import UnknownMethod

__all__ = ["Aggregators", "get_aggregator", "pooled_density", "POOL_METHODS", "SWEEP_METHODS"]


class Aggregators:
    """Aggregation methods by id.

    Each entry maps an ExpertSet to a DiagonalGaussian (closed-form pools), an
    ExpertSet (mixtures of Gaussians) or a PooledDensity.
    """

    mod = algorithms.pooling
    # ======================
    poe = mod.poe_aggregate
    moe = mod.moe_pool
    holder05 = partial(mod.holder_pool, alpha=0.5)
    hellinger = mod.hellinger_aggregate
    mohel = mod.mohel_aggregate
    wb = mod.wasserstein_barycenter

    del mod


POOL_METHODS = ("poe", "moe", "holder05", "hellinger", "mohel", "wb")
SWEEP_METHODS = ("poe", "moe", "holder05", "hellinger", "wb")


def get_aggregator(method):
    if method not in POOL_METHODS:
        raise UnknownMethod(
            f"Unknown aggregation method {method!r}; expected one of {', '.join(POOL_METHODS)}"
        )
    return getattr(Aggregators, method)


def pooled_density(method, experts: ExpertSet):
    """Apply ``method`` and wrap the result as a PooledDensity"""
    rv = get_aggregator(method)(experts)
    if isinstance(rv, DiagonalGaussian):
        return algorithms.gaussian_pool(method, experts, rv)
    if isinstance(rv, ExpertSet):
        return algorithms.moe_pool(rv)
    return rv
