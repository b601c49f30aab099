"""Hellinger aggregation: the Gaussian moment-matched alpha = 0.5 Hölder pool.

With the symmetric pair-weight matrix W_ij = lambda_i lambda_j S_ij (W_jj = lambda_j**2),

    c       = sum_ij W_ij
    mean_d  = sum_ij W_ij mu_ij,d / c
    var_d   = sum_ij W_ij (var_ij,d + (mu_ij,d - mean_d)**2) / c

where the diagonal pairs reduce to (mu_j, sigma_j**2).  Summing over the full
symmetric matrix counts each pair i < j twice.  The variance is accumulated
about the mean so it stays non-negative when the means dwarf the spread.
"""
import logging

import numpy as np

from opinionpool.classes import DiagonalGaussian, ExpertSet
from opinionpool.classes._caching import pairwise_terms

from ...config import config
from ...exceptions import TooManyExperts

__all__ = ["hellinger_aggregate", "hellinger_log_normalizer", "mohel_aggregate"]

logger = logging.getLogger(__name__)


def _weighted_moments(w, mu_ij, var_ij):
    denom = w.sum()
    mean = (w @ mu_ij) / denom
    variance = (w @ (var_ij + (mu_ij - mean) ** 2)) / denom
    return mean, variance


def hellinger_moments(experts: ExpertSet):
    """Mean and variance of the alpha = 0.5 Hölder pool, before the variance floor"""
    W = experts.get_property("pair_weights")
    rows, cols, w = W.to_coo()
    mu_ij, var_ij, _ = pairwise_terms(
        experts.means[rows], experts.variances[rows], experts.means[cols], experts.variances[cols]
    )
    return _weighted_moments(w, mu_ij, var_ij)


def hellinger_aggregate(experts: ExpertSet) -> DiagonalGaussian:
    if len(experts) == 1:
        return experts[0]
    mean, variance = hellinger_moments(experts)
    return DiagonalGaussian(mean, variance)


def hellinger_log_normalizer(experts: ExpertSet):
    """log(sum_j lambda_j**2 + 2 sum_{i<j} lambda_i lambda_j S_ij)

    The log of the integral of (sum_j lambda_j sqrt(q_j))**2.
    """
    W, shift = experts.get_properties("pair_weights pair_log_shift")
    return float(np.log(W.reduce_scalar().get(0.0)) + shift)


def _subsets(M):
    # Non-empty subsets in ascending bitmask order
    for mask in range(1, 2**M):
        yield [j for j in range(M) if mask >> j & 1]


def mohel_aggregate(experts: ExpertSet) -> ExpertSet:
    """Hellinger aggregates of all 2**M - 1 non-empty subsets, as an equal-weight mixture.

    Components are ordered by subset bitmask (bit j set when expert j is
    included) ascending.  Each subset is aggregated with uniform weights.
    """
    M = len(experts)
    max_experts = config.get("mohel.max_experts")
    if M > max_experts:
        raise TooManyExperts(
            f"mohel_aggregate enumerates 2**M - 1 subsets and is capped at M = {max_experts}; "
            f"got M = {M}"
        )
    logger.debug("Aggregating %d subsets of %d experts", 2**M - 1, M)
    # All M x M cross terms once; each subset indexes into them
    mu_ij, var_ij, log_aff = pairwise_terms(
        experts.means[:, None],
        experts.variances[:, None],
        experts.means[None],
        experts.variances[None],
    )
    S = np.exp(log_aff.sum(axis=-1))
    np.fill_diagonal(S, 1.0)
    D = experts.dim
    components = []
    for ids in _subsets(M):
        if len(ids) == 1:
            components.append(experts[ids[0]])
            continue
        block = np.ix_(ids, ids)
        mean, variance = _weighted_moments(
            S[block].ravel(), mu_ij[block].reshape(-1, D), var_ij[block].reshape(-1, D)
        )
        components.append(DiagonalGaussian(mean, variance))
    return ExpertSet(components)
