import numpy as np

from opinionpool.classes import DiagonalGaussian, ExpertSet

__all__ = ["poe_aggregate", "loglinear_aggregate"]


def _precision_pool(experts, scale):
    # Product of q_j ** scale_j, renormalized: precisions add with the given scale
    precision = scale @ (1 / experts.variances)
    variance = 1 / precision
    mean = variance * (scale @ (experts.means / experts.variances))
    return DiagonalGaussian(mean, variance)


def poe_aggregate(experts: ExpertSet) -> DiagonalGaussian:
    """Product of experts.

    Each expert contributes precision ``lambda_j * M / sigma_j**2``, so uniform
    weights give the plain (unweighted) product of the experts.
    """
    if len(experts) == 1:
        return experts[0]
    if experts.uniform:
        scale = np.ones(len(experts))
    else:
        scale = experts.weights * len(experts)
    return _precision_pool(experts, scale)


def loglinear_aggregate(experts: ExpertSet) -> DiagonalGaussian:
    """Normalized weighted geometric mean prod_j q_j ** lambda_j"""
    if len(experts) == 1:
        return experts[0]
    return _precision_pool(experts, experts.weights)
