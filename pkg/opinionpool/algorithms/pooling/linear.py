import numpy as np
from scipy.special import logsumexp

from opinionpool.classes import ExpertSet

from .._helpers import check_count
from .._random import make_rng
from ..gaussian import _log_density, as_points

__all__ = ["moe_log_density", "moe_sample", "moe_moments"]


def component_log_densities(experts: ExpertSet, z):
    """log q_j(z) as an (n, M) array for an (n, D) batch"""
    return np.stack(
        [_log_density(g.mean, g.variance, z) for g in experts],
        axis=-1,
    )


def pooled_log(experts: ExpertSet, log_q, alpha):
    """(1/alpha) * logsumexp_j(log lambda_j + alpha * log q_j)

    Linear pooling is ``alpha == 1``; both share this code path.
    """
    with np.errstate(divide="ignore"):
        log_w = np.log(experts.weights)
    return logsumexp(log_w + alpha * log_q, axis=-1) / alpha


def moe_log_density(experts: ExpertSet, z):
    """log sum_j lambda_j q_j(z)"""
    z, single = as_points(z, experts.dim)
    rv = pooled_log(experts, component_log_densities(experts, z), 1.0)
    return float(rv[0]) if single else rv


def moe_sample(experts: ExpertSet, n, seed, *, return_components=False):
    """Ancestral sampling: j ~ Categorical(lambda), then z ~ q_j"""
    n = check_count(n)
    rng = make_rng(seed)
    components = rng.choice(len(experts), size=n, p=experts.weights)
    noise = rng.standard_normal((n, experts.dim))
    z = experts.means[components] + np.sqrt(experts.variances[components]) * noise
    if return_components:
        return z, components
    return z


def moe_moments(experts: ExpertSet):
    """Closed-form mixture mean and per-dimension variance (law of total variance)"""
    lam = experts.weights
    mean = lam @ experts.means
    second = lam @ (experts.variances + experts.means**2)
    return mean, second - mean**2
