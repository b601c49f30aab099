import logging

import numpy as np
from scipy.special import logsumexp

from opinionpool.classes import ExpertSet, HolderMoments, NormalizationEstimate

from ...config import config
from .._helpers import check_alpha, check_count, log_ess, mc_count, normalized_weights
from .._random import make_rng
from ..gaussian import as_points
from .linear import component_log_densities, moe_sample, pooled_log

__all__ = [
    "holder_log_density_unnorm",
    "holder_normalize",
    "holder_moments",
    "holder_resample",
    "resample_systematic",
]

logger = logging.getLogger(__name__)


def holder_log_density_unnorm(experts: ExpertSet, alpha, z):
    """log (sum_j lambda_j q_j(z) ** alpha) ** (1 / alpha), without normalization"""
    alpha = check_alpha(alpha)
    z, single = as_points(z, experts.dim)
    rv = pooled_log(experts, component_log_densities(experts, z), alpha)
    return float(rv[0]) if single else rv


def _importance_log_weights(experts, alpha, log_q):
    """log of the unnormalized pool over the uniform mixture, per draw

    Both pools are taken relative to the per-draw largest log q_j, which cancels
    in the ratio.
    """
    delta = log_q - log_q.max(axis=-1, keepdims=True)
    ratio = np.exp(delta)
    scaled = ratio if alpha == 1 else np.exp(alpha * delta)
    with np.errstate(divide="ignore"):
        return np.log(scaled @ experts.weights) / alpha - np.log(ratio.mean(axis=-1))


def _importance_draws(experts, alpha, n, seed):
    # Proposal: the uniform-weight mixture of the same experts
    z = moe_sample(experts.uniform_weights(), n, seed)
    log_q = component_log_densities(experts, z)
    return z, _importance_log_weights(experts, alpha, log_q)


def _ess(log_w, n):
    ess = float(np.exp(log_ess(log_w)))
    low = ess < config.get("holder.ess_warning_fraction") * n
    if low:
        logger.warning("Low effective sample size: %.1f of %d draws", ess, n)
    else:
        logger.debug("Effective sample size: %.1f of %d draws", ess, n)
    return ess, low


def holder_normalize(experts: ExpertSet, alpha, n=None, seed=None) -> NormalizationEstimate:
    """Importance-sampling estimate of log of the integral of the unnormalized Hölder pool.

    Draws come from the uniform-weight mixture of the experts.  ``std_err`` is
    the delta-method standard error of the log estimate.  A small effective
    sample size sets ``low_ess`` rather than raising.
    """
    alpha = check_alpha(alpha)
    n = mc_count(n)
    _, log_w = _importance_draws(experts, alpha, n, seed)
    log_norm = logsumexp(log_w) - np.log(n)
    w = np.exp(log_w - log_w.max())
    rel_se = w.std(ddof=1) / (np.sqrt(n) * w.mean())
    ess, low = _ess(log_w, n)
    return NormalizationEstimate(float(log_norm), float(rel_se), ess, bool(low))


def holder_moments(experts: ExpertSet, alpha, n=None, seed=None) -> HolderMoments:
    """Self-normalized importance-sampling mean and variance of the normalized Hölder pool"""
    alpha = check_alpha(alpha)
    n = mc_count(n)
    z, log_w = _importance_draws(experts, alpha, n, seed)
    w = normalized_weights(log_w)
    mean = w @ z
    centered = (z - mean) ** 2
    variance = w @ centered
    w2 = w**2
    mean_se = np.sqrt(w2 @ centered)
    variance_se = np.sqrt(w2 @ (centered - variance) ** 2)
    ess, _ = _ess(log_w, n)
    return HolderMoments(mean, variance, mean_se, variance_se, ess)


def resample_systematic(log_weights, n, rng):
    """Indices of ``n`` systematic-resampling draws for the given log weights"""
    n = check_count(n)
    rng = make_rng(rng)
    cumulative = np.cumsum(normalized_weights(np.asarray(log_weights, dtype=np.float64)))
    positions = (rng.random() + np.arange(n)) / n
    indices = np.searchsorted(cumulative, positions, side="right")
    return np.minimum(indices, cumulative.size - 1)


def holder_resample(experts: ExpertSet, alpha, n, seed):
    """``n`` approximate draws from the normalized Hölder pool and the ESS behind them"""
    alpha = check_alpha(alpha)
    n = check_count(n)
    rng = make_rng(seed)
    z, log_w = _importance_draws(experts, alpha, n, rng)
    ess, _ = _ess(log_w, n)
    return z[resample_systematic(log_w, n, rng)], ess
