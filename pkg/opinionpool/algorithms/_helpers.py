import numpy as np
from scipy.special import logsumexp

from ..config import config
from ..exceptions import InvalidParameter


def check_count(n, *, minimum=1, name="n"):
    if isinstance(n, (bool, np.bool_)) or not isinstance(n, (int, np.integer)):
        raise InvalidParameter(f"{name} must be an integer; got {n!r}")
    if n < minimum:
        raise InvalidParameter(f"{name} must be at least {minimum}; got {n}")
    return int(n)


def mc_count(n):
    """Default and validate a Monte-Carlo sample count"""
    if n is None:
        n = config.get("metrics.n_samples")
    return check_count(n, minimum=config.get("metrics.min_samples"))


def check_alpha(alpha, *, closed_right=True):
    """alpha in (0, 1] (or (0, 1) with ``closed_right=False``)"""
    alpha = float(alpha)
    upper_ok = alpha <= 1 if closed_right else alpha < 1
    if not (np.isfinite(alpha) and alpha > 0 and upper_ok):
        interval = "(0, 1]" if closed_right else "(0, 1)"
        raise InvalidParameter(f"alpha must lie in {interval}; got {alpha}")
    return alpha


def mean_and_se(x):
    """Sample mean and its standard error along axis 0"""
    n = x.shape[0]
    mean = x.mean(axis=0)
    if n < 2:
        return mean, np.zeros_like(mean)
    return mean, x.std(axis=0, ddof=1) / np.sqrt(n)


def log_ess(log_w):
    """log of Kish's effective sample size for unnormalized log weights"""
    return 2 * logsumexp(log_w) - logsumexp(2 * log_w)


def normalized_weights(log_w):
    return np.exp(log_w - logsumexp(log_w))
