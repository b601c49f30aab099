import numpy as np

from opinionpool.classes import CrossTerms, DiagonalGaussian
from opinionpool.classes._caching import pairwise_terms

from ..exceptions import DimensionMismatch
from ._helpers import check_count
from ._random import make_rng

__all__ = ["log_density", "sample", "cross_terms", "entropy", "gaussian_kl"]

LOG_2PI = np.log(2 * np.pi)


def as_points(z, dim):
    """``z`` as an (n, dim) array and whether it was a single point"""
    z = np.asarray(z, dtype=np.float64)
    single = z.ndim <= 1
    z = np.atleast_2d(z.reshape(-1) if z.ndim == 0 else z)
    if z.ndim != 2 or z.shape[1] != dim:
        raise DimensionMismatch(f"expected points of dimension {dim}; got shape {z.shape}")
    return z, single


def _log_density(mean, variance, z):
    # z is (n, D)
    return -0.5 * np.sum(LOG_2PI + np.log(variance) + (z - mean) ** 2 / variance, axis=-1)


def log_density(g: DiagonalGaussian, z):
    """log N(z; mean, diag(variance)) for one point or an (n, D) batch"""
    z, single = as_points(z, g.dim)
    rv = _log_density(g.mean, g.variance, z)
    return float(rv[0]) if single else rv


def sample(g: DiagonalGaussian, n, seed):
    """n i.i.d. draws as an (n, D) array"""
    n = check_count(n)
    rng = make_rng(seed)
    return g.mean + g.std * rng.standard_normal((n, g.dim))


def cross_terms(a: DiagonalGaussian, b: DiagonalGaussian) -> CrossTerms:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} != {b.dim}")
    mu_ij, var_ij, log_aff = pairwise_terms(a.mean, a.variance, b.mean, b.variance)
    return CrossTerms(mu_ij, var_ij, log_aff.sum())


def entropy(g: DiagonalGaussian):
    """Differential entropy in nats"""
    return float(0.5 * np.sum(1 + LOG_2PI + np.log(g.variance)))


def gaussian_kl(p: DiagonalGaussian, q: DiagonalGaussian):
    """KL(p || q)"""
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimensions differ: {p.dim} != {q.dim}")
    ratio = p.variance / q.variance
    return float(
        0.5 * np.sum(ratio - 1 - np.log(ratio) + (p.mean - q.mean) ** 2 / q.variance)
    )
