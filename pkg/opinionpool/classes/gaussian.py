import numpy as np

from ..config import config
from ..exceptions import DimensionMismatch, InvalidParameter

__all__ = ["DiagonalGaussian", "CrossTerms"]


def _readonly(x):
    x.flags.writeable = False
    return x


class DiagonalGaussian:
    """A Gaussian on R^D with diagonal covariance.

    Parameters
    ----------
    mean : array_like
        Mean vector of length D.
    variance : array_like
        Per-dimension variances, same length as ``mean``.  Entries below the
        configured ``variance_floor`` are raised to it.

    Instances are immutable; the arrays are read-only.
    """

    __slots__ = ("mean", "variance")

    def __init__(self, mean, variance, *, floor=None):
        mean = np.array(mean, dtype=np.float64, ndmin=1)
        variance = np.array(variance, dtype=np.float64, ndmin=1)
        if mean.ndim != 1 or variance.ndim != 1:
            raise DimensionMismatch("mean and variance must be vectors")
        if mean.shape != variance.shape:
            raise DimensionMismatch(
                f"mean has length {mean.size} but variance has length {variance.size}"
            )
        if mean.size == 0:
            raise DimensionMismatch("a Gaussian needs at least one dimension")
        if not (np.isfinite(mean).all() and np.isfinite(variance).all()):
            raise InvalidParameter("mean and variance must be finite")
        if (variance < 0).any():
            raise InvalidParameter(f"variance must be positive; got {variance}")
        if floor is None:
            floor = config.get("variance_floor")
        variance = np.maximum(variance, floor)
        object.__setattr__(self, "mean", _readonly(mean))
        object.__setattr__(self, "variance", _readonly(variance))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def isotropic(cls, mean, variance):
        """N(mean, variance * I)"""
        mean = np.array(mean, dtype=np.float64, ndmin=1)
        return cls(mean, np.full(mean.shape, variance, dtype=np.float64))

    @classmethod
    def standard(cls, dim):
        return cls(np.zeros(dim), np.ones(dim))

    @property
    def dim(self):
        return self.mean.size

    @property
    def std(self):
        return np.sqrt(self.variance)

    @property
    def precision(self):
        return 1 / self.variance

    def isclose(self, other, *, rtol=1e-9, atol=1e-12):
        return (
            self.dim == other.dim
            and np.allclose(self.mean, other.mean, rtol=rtol, atol=atol)
            and np.allclose(self.variance, other.variance, rtol=rtol, atol=atol)
        )

    def __eq__(self, other):
        if not isinstance(other, DiagonalGaussian):
            return NotImplemented
        return np.array_equal(self.mean, other.mean) and np.array_equal(
            self.variance, other.variance
        )

    def __hash__(self):
        return hash((self.mean.tobytes(), self.variance.tobytes()))

    def __reduce__(self):
        return type(self), (self.mean.copy(), self.variance.copy())

    def __repr__(self):
        return f"DiagonalGaussian(mean={self.mean.tolist()}, variance={self.variance.tolist()})"


class CrossTerms:
    """Pairwise quantities of two diagonal Gaussians used by Hellinger aggregation.

    ``mu_ij`` and ``var_ij`` are the mean and variance of the normalized density
    proportional to sqrt(q_i q_j); ``log_affinity`` is log S_ij.
    """

    __slots__ = ("mu_ij", "var_ij", "log_affinity")

    def __init__(self, mu_ij, var_ij, log_affinity):
        self.mu_ij = _readonly(np.asarray(mu_ij, dtype=np.float64))
        self.var_ij = _readonly(np.asarray(var_ij, dtype=np.float64))
        self.log_affinity = float(log_affinity)

    @property
    def affinity(self):
        return float(np.exp(self.log_affinity))

    def __eq__(self, other):
        if not isinstance(other, CrossTerms):
            return NotImplemented
        return (
            np.array_equal(self.mu_ij, other.mu_ij)
            and np.array_equal(self.var_ij, other.var_ij)
            and self.log_affinity == other.log_affinity
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"CrossTerms(mu_ij={self.mu_ij.tolist()}, var_ij={self.var_ij.tolist()}, "
            f"log_affinity={self.log_affinity!r})"
        )
