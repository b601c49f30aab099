"""Exponential-family members described by natural parameters.

A family is a descriptor exposing the log partition function and the first two
moments at a natural parameter.  New families plug in by registering a
descriptor in ``FAMILIES``; affinity and cross-moment code only talks to the
descriptor.
"""
import numpy as np

from ..exceptions import InvalidParameter

__all__ = ["ExpFamilyMember", "ExponentialFamily", "FAMILIES"]

LOG_2PI = np.log(2 * np.pi)


class ExponentialFamily:
    name = None

    def validate(self, eta):
        raise NotImplementedError

    def log_partition(self, eta):
        raise NotImplementedError

    def mean(self, eta):
        """E[z] under the member with natural parameter eta"""
        raise NotImplementedError

    def second_moment(self, eta):
        """E[z z^T] under the member with natural parameter eta"""
        raise NotImplementedError


class GaussianDiagonal(ExponentialFamily):
    """Diagonal Gaussians with T(z) = (z, z**2) and h(z) = 1.

    eta = (mu / var, -1 / (2 var)), stacked as two blocks of length D.
    """

    name = "gaussian-diagonal"

    def validate(self, eta):
        if eta.size == 0 or eta.size % 2:
            raise InvalidParameter(
                f"{self.name} natural parameters need two blocks of equal length; got {eta.size}"
            )
        if not (eta[eta.size // 2 :] < 0).all():
            raise InvalidParameter(f"{self.name} second-block parameters must be negative")

    @staticmethod
    def _split(eta):
        D = eta.size // 2
        return eta[:D], eta[D:]

    def log_partition(self, eta):
        eta1, eta2 = self._split(eta)
        return float(np.sum(-(eta1**2) / (4 * eta2) - 0.5 * np.log(-2 * eta2) + 0.5 * LOG_2PI))

    def mean(self, eta):
        eta1, eta2 = self._split(eta)
        return -eta1 / (2 * eta2)

    def variance(self, eta):
        _, eta2 = self._split(eta)
        return -1 / (2 * eta2)

    def second_moment(self, eta):
        mean = self.mean(eta)
        return np.diag(self.variance(eta)) + np.outer(mean, mean)


class Exponential(ExponentialFamily):
    """Exp(rate) on z >= 0 with T(z) = z, h(z) = 1{z >= 0} and eta = -rate"""

    name = "exponential"

    def validate(self, eta):
        if eta.size != 1:
            raise InvalidParameter(f"{self.name} has one natural parameter; got {eta.size}")
        if not eta[0] < 0:
            raise InvalidParameter(f"{self.name} natural parameter must be negative; got {eta[0]}")

    def log_partition(self, eta):
        return float(-np.log(-eta[0]))

    def mean(self, eta):
        return np.array([-1 / eta[0]])

    def second_moment(self, eta):
        return np.array([[2 / eta[0] ** 2]])


FAMILIES = {family.name: family for family in [GaussianDiagonal(), Exponential()]}


class ExpFamilyMember:
    __slots__ = ("family_id", "natural_params")

    def __init__(self, family_id, natural_params):
        if family_id not in FAMILIES:
            raise InvalidParameter(
                f"Unknown family {family_id!r}; expected one of {sorted(FAMILIES)}"
            )
        eta = np.array(natural_params, dtype=np.float64, ndmin=1)
        if eta.ndim != 1 or not np.isfinite(eta).all():
            raise InvalidParameter("natural parameters must be a finite vector")
        FAMILIES[family_id].validate(eta)
        eta.flags.writeable = False
        self.family_id = family_id
        self.natural_params = eta

    @property
    def family(self):
        return FAMILIES[self.family_id]

    def __repr__(self):
        return f"ExpFamilyMember({self.family_id!r}, {self.natural_params.tolist()})"
