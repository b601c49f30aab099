"""Hellinger affinity and cross-moments for members of one exponential family.

For q_eta(z) = h(z) exp(eta . T(z) - A(eta)) with a shared base measure, the
geometric mean of two members is the midpoint member eta_ij = (eta_i + eta_j) / 2
scaled by S_ij = exp(A(eta_ij) - A(eta_i) / 2 - A(eta_j) / 2).
"""
import numpy as np

from opinionpool.classes import DiagonalGaussian, ExpFamilyMember

from ..exceptions import DimensionMismatch, FamilyMismatch, InvalidParameter

__all__ = [
    "log_partition",
    "expfam_log_affinity",
    "expfam_affinity",
    "expfam_cross_moments",
    "from_gaussian",
    "exponential",
]


def log_partition(m: ExpFamilyMember):
    return m.family.log_partition(m.natural_params)


def _midpoint(a, b):
    if a.family_id != b.family_id:
        raise FamilyMismatch(f"members of different families: {a.family_id!r} and {b.family_id!r}")
    if a.natural_params.shape != b.natural_params.shape:
        raise DimensionMismatch(
            f"natural parameters differ in length: {a.natural_params.size} != "
            f"{b.natural_params.size}"
        )
    return (a.natural_params + b.natural_params) / 2


def expfam_log_affinity(a: ExpFamilyMember, b: ExpFamilyMember):
    family = a.family
    eta = _midpoint(a, b)
    rv = family.log_partition(eta) - 0.5 * (log_partition(a) + log_partition(b))
    # A is convex, so only rounding can push this above zero
    return min(rv, 0.0)


def expfam_affinity(a: ExpFamilyMember, b: ExpFamilyMember):
    """Bhattacharyya coefficient S_ij in (0, 1]"""
    return float(np.exp(expfam_log_affinity(a, b)))


def expfam_cross_moments(a: ExpFamilyMember, b: ExpFamilyMember):
    """``(S_ij E[z], S_ij E[z z^T])`` under the midpoint member"""
    family = a.family
    eta = _midpoint(a, b)
    S = expfam_affinity(a, b)
    return S * family.mean(eta), S * family.second_moment(eta)


def from_gaussian(g: DiagonalGaussian) -> ExpFamilyMember:
    return ExpFamilyMember(
        "gaussian-diagonal", np.concatenate([g.mean / g.variance, -0.5 / g.variance])
    )


def exponential(rate) -> ExpFamilyMember:
    """Exp(rate), rate > 0"""
    rate = float(rate)
    if not (np.isfinite(rate) and rate > 0):
        raise InvalidParameter(f"rate must be positive; got {rate}")
    return ExpFamilyMember("exponential", [-rate])
