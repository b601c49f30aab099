from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Estimate",
    "BhattacharyyaEstimate",
    "NormalizationEstimate",
    "HolderMoments",
    "MetricReport",
]


class Estimate(NamedTuple):
    value: float
    std_err: float = 0.0


class BhattacharyyaEstimate(NamedTuple):
    """Bhattacharyya coefficient clamped to [0, 1]; ``raw`` is the unclamped estimate"""

    value: float
    std_err: float
    raw: float


class NormalizationEstimate(NamedTuple):
    log_norm: float
    std_err: float
    ess: float
    low_ess: bool

    def as_estimate(self):
        return Estimate(self.log_norm, self.std_err)


class HolderMoments(NamedTuple):
    mean: np.ndarray
    variance: np.ndarray
    mean_se: np.ndarray
    variance_se: np.ndarray
    ess: float


@dataclass(frozen=True)
class MetricReport:
    """NLL, Bhattacharyya coefficient to truth, and sharpness of one aggregate"""

    nll: Estimate
    bc: BhattacharyyaEstimate
    sharpness: Estimate
    n_samples: int
    seed: int

    def __post_init__(self):
        if not 0 <= self.bc.value <= 1:
            raise ValueError(f"bc must lie in [0, 1]; got {self.bc.value}")
        if min(self.nll.std_err, self.bc.std_err, self.sharpness.std_err) < 0:
            raise ValueError("standard errors must be non-negative")
