"""Monte-Carlo evaluation of aggregated densities against a known truth.

Targets are a ``DiagonalGaussian`` or a ``PooledDensity``.  Hölder pools must
carry a normalization estimate; its standard error is folded into the
reported error of every metric that depends on it.
"""
import numpy as np

from opinionpool.classes import (
    BhattacharyyaEstimate,
    DiagonalGaussian,
    Estimate,
    ExpertSet,
    MetricReport,
)

from ..exceptions import DimensionMismatch, NormalizationRequired
from ._helpers import check_alpha, check_count, mc_count, mean_and_se
from ._random import seed_label, substream
from .gaussian import log_density, sample
from .pooling.density import PooledDensity

__all__ = [
    "mc_nll",
    "mc_bhattacharyya",
    "sharpness",
    "estimate_alpha_divergence",
    "pooling_objective",
    "evaluate",
]


def _check_dims(target, truth):
    if target.dim != truth.dim:
        raise DimensionMismatch(f"target has dimension {target.dim}; truth has {truth.dim}")


def _require_normalized(target):
    if isinstance(target, PooledDensity) and not target.is_normalized:
        raise NormalizationRequired(
            f"{target!r} has no normalization estimate; call holder_normalize (or .normalize()) first"
        )


def _target_log_density(target, z):
    """Normalized log density and the standard error of its normalizer"""
    if isinstance(target, DiagonalGaussian):
        return log_density(target, z), 0.0
    return target.log_density(z), target.log_norm.std_err


def mc_nll(target, truth: DiagonalGaussian, n=None, seed=None) -> Estimate:
    """Expected negative log-likelihood of ``target`` under draws from ``truth``"""
    _check_dims(target, truth)
    n = mc_count(n)
    _require_normalized(target)
    z = sample(truth, n, seed)
    log_q, norm_se = _target_log_density(target, z)
    value, std_err = mean_and_se(-log_q)
    return Estimate(float(value), float(np.hypot(std_err, norm_se)))


def mc_bhattacharyya(target, truth: DiagonalGaussian, n=None, seed=None) -> BhattacharyyaEstimate:
    """Bhattacharyya coefficient between ``target`` and ``truth``.

    Averages sqrt(q(z) / p(z)) over z ~ p.  The value is clamped to [0, 1];
    ``raw`` keeps the unclamped estimate.
    """
    _check_dims(target, truth)
    n = mc_count(n)
    _require_normalized(target)
    z = sample(truth, n, seed)
    log_q, norm_se = _target_log_density(target, z)
    raw, std_err = mean_and_se(np.exp(0.5 * (log_q - log_density(truth, z))))
    std_err = np.hypot(std_err, 0.5 * raw * norm_se)
    return BhattacharyyaEstimate(float(np.clip(raw, 0, 1)), float(std_err), float(raw))


def sharpness(target, n=None, seed=None) -> Estimate:
    """Trace of the covariance of ``target``.

    Closed form for Gaussians; otherwise the trace of the empirical covariance
    of ``n`` draws.  For importance-resampled draws the error uses the
    effective sample size.
    """
    if isinstance(target, DiagonalGaussian):
        return Estimate(float(target.variance.sum()), 0.0)
    if target.gaussian is not None:
        return Estimate(float(target.gaussian.variance.sum()), 0.0)
    n = mc_count(n) if n is None else check_count(n)
    z, n_eff = target.draws(n, seed)
    if n == 1:
        return Estimate(0.0, 0.0)
    sq = np.sum((z - z.mean(axis=0)) ** 2, axis=1)
    value = sq.sum() / (n - 1)
    std_err = sq.std(ddof=1) / np.sqrt(min(n, n_eff))
    return Estimate(float(value), float(std_err))


def estimate_alpha_divergence(p: DiagonalGaussian, phi: DiagonalGaussian, alpha, n=None, seed=None):
    """D_alpha(p || phi) = E_phi[(p / phi) ** alpha - 1] / (alpha (alpha - 1)) for alpha in (0, 1).

    When p / phi has finite variance under phi (var_p < 2 var_phi in every
    dimension), alpha (p / phi - 1) is subtracted as a control variate; its
    expectation is zero, and it removes the first-order noise that otherwise
    swamps the estimate as alpha approaches 0 or 1.
    """
    alpha = check_alpha(alpha, closed_right=False)
    _check_dims(p, phi)
    n = mc_count(n)
    z = sample(phi, n, seed)
    log_ratio = log_density(p, z) - log_density(phi, z)
    x = np.exp(alpha * log_ratio) - 1
    if (p.variance < 2 * phi.variance).all():
        x -= alpha * np.expm1(log_ratio)
    value, std_err = mean_and_se(x / (alpha * (alpha - 1)))
    return Estimate(float(value), float(std_err))


def pooling_objective(experts: ExpertSet, phi, alpha, n=None, seed=None) -> Estimate:
    """sum_j lambda_j D_alpha(q_j || phi) for any normalized ``phi``.

    Each term averages (phi / q_j) ** (1 - alpha) over draws from q_j, so
    ``phi`` only needs to be evaluable.  Expert j always uses the same
    substream of ``seed``, so candidates compared under one seed share draws.
    """
    alpha = check_alpha(alpha, closed_right=False)
    _check_dims(experts, phi)
    n = mc_count(n)
    scale = alpha * (alpha - 1)
    value = 0.0
    variance = 0.0
    norm_slope = 0.0
    norm_se = 0.0
    for j, (q, lam) in enumerate(zip(experts, experts.weights)):
        if lam == 0:
            continue
        z = sample(q, n, substream(seed, "objective", j))
        log_phi, norm_se = _target_log_density(phi, z)
        ratio = np.exp((1 - alpha) * (log_phi - log_density(q, z)))
        mean, std_err = mean_and_se(ratio)
        value += lam * (mean - 1) / scale
        variance += (lam * std_err / scale) ** 2
        norm_slope += lam * mean / alpha
    std_err = np.hypot(np.sqrt(variance), norm_slope * norm_se)
    return Estimate(float(value), float(std_err))


def evaluate(target, truth: DiagonalGaussian, n=None, seed=None) -> MetricReport:
    """NLL, Bhattacharyya coefficient and sharpness, each on its own substream of ``seed``"""
    n = mc_count(n)
    return MetricReport(
        nll=mc_nll(target, truth, n, substream(seed, "nll")),
        bc=mc_bhattacharyya(target, truth, n, substream(seed, "bc")),
        sharpness=sharpness(target, n, substream(seed, "sharpness")),
        n_samples=n,
        seed=seed_label(seed),
    )
