from opinionpool.classes import DiagonalGaussian, Estimate, ExpertSet

from ...exceptions import InvalidParameter, NormalizationRequired
from .._helpers import check_alpha, check_count
from .._random import make_rng
from ..gaussian import log_density, sample
from .hellinger import hellinger_log_normalizer
from .holder import holder_log_density_unnorm, holder_normalize, holder_resample
from .linear import moe_log_density, moe_sample

__all__ = ["PooledDensity", "moe_pool", "holder_pool", "gaussian_pool"]

GAUSSIAN_KINDS = frozenset(["poe-exact", "loglinear-exact", "hellinger-exact", "wb-exact"])
KINDS = GAUSSIAN_KINDS | {"moe", "holder"}

EXACT = Estimate(0.0, 0.0)


class PooledDensity:
    """An aggregated density that can be evaluated at any z of dimension D.

    ``kind`` is one of ``"moe"``, ``"holder"`` or ``"<method>-exact"`` for pools
    that are a single Gaussian.  Mixtures and Gaussians are exactly normalized;
    Hölder pools carry ``log_norm = None`` until normalized (except at
    ``alpha == 1``, which is the mixture itself).
    """

    __slots__ = ("kind", "source", "alpha", "gaussian", "log_norm")

    def __init__(self, kind, source, *, alpha=None, gaussian=None, log_norm=None):
        if kind not in KINDS:
            raise InvalidParameter(f"Unknown pooled density kind {kind!r}")
        if kind == "holder":
            alpha = check_alpha(alpha)
            if alpha == 1:
                log_norm = EXACT
        else:
            log_norm = EXACT
            if kind in GAUSSIAN_KINDS and not isinstance(gaussian, DiagonalGaussian):
                raise InvalidParameter(f"{kind} pools need the aggregated Gaussian")
        self.kind = kind
        self.source = source
        self.alpha = alpha
        self.gaussian = gaussian
        self.log_norm = log_norm

    def __repr__(self):
        extra = f", alpha={self.alpha}" if self.kind == "holder" else ""
        return f"PooledDensity({self.kind!r}, M={len(self.source)}{extra})"

    @property
    def dim(self):
        return self.source.dim

    @property
    def is_normalized(self):
        return self.log_norm is not None

    def log_density_unnorm(self, z):
        if self.gaussian is not None:
            return log_density(self.gaussian, z)
        if self.kind == "moe":
            return moe_log_density(self.source, z)
        return holder_log_density_unnorm(self.source, self.alpha, z)

    def log_density(self, z):
        if self.log_norm is None:
            raise NormalizationRequired(
                "This Hölder pool has no normalization estimate; "
                "call holder_normalize (or .normalize()) first"
            )
        return self.log_density_unnorm(z) - self.log_norm.value

    def with_log_norm(self, estimate):
        if self.kind != "holder":
            raise InvalidParameter(f"{self.kind} pools are already normalized")
        value, std_err = estimate[0], estimate[1]
        return type(self)("holder", self.source, alpha=self.alpha, log_norm=Estimate(value, std_err))

    def normalize(self, n=None, seed=None, *, exact=None):
        """Attach a normalization estimate.

        With ``exact`` (the default when ``alpha == 0.5``) the closed-form
        normalizer is used; otherwise ``holder_normalize`` runs with ``n`` draws.
        """
        if self.kind != "holder" or self.alpha == 1:
            return self
        if exact is None:
            exact = self.alpha == 0.5
        if exact:
            if self.alpha != 0.5:
                raise InvalidParameter("a closed-form normalizer exists only for alpha = 0.5")
            return self.with_log_norm(Estimate(hellinger_log_normalizer(self.source), 0.0))
        return self.with_log_norm(holder_normalize(self.source, self.alpha, n, seed).as_estimate())

    def draws(self, n, seed):
        """``n`` draws and the effective number of independent draws behind them"""
        n = check_count(n)
        if self.gaussian is not None:
            return sample(self.gaussian, n, seed), float(n)
        if self.kind == "moe" or self.alpha == 1:
            return moe_sample(self.source, n, seed), float(n)
        return holder_resample(self.source, self.alpha, n, make_rng(seed))

    def sample(self, n, seed):
        return self.draws(n, seed)[0]


def moe_pool(experts: ExpertSet) -> PooledDensity:
    return PooledDensity("moe", experts)


def holder_pool(experts: ExpertSet, alpha) -> PooledDensity:
    """The unnormalized Hölder pool; call ``.normalize()`` before evaluating densities"""
    return PooledDensity("holder", experts, alpha=alpha)


def gaussian_pool(kind, experts: ExpertSet, gaussian: DiagonalGaussian) -> PooledDensity:
    return PooledDensity(f"{kind}-exact", experts, gaussian=gaussian)
