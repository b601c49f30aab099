from opinionpool.classes import DiagonalGaussian, ExpertSet

__all__ = ["wasserstein_barycenter"]


def wasserstein_barycenter(experts: ExpertSet) -> DiagonalGaussian:
    """2-Wasserstein barycenter of diagonal Gaussians.

    For commuting (here: diagonal) covariances the barycenter is Gaussian with
    the weighted mean of the means and the weighted mean of the standard
    deviations.
    """
    if len(experts) == 1:
        return experts[0]
    lam = experts.weights
    std = lam @ (experts.variances**0.5)
    return DiagonalGaussian(lam @ experts.means, std**2)
