import numpy as np
import pytest
from scipy.integrate import quad, trapezoid

from opinionpool import (
    DiagonalGaussian,
    DimensionMismatch,
    ExpFamilyMember,
    FamilyMismatch,
    InvalidParameter,
)
from opinionpool.algorithms import (
    cross_terms,
    expfam_affinity,
    expfam_cross_moments,
    exponential,
    from_gaussian,
    log_partition,
)


def test_log_partition():
    assert log_partition(exponential(1.0)) == 0.0
    assert log_partition(ExpFamilyMember("exponential", [-np.e])) == pytest.approx(-1.0, rel=1e-15)
    standard = ExpFamilyMember("gaussian-diagonal", [0.0, -0.5])
    assert log_partition(standard) == pytest.approx(0.5 * np.log(2 * np.pi), rel=1e-15)
    # exp(A) is the integral of exp(eta . T(z))
    z = np.linspace(-30, 30, 600_001)
    g = from_gaussian(DiagonalGaussian([1.5], [2.0]))
    eta1, eta2 = g.natural_params
    integral = trapezoid(np.exp(eta1 * z + eta2 * z**2), z)
    assert log_partition(g) == pytest.approx(np.log(integral), abs=1e-9)


def test_domain():
    with pytest.raises(InvalidParameter):
        ExpFamilyMember("exponential", [1.0])
    with pytest.raises(InvalidParameter):
        ExpFamilyMember("exponential", [-1.0, -2.0])
    with pytest.raises(InvalidParameter):
        ExpFamilyMember("gaussian-diagonal", [0.0, 0.5])
    with pytest.raises(InvalidParameter):
        ExpFamilyMember("gaussian-diagonal", [0.0, -0.5, 1.0])
    with pytest.raises(InvalidParameter):
        ExpFamilyMember("poisson", [1.0])
    with pytest.raises(InvalidParameter):
        exponential(0)


def test_exponential_affinity():
    assert expfam_affinity(exponential(2.5), exponential(2.5)) == 1.0
    assert expfam_affinity(exponential(1.0), exponential(4.0)) == pytest.approx(0.8, abs=1e-12)
    mean, second = expfam_cross_moments(exponential(1.0), exponential(4.0))
    assert mean == pytest.approx(np.array([0.32]), rel=1e-12)
    assert second == pytest.approx(np.array([[0.256]]), rel=1e-12)
    mean, second = expfam_cross_moments(exponential(2.0), exponential(2.0))
    assert mean == pytest.approx(np.array([0.5]))
    assert second == pytest.approx(np.array([[0.5]]))


def _exp_quadrature(r1, r2, power=0):
    return quad(lambda z: z**power * np.sqrt(r1 * r2) * np.exp(-(r1 + r2) * z / 2), 0, np.inf)[0]


def test_exponential_quadrature():
    rng = np.random.default_rng(41)
    for _ in range(50):
        r1, r2 = rng.uniform(0.2, 10, 2)
        a, b = exponential(r1), exponential(r2)
        S = expfam_affinity(a, b)
        assert S == pytest.approx(expfam_affinity(b, a), rel=1e-15)
        assert 0 < S <= 1
        assert S == pytest.approx(_exp_quadrature(r1, r2), abs=1e-6)
        mean, second = expfam_cross_moments(a, b)
        assert mean[0] == pytest.approx(_exp_quadrature(r1, r2, 1), abs=1e-6)
        assert second[0, 0] == pytest.approx(_exp_quadrature(r1, r2, 2), abs=1e-6)


def _gaussian_consistency(rng, count):
    for _ in range(count):
        a = DiagonalGaussian([rng.uniform(-5, 5)], [rng.uniform(0.1, 3)])
        b = DiagonalGaussian([rng.uniform(-5, 5)], [rng.uniform(0.1, 3)])
        ct = cross_terms(a, b)
        S = expfam_affinity(from_gaussian(a), from_gaussian(b))
        assert S == pytest.approx(ct.affinity, abs=1e-10)
        mean, second = expfam_cross_moments(from_gaussian(a), from_gaussian(b))
        assert mean[0] == pytest.approx(ct.affinity * ct.mu_ij[0], abs=1e-10)
        assert second[0, 0] == pytest.approx(
            ct.affinity * (ct.mu_ij[0] ** 2 + ct.var_ij[0]), abs=1e-10
        )


def test_gaussian_consistency():
    _gaussian_consistency(np.random.default_rng(42), 100)


@pytest.mark.slow
def test_gaussian_consistency_full():
    _gaussian_consistency(np.random.default_rng(43), 1000)


def test_gaussian_multivariate():
    a = DiagonalGaussian([0.0, 1.0], [0.5, 2.0])
    b = DiagonalGaussian([1.0, -1.0], [1.5, 0.3])
    S = expfam_affinity(from_gaussian(a), from_gaussian(b))
    assert S == pytest.approx(cross_terms(a, b).affinity, rel=1e-10)


def test_mixed_families():
    with pytest.raises(FamilyMismatch):
        expfam_affinity(exponential(1.0), from_gaussian(DiagonalGaussian([0.0], [1.0])))
    with pytest.raises(FamilyMismatch):
        expfam_cross_moments(exponential(1.0), from_gaussian(DiagonalGaussian([0.0], [1.0])))
    with pytest.raises(DimensionMismatch):
        expfam_affinity(
            from_gaussian(DiagonalGaussian.standard(1)), from_gaussian(DiagonalGaussian.standard(2))
        )
