import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opinionpool import DiagonalGaussian, EmptyExpertSet, ExpertSet, InvalidWeights, config
from opinionpool.algorithms import (
    hellinger_aggregate,
    loglinear_aggregate,
    moe_log_density,
    moe_moments,
    moe_sample,
    mohel_aggregate,
    poe_aggregate,
    wasserstein_barycenter,
)
from opinionpool.experiments import build_figure1_scenario
from opinionpool.interface import pooled_density

GAUSSIAN_AGGREGATORS = [poe_aggregate, loglinear_aggregate, hellinger_aggregate, wasserstein_barycenter]


def random_expert_set(rng, M=None, D=None, weights=False):
    M = M or rng.integers(1, 5)
    D = D or rng.integers(1, 4)
    experts = [DiagonalGaussian(rng.uniform(-3, 3, D), rng.uniform(0.1, 2, D)) for _ in range(M)]
    if weights:
        w = rng.uniform(0.1, 1, M)
        return ExpertSet(experts, w / w.sum())
    return ExpertSet(experts)


def test_expert_set_validation():
    with pytest.raises(EmptyExpertSet):
        ExpertSet([])
    g = DiagonalGaussian.standard(2)
    with pytest.raises(InvalidWeights):
        ExpertSet([g, g], [0.5, 0.6])
    with pytest.raises(InvalidWeights):
        ExpertSet([g, g], [1.5, -0.5])
    with pytest.raises(InvalidWeights):
        ExpertSet([g, g], [1.0])
    E = ExpertSet([g, g])
    assert E.weights.tolist() == [0.5, 0.5]
    assert E.uniform


def test_poe():
    one = DiagonalGaussian([0.0], [1.0])
    result = poe_aggregate(ExpertSet([one, one]))
    assert result == DiagonalGaussian([0.0], [0.5])
    result = poe_aggregate(ExpertSet([one, DiagonalGaussian([2.0], [1.0])]))
    assert result.isclose(DiagonalGaussian([1.0], [0.5]), rtol=1e-14)
    result = poe_aggregate(build_figure1_scenario())
    assert result.mean == pytest.approx([2.5, 0.2 / 0.6 / (2 + 1 / 0.6 + 5)], rel=1e-12)
    assert result.variance == pytest.approx([0.1154, 0.1154], abs=1e-4)
    assert result.mean[0] > 2


def test_poe_weighted_and_loglinear():
    a = DiagonalGaussian([0.0], [1.0])
    b = DiagonalGaussian([3.0], [2.0])
    E = ExpertSet([a, b], [0.25, 0.75])
    # lambda_j * M scaled precisions
    precision = 0.5 / 1 + 1.5 / 2
    assert poe_aggregate(E).isclose(DiagonalGaussian([1.5 * 3 / 2 / precision], [1 / precision]))
    # geometric mean: precision sum_j lambda_j / var_j
    precision = 0.25 + 0.75 / 2
    assert loglinear_aggregate(E).isclose(
        DiagonalGaussian([0.75 * 3 / 2 / precision], [1 / precision])
    )
    # Uniform weights: the geometric mean keeps the product's mean with M times the variance
    U = E.uniform_weights()
    assert loglinear_aggregate(U).mean == pytest.approx(poe_aggregate(U).mean, rel=1e-14)
    assert loglinear_aggregate(U).variance == pytest.approx(2 * poe_aggregate(U).variance)


def test_wasserstein_barycenter():
    E = ExpertSet([DiagonalGaussian([0.0], [1.0]), DiagonalGaussian([2.0], [4.0])])
    assert wasserstein_barycenter(E).isclose(DiagonalGaussian([1.0], [2.25]), rtol=1e-14)
    # Fixed-point iteration for the Gaussian barycenter: s <- sum_j lambda_j sqrt(s * var_j)
    s = 1.0
    for _ in range(200):
        s = sum(lam * np.sqrt(s * v) for lam, v in zip(E.weights, E.variances[:, 0]))
    assert wasserstein_barycenter(E).variance[0] == pytest.approx(s, abs=1e-10)
    g = DiagonalGaussian([1.0, 2.0], [0.3, 0.7])
    assert wasserstein_barycenter(ExpertSet([g, g, g])).isclose(g)


def test_moe_log_density():
    a = DiagonalGaussian([-1.0], [0.5])
    b = DiagonalGaussian([2.0], [1.5])
    E = ExpertSet([a, b], [0.3, 0.7])
    z = np.linspace(-3, 3, 7)[:, None]
    expected = np.log(
        0.3 * np.exp(-0.5 * ((z[:, 0] + 1) ** 2 / 0.5 + np.log(2 * np.pi * 0.5)))
        + 0.7 * np.exp(-0.5 * ((z[:, 0] - 2) ** 2 / 1.5 + np.log(2 * np.pi * 1.5)))
    )
    np.testing.assert_allclose(moe_log_density(E, z), expected, rtol=1e-12)


def test_moe_moments_match_samples():
    rng = np.random.default_rng(21)
    for seed in range(5):
        E = random_expert_set(rng, weights=True)
        n = 200_000
        z = moe_sample(E, n, seed)
        mean, variance = moe_moments(E)
        se_mean = np.sqrt(variance / n)
        assert (np.abs(z.mean(axis=0) - mean) < 5 * se_mean).all()
        second = variance + mean**2
        sq = z**2
        se_second = sq.std(axis=0, ddof=1) / np.sqrt(n)
        assert (np.abs(sq.mean(axis=0) - second) < 5 * se_second).all()


def test_moe_sample_components():
    E = build_figure1_scenario()
    z, components = moe_sample(E, 1000, 5, return_components=True)
    assert z.shape == (1000, 2)
    assert set(np.unique(components)) <= {0, 1, 2}
    assert np.array_equal(moe_sample(E, 1000, 5), z)


def test_single_expert_identity():
    g = DiagonalGaussian([0.3, -1.0], [0.5, 2.0])
    E = ExpertSet([g])
    for func in GAUSSIAN_AGGREGATORS:
        assert func(E) == g
    mixture = mohel_aggregate(E)
    assert len(mixture) == 1
    assert mixture[0] == g
    z = np.array([[0.0, 0.0], [1.0, -2.0]])
    for method in ["poe", "moe", "holder05", "hellinger", "mohel", "wb"]:
        pooled = pooled_density(method, E).normalize(exact=True)
        np.testing.assert_allclose(pooled.log_density(z), pooled.log_density_unnorm(z))


def test_idempotence():
    rng = np.random.default_rng(22)
    for _ in range(100):
        g = DiagonalGaussian(rng.uniform(-3, 3, 2), rng.uniform(0.1, 2, 2))
        E = ExpertSet([g] * rng.integers(2, 5))
        for func in [loglinear_aggregate, hellinger_aggregate, wasserstein_barycenter]:
            assert func(E).isclose(g, rtol=1e-9, atol=1e-9)
        # The product of M identical experts is M times as sharp
        assert poe_aggregate(E).isclose(DiagonalGaussian(g.mean, g.variance / len(E)))


def _assert_permutation_invariant(E, order):
    P = E.permuted(order)
    for func in GAUSSIAN_AGGREGATORS:
        assert func(P).isclose(func(E), rtol=1e-10, atol=1e-10)
    z = np.linspace(-2, 2, 5)[:, None] * np.ones(E.dim)
    np.testing.assert_allclose(moe_log_density(P, z), moe_log_density(E, z), rtol=1e-12)


def test_permutation_invariance():
    rng = np.random.default_rng(23)
    for _ in range(200):
        E = random_expert_set(rng, weights=True)
        _assert_permutation_invariant(E, rng.permutation(len(E)))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.floats(-5, 5, allow_nan=False),
            st.floats(0.1, 3, allow_nan=False),
        ),
        min_size=1,
        max_size=5,
    ),
    st.randoms(use_true_random=False),
)
def test_permutation_invariance_hypothesis(params, random):
    E = ExpertSet([DiagonalGaussian([mu], [var]) for mu, var in params])
    order = list(range(len(E)))
    random.shuffle(order)
    _assert_permutation_invariant(E, order)
    P = E.permuted(order)
    assert poe_aggregate(P).isclose(poe_aggregate(E), rtol=1e-12, atol=1e-12)


def test_mohel():
    E = build_figure1_scenario()
    mixture = mohel_aggregate(E)
    assert len(mixture) == 7
    np.testing.assert_array_equal(mixture.weights, np.full(7, 1 / 7))
    # bitmask order: {0}, {1}, {0, 1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}
    assert mixture[0] == E[0]
    assert mixture[1] == E[1]
    assert mixture[3] == E[2]
    assert mixture[2].isclose(hellinger_aggregate(ExpertSet([E[0], E[1]])))
    assert mixture[6].isclose(hellinger_aggregate(E))

    g = DiagonalGaussian([0.5], [0.7])
    mixture = mohel_aggregate(ExpertSet([g, g]))
    assert len(mixture) == 3
    z = np.linspace(-3, 3, 11)[:, None]
    np.testing.assert_allclose(
        moe_log_density(mixture, z), moe_log_density(ExpertSet([g]), z), rtol=1e-9
    )


def test_mohel_cap():
    g = DiagonalGaussian.standard(1)
    with pytest.raises(ValueError, match="M = 20"):
        mohel_aggregate(ExpertSet([g] * 21))
    with config.set({"mohel.max_experts": 3}):
        assert len(mohel_aggregate(ExpertSet([g] * 3))) == 7
        with pytest.raises(ValueError, match="M = 3"):
            mohel_aggregate(ExpertSet([g] * 4))


def test_mohel_permutation_small():
    rng = np.random.default_rng(24)
    for _ in range(20):
        E = random_expert_set(rng, M=rng.integers(1, 6))
        P = E.permuted(rng.permutation(len(E)))
        z = rng.normal(size=(5, E.dim))
        np.testing.assert_allclose(
            moe_log_density(mohel_aggregate(P), z), moe_log_density(mohel_aggregate(E), z), rtol=1e-9
        )


@pytest.mark.slow
def test_properties_full():
    rng = np.random.default_rng(25)
    for i in range(10_000):
        E = random_expert_set(rng, weights=bool(i % 2))
        order = rng.permutation(len(E))
        _assert_permutation_invariant(E, order)
        z = rng.normal(size=(3, E.dim))
        np.testing.assert_allclose(
            moe_log_density(mohel_aggregate(E.permuted(order)), z),
            moe_log_density(mohel_aggregate(E), z),
            rtol=1e-9,
        )
        g = E[0]
        same = ExpertSet([g] * len(E))
        for func in [loglinear_aggregate, hellinger_aggregate, wasserstein_barycenter]:
            assert func(same).isclose(g, rtol=1e-9, atol=1e-9)
        for func in GAUSSIAN_AGGREGATORS:
            assert func(ExpertSet([g])) == g
