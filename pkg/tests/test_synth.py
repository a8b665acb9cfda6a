import numpy as np
import pytest
from scipy import stats

from betamix.errors import DomainError, NonErgodicError
from betamix.markov import MarkovChain, symmetric_two_state
from betamix.synth import sample_ar1, sample_iid_uniform, sample_markov


def lag1_autocorr(x):
    x = x - x.mean()
    return float(np.dot(x[:-1], x[1:]) / np.dot(x, x))


def test_iid_chain_frequencies():
    r = [0.2, 0.5, 0.3]
    n = 100_000
    x = sample_markov(MarkovChain.from_matrix([r, r, r]), n, seed=1)
    freq = np.bincount(x.astype(int), minlength=3) / n
    se = np.sqrt(np.array(r) * (1 - np.array(r)) / n)
    assert np.all(np.abs(freq - r) <= 3 * se)


def test_flip_chain_alternates():
    x = sample_markov(symmetric_two_state(1.0), 1001, seed=4)
    assert set(np.unique(x)) <= {0.0, 1.0}
    assert np.all(np.diff(x) != 0)


def test_markov_reproducible():
    chain = MarkovChain.from_matrix([[0.1, 0.9, 0.0], [0.3, 0.3, 0.4], [0.5, 0.0, 0.5]])
    a = sample_markov(chain, 5000, seed=77)
    b = sample_markov(chain, 5000, seed=77)
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, sample_markov(chain, 5000, seed=78))


def test_markov_stationary_start():
    chain = MarkovChain.from_matrix([[0.9, 0.1, 0.0], [0.2, 0.5, 0.3], [0.1, 0.1, 0.8]])
    first = np.array([sample_markov(chain, 1, seed=s)[0] for s in range(10_000)], dtype=int)
    observed = np.bincount(first, minlength=3)
    assert stats.chisquare(observed, chain.pi * first.size).pvalue > 0.01


def test_markov_rejects_reducible_chain():
    with pytest.raises(NonErgodicError):
        sample_markov(np.eye(2), 10, seed=0)


def test_ar1_white_noise():
    n = 100_000
    x = sample_ar1(0.0, 1.0, n, seed=3)
    assert abs(lag1_autocorr(x)) <= 3 / np.sqrt(n)


@pytest.mark.parametrize("phi, sigma", [(0.9, 1.0), (-0.5, 2.0), (0.3, 0.1)])
def test_ar1_moments(phi, sigma):
    x = sample_ar1(phi, sigma, 100_000, seed=8)
    assert abs(lag1_autocorr(x) - phi) <= 0.02
    assert x.var() == pytest.approx(sigma**2 / (1 - phi**2), rel=0.05)


def test_ar1_recursion_and_reproducibility():
    x = sample_ar1(0.7, 1.5, 50, seed=21)
    z = np.random.Generator(np.random.PCG64(21)).standard_normal(50)
    assert x[0] == pytest.approx(z[0] * 1.5 / np.sqrt(1 - 0.49))
    np.testing.assert_allclose(x[1:], 0.7 * x[:-1] + 1.5 * z[1:], rtol=1e-13, atol=1e-13)
    assert x.tobytes() == sample_ar1(0.7, 1.5, 50, seed=21).tobytes()


@pytest.mark.parametrize("phi, sigma", [(1.0, 1.0), (-1.2, 1.0), (0.5, 0.0), (0.5, -1.0)])
def test_ar1_domain(phi, sigma):
    with pytest.raises(DomainError):
        sample_ar1(phi, sigma, 10, seed=0)


def test_iid_uniform():
    n = 100_000
    x = sample_iid_uniform(n, seed=12)
    assert stats.kstest(x, "uniform").statistic < 1.63 / np.sqrt(n)
    assert x.tobytes() == sample_iid_uniform(n, seed=12).tobytes()
    one = sample_iid_uniform(1, seed=0)
    assert one.shape == (1,) and 0.0 <= one[0] <= 1.0


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_range(seed):
    with pytest.raises(DomainError):
        sample_iid_uniform(3, seed)
