import itertools

import numpy as np
import pytest

from betamix.histogram import GridSpec, build

ACCEPTANCE_LINES = []


def dense_beta(joint_mass, marginal_mass, d, J):
    """Half L1 distance by visiting every one of the J**(2d) cells."""
    total = 0.0
    for past in itertools.product(range(J), repeat=d):
        for future in itertools.product(range(J), repeat=d):
            pj = joint_mass.get(past + future, 0.0)
            pp = marginal_mass.get(past, 0.0) * marginal_mass.get(future, 0.0)
            total += abs(pj - pp)
    return 0.5 * total


def dense_counts(points, h, J):
    """Histogram counts by a dense array and a per-point loop."""
    points = np.asarray(points, dtype=float)
    dim = points.shape[1]
    table = np.zeros((J,) * dim, dtype=np.int64)
    for p in points:
        idx = tuple(min(int(np.floor(c / h)), J - 1) for c in p)
        table[idx] += 1
    return table


def variance_slope(h=0.1, ns=(10**3, 10**4, 10**5), replicates=50):
    """Log-log slope of the Monte Carlo E int |f_hat - E f_hat| against n.

    IID uniform data in one dimension; with ``1/h`` an integer every bin has
    probability ``h`` and the integral reduces to ``sum_j |c_j / n - h|``.
    """
    grid = GridSpec(1, h)
    J = grid.bins_per_axis
    risks = []
    for n in ns:
        vals = []
        for rep in range(replicates):
            hist = build(np.random.default_rng(rep).random((n, 1)), grid)
            dense = np.zeros(J)
            dense[hist.bins[:, 0]] = hist.probabilities
            vals.append(np.abs(dense - h).sum())
        risks.append(np.mean(vals))
    return np.polyfit(np.log(ns), np.log(risks), 1)[0]


def tent_cdf(x):
    x = np.asarray(x, dtype=float)
    return np.where(x <= 0.5, 2 * x**2, 1 - 2 * (1 - x) ** 2)


def tent_pdf(x):
    return np.where(x <= 0.5, 4 * x, 4 * (1 - x))


def bias_slope(hs=(1 / 4, 1 / 8, 1 / 16, 1 / 32, 1 / 64), quad_points=2**18):
    """Log-log slope of int |E f_hat - f| against h for the tent density on [0, 1].

    ``E f_hat`` is exact (bin probabilities from the CDF); the outer integral
    uses the midpoint rule.
    """
    xs = (np.arange(quad_points) + 0.5) / quad_points
    biases = []
    for h in hs:
        grid = GridSpec(1, h)
        J = grid.bins_per_axis
        edges = np.minimum(np.arange(J + 1) * h, 1.0)
        p = np.diff(tent_cdf(edges))
        expected = p[grid.bin_index(xs)[:, 0]] / h
        biases.append(np.mean(np.abs(expected - tent_pdf(xs))))
    return np.polyfit(np.log(hs), np.log(biases), 1)[0]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
