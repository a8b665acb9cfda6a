import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from betamix.bounds import (
    BoundInputs,
    blocking_partition,
    markov_block_length,
    thm_main_bound,
    thm_one_bound,
)
from betamix.errors import DomainError, HypothesisError, PartitionError


def main_inputs(mu=1000, eps1=0.1, eps2=0.1, beta_m=1e-5, m=1):
    # epsilon = 1, marginal L1 = 0.5 - eps1, joint L1 = 1 - eps2
    return BoundInputs(mu, m, 1.0, 0.5 - eps1, 1.0 - eps2, beta_m)


def test_main_bound_example():
    b = BoundInputs(mu=1000, m=1, epsilon=0.4, expected_l1_marginal=0.1,
                    expected_l1_joint=0.3, beta_m=1e-5)
    assert b.epsilon_1 == pytest.approx(0.1) and b.epsilon_2 == pytest.approx(0.1)
    by_hand = 2 * math.exp(-5) + 2 * math.exp(-5) + 4 * 999 * 1e-5
    value = thm_main_bound(b)
    assert value.value == pytest.approx(by_hand, abs=1e-12)
    assert value.value == pytest.approx(0.066912, abs=1e-6)
    assert not value.vacuous


def test_main_bound_hypothesis_violations():
    with pytest.raises(HypothesisError, match="epsilon_1"):
        thm_main_bound(BoundInputs(100, 1, 0.2, 0.1, 0.0, 0.0))
    with pytest.raises(HypothesisError, match="epsilon_2"):
        thm_main_bound(BoundInputs(100, 1, 0.2, 0.0, 0.2, 0.0))


def test_one_bound_examples():
    v = thm_one_bound(1000, 1, 0.1, 0.0, 0.0)
    assert v.value == pytest.approx(2 * math.exp(-5), abs=1e-15)
    assert v.value == pytest.approx(0.0134759, abs=1e-6)
    worst = thm_one_bound(1000, 1, 0.1, 0.0, 1.0)
    assert worst.value >= 2 * 999 and worst.vacuous
    with pytest.raises(HypothesisError):
        thm_one_bound(10, 1, 0.1, 0.1, 0.0)


def test_main_bound_structure_against_one_bound():
    # doubled mixing penalty plus one more exponential
    mu, beta_m = 400, 1e-4
    main = thm_main_bound(main_inputs(mu=mu, eps1=0.12, eps2=0.12, beta_m=beta_m)).value
    one = thm_one_bound(mu, 1, 0.12, 0.0, beta_m).value
    assert main == pytest.approx(2 * one, rel=1e-12)
    assert main - one == pytest.approx(2 * math.exp(-mu * 0.12**2 / 2) + 2 * (mu - 1) * beta_m)


def test_main_bound_vanishes_without_mixing_penalty():
    values = [thm_main_bound(main_inputs(mu=mu, beta_m=0.0)).value for mu in (10, 100, 1000, 10**4, 10**5)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-100


@given(st.integers(1, 10**5), st.floats(0.01, 0.5), st.floats(0.01, 0.5), st.floats(0, 1))
def test_main_bound_monotone(mu, eps1, eps2, beta_m):
    base = thm_main_bound(main_inputs(mu, eps1, eps2, beta_m)).value
    assert base >= 0
    assert thm_main_bound(main_inputs(mu + 1, eps1, eps2, 0.0)).value <= \
        thm_main_bound(main_inputs(mu, eps1, eps2, 0.0)).value
    assert thm_main_bound(main_inputs(mu, eps1, eps2, min(1.0, beta_m + 0.01))).value >= base
    larger_eps = BoundInputs(mu, 1, 1.5, 0.5 - eps1, 1.0 - eps2, beta_m)
    assert thm_main_bound(larger_eps).value <= base


def test_bound_input_validation():
    with pytest.raises(DomainError):
        BoundInputs(0, 1, 0.1)
    with pytest.raises(DomainError):
        BoundInputs(10, 1, 0.1, beta_m=1.5)
    with pytest.raises(DomainError):
        BoundInputs(10, 1, -0.1)


def test_blocking_partition_examples():
    U, V = blocking_partition(12, 3)
    assert [(r[0], r[-1]) for r in U] == [(1, 3), (7, 9)]
    assert [(r[0], r[-1]) for r in V] == [(4, 6), (10, 12)]
    assert blocking_partition(4, 1) == ([range(1, 2), range(3, 4)], [range(2, 3), range(4, 5)])
    with pytest.raises(PartitionError):
        blocking_partition(10, 3)


@given(st.integers(1, 200), st.integers(1, 50))
def test_blocking_partition_covers(mu, m):
    n = 2 * mu * m
    U, V = blocking_partition(n, m)
    assert len(U) == len(V) == mu
    assert all(len(r) == m for r in U + V)
    seen = [i for r in U + V for i in r]
    assert len(seen) == len(set(seen)) == n
    assert set(seen) == set(range(1, n + 1))


def test_markov_block_length_examples():
    assert markov_block_length(1024, 1) == 32
    assert markov_block_length(100, 1) == 10
    assert markov_block_length(1024, math.inf) == 1
    assert markov_block_length(1024, 1e9) == 1
    assert markov_block_length(1000, 2) == 10
    assert markov_block_length(99, 1) == 1


@given(st.integers(2, 10**7), st.floats(0.05, 20))
def test_markov_block_length_properties(n, r):
    m = markov_block_length(n, r)
    assert 1 <= m <= max(1, n ** (1 / (1 + r)) * (1 + 1e-12))
    assert m == 1 or n % (2 * m) == 0
