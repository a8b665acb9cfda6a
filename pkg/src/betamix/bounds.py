"""Finite-sample probability bounds for the estimator and the histogram.

The sample is cut into ``2 * mu`` alternating blocks of length ``m``; odd
blocks behave almost like independent ones, at a cost proportional to the
mixing coefficient at lag ``m``.  The expected L1 errors of the histograms
enter as user-supplied plug-ins because they are not computable from data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, HypothesisError, PartitionError

__all__ = [
    "BoundInputs",
    "BoundValue",
    "blocking_partition",
    "markov_block_length",
    "thm_main_bound",
    "thm_one_bound",
]


@dataclass(frozen=True)
class BoundValue:
    value: float
    vacuous: bool

    @classmethod
    def of(cls, value: float) -> "BoundValue":
        return cls(value=value, vacuous=value >= 1.0)


@dataclass(frozen=True)
class BoundInputs:
    """Arguments of the estimator deviation bound.

    Attributes
    ----------
    mu : int
        Blocks per parity, ``2 * mu * m == n``.
    m : int
        Block length.
    epsilon : float
        Deviation of the estimate from its target.
    expected_l1_marginal, expected_l1_joint : float
        Plug-in values of the expected L1 errors of the block and pair
        histograms.
    beta_m : float
        Mixing coefficient at lag ``m``, or an upper bound for it.
    """

    mu: int
    m: int
    epsilon: float
    expected_l1_marginal: float = 0.0
    expected_l1_joint: float = 0.0
    beta_m: float = 0.0

    def __post_init__(self):
        _check_blocks(self.mu, self.m)
        if self.epsilon <= 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon!r}")
        if self.expected_l1_marginal < 0 or self.expected_l1_joint < 0:
            raise DomainError("expected L1 errors must be nonnegative")
        _check_beta(self.beta_m)

    @property
    def epsilon_1(self) -> float:
        return self.epsilon / 2 - self.expected_l1_marginal

    @property
    def epsilon_2(self) -> float:
        return self.epsilon - self.expected_l1_joint


def _check_blocks(mu, m):
    for name, v in (("mu", mu), ("m", m)):
        if isinstance(v, bool) or int(v) != v or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")


def _check_beta(beta_m):
    if not 0.0 <= beta_m <= 1.0:
        raise DomainError(f"beta_m must lie in [0, 1], got {beta_m!r}")


def thm_main_bound(b: BoundInputs) -> BoundValue:
    """Bound on ``P(|estimate - target| > epsilon)``::

        2 exp(-mu eps1^2 / 2) + 2 exp(-mu eps2^2 / 2) + 4 (mu - 1) beta(m)

    with ``eps1 = epsilon/2 - E L1(block hist)`` and
    ``eps2 = epsilon - E L1(pair hist)``.

    Raises
    ------
    HypothesisError
        If ``eps1`` or ``eps2`` is not positive.
    """
    for name, eps in (("epsilon_1", b.epsilon_1), ("epsilon_2", b.epsilon_2)):
        if eps <= 0:
            raise HypothesisError(
                f"{name} = {eps:.6g} <= 0: epsilon does not exceed the expected L1 error"
            )
    value = (
        2.0 * math.exp(-b.mu * b.epsilon_1**2 / 2.0)
        + 2.0 * math.exp(-b.mu * b.epsilon_2**2 / 2.0)
        + 4.0 * (b.mu - 1) * b.beta_m
    )
    return BoundValue.of(value)


def thm_one_bound(
    mu: int, m: int, epsilon: float, expected_l1: float, beta_m: float
) -> BoundValue:
    """Bound on ``P(L1 error of a histogram > epsilon)`` for mixing input::

        2 exp(-mu eps1^2 / 2) + 2 (mu - 1) beta(m),   eps1 = epsilon - E L1
    """
    _check_blocks(mu, m)
    _check_beta(beta_m)
    if expected_l1 < 0:
        raise DomainError("expected L1 error must be nonnegative")
    eps1 = epsilon - expected_l1
    if eps1 <= 0:
        raise HypothesisError(
            f"epsilon_1 = {eps1:.6g} <= 0: epsilon does not exceed the expected L1 error"
        )
    return BoundValue.of(2.0 * math.exp(-mu * eps1**2 / 2.0) + 2.0 * (mu - 1) * beta_m)


def blocking_partition(n: int, m: int) -> tuple[list[range], list[range]]:
    """Split indices ``1..n`` into alternating blocks of length ``m``.

    Returns the odd-position blocks ``U`` and the even-position blocks
    ``V`` as 1-based ``range`` objects.

    >>> blocking_partition(12, 3)
    ([range(1, 4), range(7, 10)], [range(4, 7), range(10, 13)])
    """
    _check_blocks(n, m)
    if n % (2 * m):
        raise PartitionError(f"2*m = {2 * m} does not divide n = {n}")
    mu = n // (2 * m)
    U = [range(2 * (j - 1) * m + 1, (2 * j - 1) * m + 1) for j in range(1, mu + 1)]
    V = [range((2 * j - 1) * m + 1, 2 * j * m + 1) for j in range(1, mu + 1)]
    return U, V


def markov_block_length(n: int, r: float) -> int:
    """Block length for a chain whose mixing coefficient decays like ``a**-r``.

    Starts from ``floor(n ** (1 / (1 + r)))`` and steps down to the largest
    length ``m`` with ``2 * m`` dividing ``n``; falls back to 1.
    """
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not r > 0:
        raise DomainError(f"decay exponent r must be positive, got {r!r}")
    n = int(n)
    if math.isinf(r):
        return 1
    p = 1.0 + r
    base = math.floor(n ** (1.0 / p))
    # correct float error in the root, e.g. 1000 ** (1/3) == 9.999999999999998
    log_n = math.log(n) + 1e-12
    while p * math.log(base + 1) <= log_n:
        base += 1
    while base > 1 and p * math.log(base) > log_n:
        base -= 1
    if n % 2 == 0:
        for m in range(base, 0, -1):
            if n % (2 * m) == 0:
                return m
    return 1
