"""Two-histogram estimate of the beta-mixing coefficient.

For a lag ``a`` and block length ``d`` the estimate is half the L1 distance
between the histogram of lagged block pairs (dimension ``2d``) and the
product of the block histogram with itself (dimension ``d``).  Both are
piecewise constant on the same product grid, so the integral is a finite
sum over cells, and since the block masses sum to one it only needs the
cells the pair histogram occupies::

    1/2 * (1 + sum_{occupied} (|p_pair - p_past * p_future| - p_past * p_future))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, DomainError, InsufficientDataError
from .histogram import (
    GridSpec,
    SparseHistogram,
    as_series,
    build,
    embed,
    embed_pairs,
    encode_bins,
    lookup_counts,
    normalize,
)
from .schedule import make_schedule

__all__ = [
    "EstimatorConfig",
    "MixingEstimate",
    "beta_from_histograms",
    "estimate_beta",
    "estimate_curve",
    "minimum_length",
]


@dataclass(frozen=True)
class EstimatorConfig:
    a: int
    d: int
    h: float

    def __post_init__(self):
        for name in ("a", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
        if not (0.0 < self.h <= 1.0):
            raise DomainError(f"bandwidth must lie in (0, 1], got {self.h!r}")

    @classmethod
    def scheduled(cls, n: int, a: int, d: int | None = None, h: float | None = None):
        """Fill in whichever of ``d`` and ``h`` is missing from the growth schedule."""
        if d is None or h is None:
            sched = make_schedule(n)
            d = sched.d if d is None else d
            h = sched.h if h is None else h
        return cls(a=a, d=d, h=h)


@dataclass(frozen=True)
class MixingEstimate:
    config: EstimatorConfig
    n: int
    beta_hat: float
    marginal_points: int
    joint_points: int
    occupied_joint_bins: int

    def to_dict(self) -> dict:
        return {
            "a": self.config.a,
            "d": self.config.d,
            "h": self.config.h,
            "n": self.n,
            "beta_hat": self.beta_hat,
            "marginal_points": self.marginal_points,
            "joint_points": self.joint_points,
            "occupied_joint_bins": self.occupied_joint_bins,
        }


def minimum_length(d: int, a: int) -> int:
    """Shortest series that yields at least one lagged pair of ``d``-blocks."""
    return 2 * d + a - 1


def beta_from_histograms(joint: SparseHistogram, marginal: SparseHistogram) -> float:
    """Half the L1 distance between a pair histogram and the block product.

    Parameters
    ----------
    joint : SparseHistogram
        Histogram of concatenated (past, future) blocks on a grid of
        dimension ``2d``.
    marginal : SparseHistogram
        Histogram of single blocks on the dimension ``d`` grid with the same
        bandwidth.

    Returns
    -------
    float
        Value in ``[0, 1]``.
    """
    d = marginal.grid.dim
    if joint.grid.dim != 2 * d:
        raise ConfigurationError(
            f"joint histogram has dim {joint.grid.dim}, expected {2 * d}"
        )
    J = marginal.grid.bins_per_axis
    if joint.grid.bins_per_axis != J or joint.grid.h != marginal.grid.h:
        raise ConfigurationError("joint and marginal histograms use different grids")
    if joint.count == 0 or marginal.count == 0:
        raise ConfigurationError("histograms must be nonempty")

    past = lookup_counts(marginal, encode_bins(joint.bins[:, :d], J))
    future = lookup_counts(marginal, encode_bins(joint.bins[:, d:], J))

    # Scale every mass by m_joint * m_marginal**2 so the sum is over integers
    # and the only rounding is the final division.
    m_joint = joint.count
    m_sq = marginal.count * marginal.count
    denominator = 2 * m_joint * m_sq
    dtype = np.int64 if denominator < 2**62 else object
    pair_scaled = joint.counts.astype(dtype) * m_sq
    product_scaled = past.astype(dtype) * future.astype(dtype) * m_joint
    numerator = (
        int(np.abs(pair_scaled - product_scaled).sum())
        + m_sq * m_joint
        - int(product_scaled.sum())
    )
    return numerator / denominator


def estimate_beta(values, config: EstimatorConfig) -> MixingEstimate:
    """Estimate the mixing coefficient at lag ``config.a`` from one sample path.

    The series is min-max normalized, so the estimate is unchanged by
    increasing affine maps of the data.
    """
    x = as_series(values)
    return estimate_curve(x, [config.a], d=config.d, h=config.h)[0]


def estimate_curve(
    values, lags: Sequence[int], d: int | None = None, h: float | None = None
) -> list[MixingEstimate]:
    """Estimates for several lags sharing one block histogram.

    ``d`` and ``h`` default to the growth schedule for the series length.
    """
    x = as_series(values)
    lags = list(lags)
    if not lags:
        raise DomainError("at least one lag is required")
    n = x.size
    configs = [EstimatorConfig.scheduled(n, a, d, h) for a in lags]
    dim = configs[0].d
    need = minimum_length(dim, max(c.a for c in configs))
    if n < need:
        raise InsufficientDataError(n, need)

    y, _ = normalize(x)
    grid = GridSpec(dim, configs[0].h)
    marginal = build(embed(y, dim), grid)
    pair_grid = grid.squared()

    out = []
    for cfg in configs:
        joint = build(embed_pairs(y, dim, cfg.a), pair_grid)
        out.append(
            MixingEstimate(
                config=cfg,
                n=n,
                beta_hat=beta_from_histograms(joint, marginal),
                marginal_points=marginal.count,
                joint_points=joint.count,
                occupied_joint_bins=joint.occupied,
            )
        )
    return out
