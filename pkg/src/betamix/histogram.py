"""Series normalization, delay embeddings and sparse regular-grid histograms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DomainError, InsufficientDataError

__all__ = [
    "AffineTransform",
    "GridSpec",
    "SparseHistogram",
    "as_series",
    "build",
    "embed",
    "embed_pairs",
    "encode_bins",
    "normalize",
]

# Bin keys are packed into int64 while J**dim stays below this; beyond it
# they fall back to exact Python integers in an object array.
_INT64_KEY_LIMIT = 2**62


def as_series(values) -> np.ndarray:
    """Validate a sample path and return it as a 1-D float64 array."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise DomainError(f"series must be one-dimensional, got shape {x.shape}")
    if x.size == 0:
        raise InsufficientDataError(0, 1)
    if not np.all(np.isfinite(x)):
        bad = int(np.flatnonzero(~np.isfinite(x))[0])
        raise DomainError(f"series value at position {bad} is not finite")
    return x


class AffineTransform(NamedTuple):
    """Map ``y = (x - offset) / scale``; ``scale == 0`` marks a constant series."""

    offset: float
    scale: float


def normalize(values) -> tuple[np.ndarray, AffineTransform]:
    """Rescale a series onto ``[0, 1]`` by its minimum and maximum.

    A constant series maps to all zeros.

    >>> normalize([2.0, 4.0, 6.0])[0]
    array([0. , 0.5, 1. ])
    """
    x = as_series(values)
    lo = float(x.min())
    hi = float(x.max())
    scale = hi - lo
    if scale == 0.0:
        return np.zeros_like(x), AffineTransform(lo, 0.0)
    y = (x - lo) / scale
    # (hi - lo) / (hi - lo) is exactly 1, but guard against a subnormal scale
    np.clip(y, 0.0, 1.0, out=y)
    return y, AffineTransform(lo, scale)


def embed(values, d: int) -> np.ndarray:
    """All ``n - d + 1`` windows of ``d`` consecutive values, shape ``(n-d+1, d)``."""
    x = as_series(values)
    d = _positive_int(d, "d")
    if x.size < d:
        raise InsufficientDataError(x.size, d)
    return sliding_window_view(x, d)


def embed_pairs(values, d: int, a: int) -> np.ndarray:
    """Pairs of ``d``-blocks whose last and first elements are ``a`` steps apart.

    Row ``i`` is ``(x[i], ..., x[i+d-1], x[i+d-1+a], ..., x[i+2d-2+a])``, the
    past block followed by the future block.  There are ``n - a - 2d + 2``
    rows.
    """
    x = as_series(values)
    d = _positive_int(d, "d")
    a = _positive_int(a, "a")
    minimum = 2 * d + a - 1
    if x.size < minimum:
        raise InsufficientDataError(x.size, minimum)
    windows = sliding_window_view(x, d)
    count = x.size - a - 2 * d + 2
    return np.hstack([windows[:count], windows[d - 1 + a : d - 1 + a + count]])


@dataclass(frozen=True)
class GridSpec:
    """Regular grid over ``[0, 1]**dim`` with cells of side ``h``.

    The last cell on each axis is closed on the right so that ``1.0`` is
    counted; when ``1/h`` is not an integer it is also shorter than ``h``.
    """

    dim: int
    h: float

    def __post_init__(self):
        _positive_int(self.dim, "dim")
        if not (0.0 < self.h <= 1.0):
            raise DomainError(f"bandwidth must lie in (0, 1], got {self.h!r}")

    @property
    def bins_per_axis(self) -> int:
        # tolerate float dust such as 1 / (1/3) == 3.0000000000000004
        return max(1, math.ceil(1.0 / self.h - 1e-12))

    @property
    def total_bins(self) -> int:
        return self.bins_per_axis**self.dim

    def squared(self) -> "GridSpec":
        """The product grid used for pairs of blocks."""
        return GridSpec(2 * self.dim, self.h)

    def bin_index(self, points) -> np.ndarray:
        """Per-axis bin indices ``min(floor(y / h), J - 1)`` for each point."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if self.dim == 1 else pts.reshape(1, -1)
        if pts.shape[1] != self.dim:
            raise DomainError(f"points have {pts.shape[1]} coordinates, grid has dim {self.dim}")
        if pts.size and (not np.all(np.isfinite(pts)) or pts.min() < 0.0 or pts.max() > 1.0):
            raise DomainError("histogram coordinates must lie in [0, 1]")
        idx = np.floor(pts / self.h).astype(np.int64)
        np.minimum(idx, self.bins_per_axis - 1, out=idx)
        return idx


def encode_bins(idx: np.ndarray, bins_per_axis: int) -> np.ndarray:
    """Row-major scalar key for each row of per-axis bin indices."""
    idx = np.asarray(idx)
    dim = idx.shape[1]
    if bins_per_axis**dim < _INT64_KEY_LIMIT:
        keys = np.zeros(idx.shape[0], dtype=np.int64)
        for j in range(dim):
            keys *= bins_per_axis
            keys += idx[:, j]
        return keys
    keys = np.zeros(idx.shape[0], dtype=object)
    for j in range(dim):
        keys = keys * bins_per_axis + idx[:, j].astype(object)
    return keys


@dataclass(frozen=True)
class SparseHistogram:
    """Bin counts of a point cloud on a :class:`GridSpec`, occupied bins only.

    Attributes
    ----------
    grid : GridSpec
    count : int
        Total number of points ``m``.
    keys : ndarray
        Sorted row-major keys of the occupied bins.
    bins : ndarray, shape (k, dim)
        Per-axis indices of the occupied bins, aligned with ``keys``.
    counts : ndarray of int64
        Points per occupied bin; ``counts.sum() == count``.
    """

    grid: GridSpec
    count: int
    keys: np.ndarray = field(repr=False)
    bins: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)

    @property
    def occupied(self) -> int:
        return int(self.counts.size)

    @property
    def probabilities(self) -> np.ndarray:
        if self.count == 0:
            return np.zeros(0)
        return self.counts / self.count

    @property
    def mass(self) -> dict[tuple[int, ...], float]:
        """Mapping from bin multi-index to probability."""
        return {
            tuple(int(i) for i in b): float(p) for b, p in zip(self.bins, self.probabilities)
        }

    def density(self, points) -> np.ndarray:
        """Histogram density ``mass(bin(x)) / h**dim`` at each point."""
        idx = self.grid.bin_index(points)
        keys = encode_bins(idx, self.grid.bins_per_axis)
        return lookup_counts(self, keys) / (self.count * self.grid.h**self.grid.dim)

    @classmethod
    def from_counts(cls, grid: GridSpec, table) -> "SparseHistogram":
        """Build directly from a ``{bin multi-index: count}`` mapping."""
        items = [(tuple(b), int(c)) for b, c in dict(table).items() if int(c) != 0]
        if any(c < 0 for _, c in items):
            raise DomainError("bin counts must be nonnegative")
        J = grid.bins_per_axis
        bins = np.array([b for b, _ in items], dtype=np.int64).reshape(-1, grid.dim)
        if bins.size and (bins.min() < 0 or bins.max() >= J):
            raise DomainError(f"bin indices must lie in [0, {J})")
        counts = np.array([c for _, c in items], dtype=np.int64)
        return cls._from_indices(grid, bins, counts)

    @classmethod
    def _from_indices(cls, grid, bins, counts=None):
        J = grid.bins_per_axis
        keys = encode_bins(bins, J)
        if counts is None:
            keys, first, counts = np.unique(keys, return_index=True, return_counts=True)
        else:
            keys, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
            counts = np.bincount(inverse.ravel(), weights=counts, minlength=keys.size)
        counts = np.asarray(counts, dtype=np.int64)
        bins = bins[first]
        for arr in (keys, bins, counts):
            arr.setflags(write=False)
        return cls(grid=grid, count=int(counts.sum()), keys=keys, bins=bins, counts=counts)


def build(points, grid: GridSpec) -> SparseHistogram:
    """Count points of ``[0, 1]**dim`` into the cells of ``grid``.

    >>> hist = build([[0.1], [0.6], [0.7]], GridSpec(1, 0.5))
    >>> hist.mass
    {(0,): 0.3333333333333333, (1,): 0.6666666666666666}
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        pts = pts.reshape(0, grid.dim)
    idx = grid.bin_index(pts)
    return SparseHistogram._from_indices(grid, idx)


def lookup_counts(hist: SparseHistogram, keys: np.ndarray) -> np.ndarray:
    """Counts of ``hist`` at the given bin keys, zero for unoccupied bins."""
    keys = np.asarray(keys)
    if hist.keys.size == 0 or keys.size == 0:
        return np.zeros(keys.shape, dtype=np.int64)
    pos = np.searchsorted(hist.keys, keys)
    np.minimum(pos, hist.keys.size - 1, out=pos)
    found = hist.keys[pos] == keys
    return np.where(found, hist.counts[pos], 0).astype(np.int64)


def _positive_int(value, name):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
