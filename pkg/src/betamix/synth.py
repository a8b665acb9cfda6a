"""Seeded generators for stationary test processes.

All generators draw from ``numpy.random.Generator(numpy.random.PCG64(seed))``
(PCG-XSL-RR 128/64 as implemented by NumPy).  The same parameters and seed
give a bit-identical series.  Every process starts in its stationary law, so
no burn-in is discarded.
"""

from __future__ import annotations

import bisect
import math

import numpy as np
from scipy.signal import lfilter

from .errors import DomainError
from .markov import MarkovChain, _as_chain

__all__ = ["make_rng", "sample_ar1", "sample_iid_uniform", "sample_markov"]

RNG_ALGORITHM = "numpy.random.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _inverse_cdf(cdf, u):
    # cdf[-1] may round to just below 1
    return min(bisect.bisect_right(cdf, u), len(cdf) - 1)


def sample_markov(chain, n: int, seed: int) -> np.ndarray:
    """Stationary sample path of a finite chain, states emitted as ``0.0 .. S-1``.

    One uniform variate per step selects the next state by inverse CDF on the
    current row of the transition matrix; the first state is drawn from the
    stationary distribution the same way.
    """
    chain: MarkovChain = _as_chain(chain)
    n = _check_n(n)
    u = make_rng(seed).random(n).tolist()
    rows = [np.cumsum(row).tolist() for row in chain.P]
    state = _inverse_cdf(np.cumsum(chain.pi).tolist(), u[0])
    out = [state]
    for v in u[1:]:
        state = _inverse_cdf(rows[state], v)
        out.append(state)
    return np.asarray(out, dtype=np.float64)


def sample_ar1(phi: float, sigma: float, n: int, seed: int) -> np.ndarray:
    """Gaussian AR(1) path ``x[t+1] = phi * x[t] + sigma * eps[t]`` from stationarity.

    ``x[0] ~ Normal(0, sigma**2 / (1 - phi**2))``.
    """
    if not abs(phi) < 1:
        raise DomainError(f"AR(1) with |phi| >= 1 is not stationary (phi={phi!r})")
    if not (sigma > 0 and math.isfinite(sigma)):
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    n = _check_n(n)
    z = make_rng(seed).standard_normal(n)
    drive = sigma * z
    drive[0] = z[0] * sigma / math.sqrt(1.0 - phi * phi)
    return lfilter([1.0], [1.0, -phi], drive)


def sample_iid_uniform(n: int, seed: int) -> np.ndarray:
    """``n`` independent Uniform[0, 1) draws."""
    return make_rng(seed).random(_check_n(n))
