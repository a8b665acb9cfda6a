"""Exact mixing coefficients of finite-state stationary Markov chains.

These are the ground truth the histogram estimator is checked against.  For a
first-order chain started from its stationary law ``pi``, conditioning on the
present screens off the past, so

    beta(a) = sum_i pi_i * 1/2 * sum_j |P^a[i, j] - pi_j|

and the ``d``-block coefficient equals ``beta(a)`` for every ``d``.
:func:`beta_d_exact` recomputes the latter by brute-force enumeration so
the two routes can be compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CapacityError, DomainError, NonErgodicError

__all__ = [
    "MarkovChain",
    "beta_d_exact",
    "beta_exact",
    "read_chain",
    "stationary",
    "symmetric_two_state",
]

ENUMERATION_LIMIT = 10**6
_STOCHASTIC_TOL = 1e-12
_RESIDUAL_TOL = 1e-12
_MAX_ITER = 10**5


def _check_stochastic(P) -> np.ndarray:
    P = np.array(P, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] < 1:
        raise DomainError(f"transition matrix must be square, got shape {P.shape}")
    if not np.all(np.isfinite(P)) or np.any(P < 0):
        raise DomainError("transition probabilities must be finite and nonnegative")
    if np.any(np.abs(P.sum(axis=1) - 1.0) > _STOCHASTIC_TOL):
        raise DomainError("each row of the transition matrix must sum to 1")
    return P


def _is_irreducible(P: np.ndarray) -> bool:
    S = P.shape[0]
    reach = (P > 0) | np.eye(S, dtype=bool)
    # repeated squaring of the reachability relation
    for _ in range(max(1, int(np.ceil(np.log2(S))) + 1)):
        reach = reach | ((reach.astype(np.int64) @ reach.astype(np.int64)) > 0)
    return bool(reach.all())


def stationary(P) -> np.ndarray:
    """Unique stationary distribution of an irreducible transition matrix.

    Uses power iteration on the lazy chain ``(I + P) / 2``, which has the
    same stationary law and converges for periodic chains as well.

    Raises
    ------
    NonErgodicError
        If the chain is reducible, so the stationary law is not unique.
    """
    P = _check_stochastic(P)
    S = P.shape[0]
    if not _is_irreducible(P):
        raise NonErgodicError("transition matrix is reducible; stationary distribution is not unique")
    lazy = 0.5 * (np.eye(S) + P)
    pi = np.full(S, 1.0 / S)
    residual = np.abs(pi @ P - pi).sum()
    for _ in range(_MAX_ITER):
        nxt = pi @ lazy
        nxt /= nxt.sum()
        nxt_residual = np.abs(nxt @ P - nxt).sum()
        if residual <= _RESIDUAL_TOL and nxt_residual >= residual:
            # converged and no longer improving: stop at rounding level
            return pi
        pi, residual = nxt, nxt_residual
    if residual <= _RESIDUAL_TOL:
        return pi
    raise NonErgodicError(f"power iteration did not converge in {_MAX_ITER} steps")


@dataclass(frozen=True)
class MarkovChain:
    """Finite-state chain with its stationary distribution."""

    P: np.ndarray = field(repr=False)
    pi: np.ndarray = field(repr=False)

    @classmethod
    def from_matrix(cls, P) -> "MarkovChain":
        P = _check_stochastic(P)
        if P.shape[0] < 2:
            raise DomainError("a chain needs at least two states")
        pi = stationary(P)
        P.setflags(write=False)
        pi.setflags(write=False)
        return cls(P=P, pi=pi)

    @property
    def states(self) -> int:
        return self.P.shape[0]

    def __repr__(self):
        return f"MarkovChain(states={self.states}, P={self.P.tolist()})"


def symmetric_two_state(q: float) -> MarkovChain:
    """Two-state chain that switches state with probability ``q``."""
    if not 0.0 < q <= 1.0:
        raise DomainError(f"switch probability must lie in (0, 1], got {q!r}")
    return MarkovChain.from_matrix([[1.0 - q, q], [q, 1.0 - q]])


def _as_chain(chain) -> MarkovChain:
    return chain if isinstance(chain, MarkovChain) else MarkovChain.from_matrix(chain)


def _check_lag(a):
    if isinstance(a, bool) or int(a) != a or a < 1:
        raise DomainError(f"lag must be a positive integer, got {a!r}")
    return int(a)


def beta_exact(chain, a: int) -> float:
    """Mixing coefficient at lag ``a`` from the ``a``-step transition matrix."""
    chain = _as_chain(chain)
    a = _check_lag(a)
    Pa = np.linalg.matrix_power(chain.P, a)
    row_tv = 0.5 * np.abs(Pa - chain.pi[None, :]).sum(axis=1)
    return float(min(1.0, max(0.0, chain.pi @ row_tv)))


def _block_probabilities(chain: MarkovChain, d: int) -> dict[tuple[int, ...], float]:
    out = {}
    for block in itertools.product(range(chain.states), repeat=d):
        p = chain.pi[block[0]]
        for s, t in zip(block, block[1:]):
            p *= chain.P[s, t]
        out[block] = p
    return out


def beta_d_exact(chain, a: int, d: int) -> float:
    """``d``-block mixing coefficient by enumerating all ``S**(2d)`` block pairs.

    The joint law of a past block ``x`` and a future block ``y`` starting
    ``a`` steps after the end of ``x`` is
    ``p(x) * P^a[x[-1], y[0]] * p(y) / pi[y[0]]``; the product law is
    ``p(x) * p(y)``.

    Raises
    ------
    CapacityError
        If ``S**(2d)`` exceeds :data:`ENUMERATION_LIMIT`.
    """
    chain = _as_chain(chain)
    a = _check_lag(a)
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"d must be a positive integer, got {d!r}")
    S = chain.states
    if S ** (2 * d) > ENUMERATION_LIMIT:
        raise CapacityError(
            f"{S}**{2 * d} block pairs exceed the enumeration limit {ENUMERATION_LIMIT}"
        )
    Pa = np.linalg.matrix_power(chain.P, a)
    blocks = _block_probabilities(chain, d)
    # p(y) / pi[y[0]]: probability of the rest of y given its first state
    tails = {y: (p / chain.pi[y[0]] if chain.pi[y[0]] > 0 else 0.0) for y, p in blocks.items()}
    total = 0.0
    for x, px in blocks.items():
        last = x[-1]
        for y, py in blocks.items():
            joint = px * Pa[last, y[0]] * tails[y]
            total += abs(joint - px * py)
    return float(min(1.0, max(0.0, 0.5 * total)))


def read_chain(path) -> MarkovChain:
    """Parse a chain file: the state count, then one whitespace-separated row per state."""
    lines = [
        line.split("#", 1)[0].strip() for line in Path(path).read_text().splitlines()
    ]
    lines = [line for line in lines if line]
    if not lines:
        raise DomainError(f"{path}: empty chain file")
    try:
        S = int(lines[0])
    except ValueError:
        raise DomainError(f"{path}: first line must be the number of states") from None
    if len(lines) != S + 1:
        raise DomainError(f"{path}: expected {S} matrix rows, found {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=1):
        try:
            row = [float(tok) for tok in line.split()]
        except ValueError:
            raise DomainError(f"{path}: row {i} is not numeric") from None
        if len(row) != S:
            raise DomainError(f"{path}: row {i} has {len(row)} entries, expected {S}")
        rows.append(row)
    return MarkovChain.from_matrix(rows)
