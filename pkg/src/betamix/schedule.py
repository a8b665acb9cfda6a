"""Lambert W and the dimension/bandwidth growth schedule.

The histogram dimension grows like ``exp(W(log n))`` and the bandwidth
shrinks like ``n ** -k`` with

    k = (W(log n) + log(n) / 2) / (log(n) * (exp(W(log n)) / 2 + 1))

which balances the variance term ``1 / sqrt(n h^d)`` of a histogram
against its bias ``d h``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["Schedule", "lambert_w0", "make_schedule"]

_MAX_ITER = 50


def lambert_w0(x: float) -> float:
    """Principal branch of the Lambert W function on ``[0, inf)``.

    Solves ``w * exp(w) = x`` by Halley iteration started at ``log(1 + x)``.

    Parameters
    ----------
    x : float
        Nonnegative argument.

    Returns
    -------
    float
        ``w >= 0`` with ``w * exp(w) == x`` up to rounding.

    Raises
    ------
    DomainError
        If ``x`` is negative or not finite.
    """
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"lambert_w0 is defined here only for finite x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    w = math.log1p(x)
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= 4.0 * math.ulp(max(w, 1.0)):
            break
    return w


@dataclass(frozen=True)
class Schedule:
    """Histogram dimension and bandwidth chosen for a sample of size ``n``.

    ``h == n ** -k`` holds by construction.
    """

    n: float
    d: int
    k: float
    h: float

    @property
    def bins_per_axis(self) -> int:
        return math.ceil(1.0 / self.h - 1e-12)


def make_schedule(n: float) -> Schedule:
    """Compute ``(d, k, h)`` for sample size ``n``.

    ``d = max(1, floor(exp(W(log n))))``.  The exponent ``k`` keeps the
    continuous ``exp(W(log n))`` in its denominator rather than the floored
    dimension.  Real-valued ``n`` is accepted for diagnostics (for example
    ``n = e**e`` gives ``k = 1/e`` exactly in exact arithmetic).

    Raises
    ------
    DomainError
        If ``n < 3``.
    """
    n = float(n)
    if not math.isfinite(n) or n < 3:
        raise DomainError(f"schedule requires n >= 3, got {n!r}")
    log_n = math.log(n)
    w = lambert_w0(log_n)
    growth = math.exp(w)
    d = max(1, math.floor(growth))
    k = (w + 0.5 * log_n) / (log_n * (0.5 * growth + 1.0))
    h = n ** (-k)
    return Schedule(n=n, d=d, k=k, h=h)
