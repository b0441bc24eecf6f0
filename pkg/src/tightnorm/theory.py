"""Closed-form side of the tight norm bound on the zero-sum hyperplane.

The bound for vectors x with sum(x) = 0 reads

    ||x||_{2a} <= M(d, a)^(1/2a) * ||x||_2      (a >= 1)
    ||x||_{2a} >= M(d, a)^(1/2a) * ||x||_2      (0 < a < 1)

where M(d, a) is the better of two candidate values: the "two-point"
value 2^(1-a) attained on (1/sqrt2, -1/sqrt2, 0, ..., 0) and the "spread"
value d^-a ((d-1)^a + (d-1)^(1-a)) attained on the vector with one large
entry and d-1 equal small entries.  The branch switches at the critical
dimension d_crit(a).
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "Branch",
    "OptimizationMode",
    "TheoryValue",
    "Instance",
    "branch_two_point",
    "branch_spread",
    "branch_spread_log",
    "critical_dimension",
    "d_star_shannon",
    "m_theory",
    "renyi_min",
    "shannon_min",
    "extremal_vector",
    "check_inequality",
    "mode_for",
]

HYPERPLANE_TOL = 1e-12


class Branch(enum.Enum):
    TWO_POINT = "two_point"
    SPREAD = "spread"
    TIE = "tie"


class OptimizationMode(enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


@dataclass(frozen=True)
class TheoryValue:
    value: float
    branch: Branch


@dataclass(frozen=True)
class Instance:
    """A (dimension, exponent) pair; the exponent a enters as norm index 2a."""

    d: int
    alpha: float

    def __post_init__(self) -> None:
        if self.d < 3:
            raise ValueError(f"dimension must be >= 3, got {self.d}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def mode(self) -> OptimizationMode:
        return mode_for(self.alpha)


def mode_for(alpha: float) -> OptimizationMode:
    if alpha == 1:
        raise ValueError("alpha = 1 has no optimization mode; use the Shannon path")
    return OptimizationMode.MAXIMIZE if alpha > 1 else OptimizationMode.MINIMIZE


def _check_alpha(alpha: float) -> None:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")


def _check_d(d: int) -> None:
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")


def branch_two_point(alpha: float) -> float:
    """Value on the two-point configuration: 2^(1-alpha)."""
    _check_alpha(alpha)
    return 2.0 ** (1.0 - alpha)


def branch_spread_log(d: float, alpha: float) -> float:
    """log of the spread-branch value, safe for large d and alpha."""
    ld = math.log(d - 1.0)
    return -alpha * math.log(d) + np.logaddexp(alpha * ld, (1.0 - alpha) * ld)


def branch_spread(d: float, alpha: float) -> float:
    """Value on the spread configuration: d^-a ((d-1)^a + (d-1)^(1-a))."""
    _check_alpha(alpha)
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")
    return float(math.exp(branch_spread_log(d, alpha)))


def _branch_gap_log(d: float, alpha: float) -> float:
    """log(spread) - log(two-point); vanishes at d = 2 and d = d_crit(alpha)."""
    return branch_spread_log(d, alpha) - (1.0 - alpha) * math.log(2.0)


_SCAN_START = 1e-6
_SCAN_FACTOR = 2.0
_D_CEILING = 1e305


@functools.lru_cache(maxsize=4096)
def critical_dimension(alpha: float) -> float:
    """Largest root d > 2 of two-point value == spread value.

    Returns math.inf for alpha <= 1/2 (the two-point branch always wins
    there).  The gap function has a double sign structure with roots at
    d = 2 and at the sought root, so we scan geometrically away from 2
    until the sign flips, then polish with a bracketing root finder.
    """
    _check_alpha(alpha)
    if alpha <= 0.5:
        return math.inf
    offset = _SCAN_START
    sign0 = 0.0
    lo = 2.0 + offset
    while True:
        hi = 2.0 + offset * _SCAN_FACTOR
        g = _branch_gap_log(hi, alpha)
        if sign0 == 0.0:
            sign0 = math.copysign(1.0, g) if g != 0.0 else 0.0
        elif g == 0.0 or math.copysign(1.0, g) != sign0:
            break
        lo = hi
        offset *= _SCAN_FACTOR
        if hi > _D_CEILING:
            # alpha is so close to 1/2 that the root exceeds float range
            return math.inf
    root = brentq(_branch_gap_log, lo, hi, args=(alpha,), xtol=1e-10, rtol=8.9e-16)
    return float(root)


def _shannon_gap(d: float) -> float:
    return math.log(d / 2.0) - (d - 2.0) / d * math.log(d - 1.0)


def d_star_shannon() -> float:
    """Root in (6, 7) of log(d/2) = ((d-2)/d) log(d-1), the alpha -> 1 limit
    of the critical dimension."""
    return float(brentq(_shannon_gap, 6.0, 7.0, xtol=1e-10, rtol=8.9e-16))


def m_theory(d: int, alpha: float) -> TheoryValue:
    """Conjectured tight constant M(d, alpha) with its branch label."""
    _check_d(d)
    _check_alpha(alpha)
    if alpha == 1:
        raise ValueError("alpha = 1 is the Shannon limit; use shannon_min")
    two = branch_two_point(alpha)
    if alpha <= 0.5:
        return TheoryValue(two, Branch.TWO_POINT)
    spread = branch_spread(d, alpha)
    if abs(two - spread) <= 1e-12:
        return TheoryValue(two, Branch.TIE)
    if d <= critical_dimension(alpha):
        return TheoryValue(two, Branch.TWO_POINT)
    return TheoryValue(spread, Branch.SPREAD)


def renyi_min(d: int, alpha: float) -> float:
    """Minimum of the order-alpha Renyi entropy of squared coordinates over
    the unit sphere of the zero-sum hyperplane."""
    tv = m_theory(d, alpha)
    if tv.branch is Branch.SPREAD:
        return branch_spread_log(d, alpha) / (1.0 - alpha)
    # log(2^(1-a)) / (1-a) == log 2 exactly
    return math.log(2.0)


def shannon_min(d: int) -> float:
    """Minimum Shannon entropy of squared coordinates (the alpha -> 1 case)."""
    _check_d(d)
    if d <= 6:
        return math.log(2.0)
    return math.log(d) - (d - 2.0) / d * math.log(d - 1.0)


def extremal_vector(d: int, alpha: float) -> np.ndarray:
    """A unit vector on the hyperplane attaining M(d, alpha)."""
    tv = m_theory(d, alpha)
    x = np.zeros(d)
    if tv.branch is Branch.SPREAD:
        x[0] = math.sqrt((d - 1.0) / d)
        x[1:] = -math.sqrt(1.0 / ((d - 1.0) * d))
    else:
        x[0] = 1.0 / math.sqrt(2.0)
        x[1] = -x[0]
    return x


def check_inequality(x, alpha: float) -> tuple[float, bool]:
    """Ratio ||x||_{2a} / ||x||_2 and whether the conjectured bound holds.

    The direction of the comparison follows the exponent: <= bound for
    alpha >= 1, >= bound for alpha < 1 (slack 1e-12 either way).
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("expected a 1-d vector")
    norm2 = float(np.linalg.norm(x))
    if norm2 == 0.0:
        raise ValueError("zero vector")
    if abs(float(np.sum(x))) > 1e-9 * max(1.0, norm2):
        raise ValueError("vector is not on the zero-sum hyperplane")
    d = x.size
    ratio = float(np.sum(np.abs(x) ** (2.0 * alpha))) ** (1.0 / (2.0 * alpha)) / norm2
    bound = m_theory(d, alpha).value ** (1.0 / (2.0 * alpha))
    if alpha >= 1:
        satisfied = ratio <= bound + 1e-12
    else:
        satisfied = ratio >= bound - 1e-12
    return ratio, satisfied
