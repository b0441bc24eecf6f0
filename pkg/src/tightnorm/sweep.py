"""Structured critical-point sweep over three-value coordinate patterns.

Any constrained critical point of sum |x_j|^(2a) on the unit sphere of the
zero-sum hyperplane takes at most three distinct coordinate values
(s0, s1, s2) with multiplicities (k0, k1, k2).  For each multiplicity
split the two constraints reduce the candidate set to a circle, so the
global extremum is found by O(d^2) one-dimensional optimizations.
"""

from __future__ import annotations

import concurrent.futures
import enum
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .theory import OptimizationMode, branch_spread, branch_two_point, mode_for

__all__ = [
    "Split",
    "DiagonalForm",
    "CriticalCandidate",
    "MatchedBranch",
    "VerificationRecord",
    "SweepConfig",
    "enumerate_splits",
    "diagonalize",
    "candidate_vector",
    "two_value_candidate",
    "objective",
    "optimize_split",
    "m_numeric",
    "verify_range",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, order=True)
class Split:
    """Multiplicities (k0, k1, k2) of the three coordinate values."""

    k0: int
    k1: int
    k2: int

    def __post_init__(self) -> None:
        if self.k0 < 1 or self.k2 < 1 or self.k1 < 0:
            raise ValueError(f"invalid split {(self.k0, self.k1, self.k2)}")
        if self.k1 > self.k2:
            raise ValueError("enumeration convention requires k1 <= k2")

    @property
    def d(self) -> int:
        return self.k0 + self.k1 + self.k2


@dataclass(frozen=True)
class DiagonalForm:
    """Diagonalization data of q(s1, s2) = A s1^2 + 2 B s1 s2 + C s2^2."""

    A: float
    B: float
    C: float
    discriminant: float
    lambda1: float
    lambda2: float
    u1: float
    u2: float
    v1: float
    v2: float


@dataclass
class CriticalCandidate:
    split: Split
    t: float
    s0: float
    s1: float
    s2: float
    value: float = field(default=math.nan)


class MatchedBranch(enum.Enum):
    TWO_POINT = "two_point"
    SPREAD = "spread"
    BOTH = "both"
    NONE = "none"


@dataclass
class VerificationRecord:
    d: int
    alpha: float
    m_numeric: float
    theory_two_point: float
    theory_spread: float
    delta1: float  # |m_numeric - spread|
    delta2: float  # |m_numeric - two-point|
    confirmed: bool
    matched_branch: MatchedBranch
    best_candidate: CriticalCandidate


@dataclass(frozen=True)
class SweepConfig:
    grid_points: int = 512
    refine_tol: float = 1e-10
    eps: float = 1e-8
    parallelism: int = 0  # 0 -> os.cpu_count()

    def __post_init__(self) -> None:
        if self.grid_points < 64:
            raise ValueError("grid_points must be >= 64")
        if self.eps <= 0:
            raise ValueError("eps must be positive")

    @property
    def workers(self) -> int:
        return self.parallelism if self.parallelism > 0 else (os.cpu_count() or 1)


def enumerate_splits(d: int) -> list[Split]:
    """All splits with k0 + k1 + k2 = d, k0 >= 1, k2 >= 1, k1 <= k2,
    in lexicographic order."""
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")
    out = []
    for k0 in range(1, d - 1 + 1):
        rest = d - k0
        for k1 in range(0, rest // 2 + 1):
            k2 = rest - k1
            if k2 >= 1 and k1 <= k2:
                out.append(Split(k0, k1, k2))
    return out


def diagonalize(split: Split) -> DiagonalForm:
    """Eigen data of the constraint quadratic form for a split with k1 >= 1.

    k1 = 0 makes lambda2 vanish and the circle map singular; those splits
    are handled by two_value_candidate instead.
    """
    if split.k1 < 1:
        raise ValueError("k1 = 0 splits have no diagonal form; use two_value_candidate")
    k0, k1, k2 = float(split.k0), float(split.k1), float(split.k2)
    d = k0 + k1 + k2
    A = k1 * (k1 + k0) / k0
    B = k1 * k2 / k0
    C = k2 * (k2 + k0) / k0
    tr = k0 * (k1 + k2) + k1 * k1 + k2 * k2
    disc = tr * tr - 4.0 * k0 * k1 * k2 * d
    sq = math.sqrt(disc)
    lam1 = (tr + sq) / (2.0 * k0)
    lam2 = (tr - sq) / (2.0 * k0)
    den = math.hypot(B, A - lam1)
    u1 = B / den
    v1 = (lam1 - A) / den
    return DiagonalForm(A, B, C, disc, lam1, lam2, u1, -v1, v1, u1)


def candidate_vector(form: DiagonalForm, split: Split, t: float) -> CriticalCandidate:
    """Point on the constraint circle at angle t (objective value unset)."""
    c1 = math.cos(t) / math.sqrt(form.lambda1)
    c2 = math.sin(t) / math.sqrt(form.lambda2)
    s1 = form.u1 * c1 + form.u2 * c2
    s2 = form.v1 * c1 + form.v2 * c2
    s0 = -(split.k1 * s1 + split.k2 * s2) / split.k0
    return CriticalCandidate(split, t % (2.0 * math.pi), s0, s1, s2)


def two_value_candidate(k0: int, k2: int) -> CriticalCandidate:
    """Exact closed form for the degenerate k1 = 0 split."""
    if k0 < 1 or k2 < 1:
        raise ValueError("k0 and k2 must be positive")
    d = k0 + k2
    s2 = math.sqrt(k0 / (k2 * float(d)))
    s0 = -math.sqrt(k2 / (k0 * float(d)))
    return CriticalCandidate(Split(k0, 0, k2), 0.0, s0, 0.0, s2)


def objective(split: Split, candidate: CriticalCandidate, alpha: float) -> float:
    """sum k_i |s_i|^(2 alpha); absolute values handle sign-flipped regions."""
    p = 2.0 * alpha
    return (
        split.k0 * abs(candidate.s0) ** p
        + split.k1 * abs(candidate.s1) ** p
        + split.k2 * abs(candidate.s2) ** p
    )


# ---------------------------------------------------------------------------
# batched circle optimization
#
# All splits of a dimension are optimized together: parameters live in flat
# arrays and the coarse grid / golden-section refinement is vectorized.  The
# scalar operations above are the reference semantics; optimize_split routes
# through the same batch code with one-element arrays.
# ---------------------------------------------------------------------------


@dataclass
class _BatchForms:
    k0: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    lam1: np.ndarray
    lam2: np.ndarray
    u1: np.ndarray
    v1: np.ndarray


def _batch_forms(splits: list[Split]) -> _BatchForms:
    k0 = np.array([s.k0 for s in splits], dtype=float)
    k1 = np.array([s.k1 for s in splits], dtype=float)
    k2 = np.array([s.k2 for s in splits], dtype=float)
    d = k0 + k1 + k2
    A = k1 * (k1 + k0) / k0
    B = k1 * k2 / k0
    tr = k0 * (k1 + k2) + k1 * k1 + k2 * k2
    sq = np.sqrt(tr * tr - 4.0 * k0 * k1 * k2 * d)
    lam1 = (tr + sq) / (2.0 * k0)
    lam2 = (tr - sq) / (2.0 * k0)
    den = np.hypot(B, A - lam1)
    u1 = B / den
    v1 = (lam1 - A) / den
    return _BatchForms(k0, k1, k2, lam1, lam2, u1, v1)


def _batch_s(bf: _BatchForms, t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    c1 = np.cos(t) / np.sqrt(bf.lam1)
    c2 = np.sin(t) / np.sqrt(bf.lam2)
    s1 = bf.u1 * c1 - bf.v1 * c2
    s2 = bf.v1 * c1 + bf.u1 * c2
    s0 = -(bf.k1 * s1 + bf.k2 * s2) / bf.k0
    return s0, s1, s2


def _batch_f(bf: _BatchForms, t: np.ndarray, alpha: float) -> np.ndarray:
    p = 2.0 * alpha
    s0, s1, s2 = _batch_s(bf, t)
    return (
        bf.k0 * np.abs(s0) ** p + bf.k1 * np.abs(s1) ** p + bf.k2 * np.abs(s2) ** p
    )


def _zero_crossing_values(bf: _BatchForms, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Best objective over the angles where one of s0, s1, s2 vanishes.

    The extremizers with exact zero coordinates sit at cusps of f for
    alpha < 1/2, where grid refinement cannot resolve the value; the
    crossing angles are available in closed form and the vanishing term is
    dropped exactly.  Returns (values, angles) of shape (3, n).
    """
    p = 2.0 * alpha
    rl1 = 1.0 / np.sqrt(bf.lam1)
    rl2 = 1.0 / np.sqrt(bf.lam2)
    # s_i(t) = P cos t + Q sin t for each of s1, s2, k1 s1 + k2 s2
    Ps = np.stack([bf.u1 * rl1, bf.v1 * rl1, (bf.k1 * bf.u1 + bf.k2 * bf.v1) * rl1])
    Qs = np.stack([-bf.v1 * rl2, bf.u1 * rl2, (-bf.k1 * bf.v1 + bf.k2 * bf.u1) * rl2])
    ts = np.arctan2(-Ps, Qs) % (2.0 * math.pi)
    s0, s1, s2 = _batch_s(
        _BatchForms(
            np.broadcast_to(bf.k0, ts.shape),
            np.broadcast_to(bf.k1, ts.shape),
            np.broadcast_to(bf.k2, ts.shape),
            np.broadcast_to(bf.lam1, ts.shape),
            np.broadcast_to(bf.lam2, ts.shape),
            np.broadcast_to(bf.u1, ts.shape),
            np.broadcast_to(bf.v1, ts.shape),
        ),
        ts,
    )
    s1 = s1.copy()
    s2 = s2.copy()
    s0 = s0.copy()
    s1[0] = 0.0
    s0[0] = -(bf.k2 * s2[0]) / bf.k0
    s2[1] = 0.0
    s0[1] = -(bf.k1 * s1[1]) / bf.k0
    s0[2] = 0.0
    vals = bf.k0 * np.abs(s0) ** p + bf.k1 * np.abs(s1) ** p + bf.k2 * np.abs(s2) ** p
    return vals, ts


def _collapse_plateau_starts(mask: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Keep one grid index per run of equal local-extremum values (per row)."""
    prev_mask = np.roll(mask, 1, axis=1)
    prev_equal = g == np.roll(g, 1, axis=1)
    starts = mask & ~(prev_mask & prev_equal)
    # fully constant rows have no run start; give them their first column
    empty = ~starts.any(axis=1)
    starts[empty, 0] = True
    return starts


def _batch_extremize(
    splits: list[Split], alpha: float, mode: OptimizationMode, cfg: SweepConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Per-split extremum of f over the circle: (values, angles).

    k1 = 0 splits must not be passed here.
    """
    sign = 1.0 if mode is OptimizationMode.MAXIMIZE else -1.0
    bf = _batch_forms(splits)
    n = len(splits)
    G = cfg.grid_points
    grid = np.linspace(0.0, 2.0 * math.pi, G, endpoint=False)

    col = _BatchForms(*(a[:, None] for a in (bf.k0, bf.k1, bf.k2, bf.lam1, bf.lam2, bf.u1, bf.v1)))
    fg = _batch_f(col, grid[None, :], alpha)
    g = sign * fg
    mask = (g >= np.roll(g, 1, axis=1)) & (g >= np.roll(g, -1, axis=1))
    starts = _collapse_plateau_starts(mask, g)
    rows, cols = np.nonzero(starts)

    h = 2.0 * math.pi / G
    a = grid[cols] - h
    b = grid[cols] + h
    gather = _BatchForms(*(arr[rows] for arr in (bf.k0, bf.k1, bf.k2, bf.lam1, bf.lam2, bf.u1, bf.v1)))

    n_iter = max(1, math.ceil(math.log((2.0 * h) / cfg.refine_tol) / math.log(1.0 / _INVPHI)))
    c = b - _INVPHI * (b - a)
    e = a + _INVPHI * (b - a)
    fc = sign * _batch_f(gather, c, alpha)
    fe = sign * _batch_f(gather, e, alpha)
    for _ in range(n_iter):
        keep_low = fc >= fe
        b = np.where(keep_low, e, b)
        a = np.where(keep_low, a, c)
        c = b - _INVPHI * (b - a)
        e = a + _INVPHI * (b - a)
        fc = sign * _batch_f(gather, c, alpha)
        fe = sign * _batch_f(gather, e, alpha)
    t_ref = 0.5 * (a + b)
    g_ref = sign * _batch_f(gather, t_ref, alpha)

    # first bracket achieving the row maximum, for deterministic angles
    order = np.lexsort((np.arange(len(rows)), -g_ref, rows))
    row_sorted = rows[order]
    lead = np.ones(len(order), dtype=bool)
    lead[1:] = row_sorted[1:] != row_sorted[:-1]
    sel = order[lead]
    g_best = np.full(n, -np.inf)
    t_best = np.zeros(n)
    g_best[rows[sel]] = g_ref[sel]
    t_best[rows[sel]] = t_ref[sel]

    zvals, zts = _zero_crossing_values(bf, alpha)
    for j in range(3):
        zg = sign * zvals[j]
        better = zg > g_best
        g_best = np.where(better, zg, g_best)
        t_best = np.where(better, zts[j], t_best)

    return sign * g_best, t_best % (2.0 * math.pi)


def optimize_split(
    split: Split, alpha: float, mode: OptimizationMode, cfg: SweepConfig | None = None
) -> CriticalCandidate:
    """Extremum of f(t) over the circle for one split."""
    cfg = cfg or SweepConfig()
    if split.k1 == 0:
        cand = two_value_candidate(split.k0, split.k2)
        cand.value = objective(split, cand, alpha)
        return cand
    vals, ts = _batch_extremize([split], alpha, mode, cfg)
    form = diagonalize(split)
    cand = candidate_vector(form, split, float(ts[0]))
    _snap_zero(cand)
    cand.value = float(vals[0])
    return cand


def _snap_zero(cand: CriticalCandidate, tol: float = 1e-13) -> None:
    """Zero out a coordinate value that vanished only up to roundoff."""
    if abs(cand.s1) < tol:
        cand.s1 = 0.0
    if abs(cand.s2) < tol:
        cand.s2 = 0.0
    if abs(cand.s0) < tol:
        cand.s0 = 0.0


def m_numeric(d: int, alpha: float, cfg: SweepConfig | None = None) -> VerificationRecord:
    """Global numeric extremum over all splits, with the theory comparison."""
    if alpha == 1:
        raise ValueError("alpha = 1 has no Renyi extremum; use the Shannon path")
    cfg = cfg or SweepConfig()
    mode = mode_for(alpha)
    sign = 1.0 if mode is OptimizationMode.MAXIMIZE else -1.0
    splits = enumerate_splits(d)
    circle = [s for s in splits if s.k1 >= 1]

    values: dict[Split, tuple[float, float]] = {}
    for s in splits:
        if s.k1 == 0:
            tv = two_value_candidate(s.k0, s.k2)
            values[s] = (objective(s, tv, alpha), 0.0)
    chunk = 1024
    for i in range(0, len(circle), chunk):
        part = circle[i : i + chunk]
        vals, ts = _batch_extremize(part, alpha, mode, cfg)
        for s, v, t in zip(part, vals, ts):
            values[s] = (float(v), float(t))

    best_split = None
    best_val = math.nan
    best_t = 0.0
    for s in splits:  # lexicographic: first strict winner is kept
        v, t = values[s]
        if best_split is None or sign * v > sign * best_val:
            best_split, best_val, best_t = s, v, t

    if best_split.k1 == 0:
        best = two_value_candidate(best_split.k0, best_split.k2)
    else:
        best = candidate_vector(diagonalize(best_split), best_split, best_t)
        _snap_zero(best)
    best.value = best_val

    spread = branch_spread(d, alpha)
    two = branch_two_point(alpha)
    delta1 = abs(best_val - spread)
    delta2 = abs(best_val - two)
    valid1 = delta1 <= cfg.eps
    valid2 = delta2 <= cfg.eps
    if valid1 and valid2:
        matched = MatchedBranch.BOTH
    elif valid1:
        matched = MatchedBranch.SPREAD
    elif valid2:
        matched = MatchedBranch.TWO_POINT
    else:
        matched = MatchedBranch.NONE
    return VerificationRecord(
        d=d,
        alpha=alpha,
        m_numeric=best_val,
        theory_two_point=two,
        theory_spread=spread,
        delta1=delta1,
        delta2=delta2,
        confirmed=valid1 or valid2,
        matched_branch=matched,
        best_candidate=best,
    )


def _verify_one(args: tuple[int, float, SweepConfig]) -> VerificationRecord:
    d, alpha, cfg = args
    return m_numeric(d, alpha, cfg)


def verify_range(
    d_min: int, d_max: int, alphas: list[float], cfg: SweepConfig | None = None
) -> list[VerificationRecord]:
    """One record per (d, alpha), d-major, alphas in the given order."""
    if not 3 <= d_min <= d_max:
        raise ValueError("require 3 <= d_min <= d_max")
    cfg = cfg or SweepConfig()
    tasks = [(d, a, cfg) for d in range(d_min, d_max + 1) for a in alphas]
    if not tasks:
        return []
    if cfg.workers > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_verify_one, tasks, chunksize=8))
    return [_verify_one(t) for t in tasks]
