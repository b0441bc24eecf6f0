"""Brute-force extremizers on the unit sphere of the zero-sum hyperplane.

Independent of the structured sweep: a dense angle grid for d = 3 and a
multi-start projected gradient search for general d.  Used to certify the
sweep on small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .theory import OptimizationMode

__all__ = ["OracleConfig", "oracle_d3", "oracle_general", "oracle_shannon"]


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 64
    max_iters: int = 2000
    seed: int = 0
    step_tol: float = 1e-12
    grid_n: int = 20_000

    def __post_init__(self) -> None:
        if self.restarts < 8:
            raise ValueError("restarts must be >= 8")
        if self.grid_n < 10_000:
            raise ValueError("grid_n must be >= 10^4")


def _m_phi3(alpha: float, phi: np.ndarray) -> np.ndarray:
    shifts = 2.0 * math.pi * np.arange(3) / 3.0
    x = math.sqrt(2.0 / 3.0) * np.cos(np.asarray(phi)[..., None] + shifts)
    return np.sum(np.abs(x) ** (2.0 * alpha), axis=-1)


def oracle_d3(
    alpha: float, mode: OptimizationMode, grid_n: int = 20_000
) -> tuple[float, float]:
    """Dense grid over one fundamental angle segment [0, pi/3] plus golden
    refinement.  Returns (extremum, arg angle)."""
    if alpha <= 0 or alpha == 1:
        raise ValueError("require alpha > 0, alpha != 1")
    sign = 1.0 if mode is OptimizationMode.MAXIMIZE else -1.0
    phis = np.linspace(0.0, math.pi / 3.0, grid_n)
    vals = sign * _m_phi3(alpha, phis)
    i = int(np.argmax(vals))
    lo = phis[max(i - 1, 0)]
    hi = phis[min(i + 1, grid_n - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    e = a + invphi * (b - a)
    fc = sign * float(_m_phi3(alpha, np.array(c)))
    fe = sign * float(_m_phi3(alpha, np.array(e)))
    while b - a > 1e-14:
        if fc >= fe:
            b, e, fe = e, c, fc
            c = b - invphi * (b - a)
            fc = sign * float(_m_phi3(alpha, np.array(c)))
        else:
            a, c, fc = c, e, fe
            e = a + invphi * (b - a)
            fe = sign * float(_m_phi3(alpha, np.array(e)))
    phi = 0.5 * (a + b)
    return float(_m_phi3(alpha, np.array(phi))), phi


def _project_start(z: np.ndarray) -> np.ndarray:
    z = z - z.mean()
    return z / np.linalg.norm(z)


def _power_objective(alpha: float):
    p = 2.0 * alpha

    def f(x: np.ndarray) -> float:
        return float(np.sum(np.abs(x) ** p))

    if alpha > 0.5:

        def grad(x: np.ndarray) -> np.ndarray:
            return p * np.sign(x) * np.abs(x) ** (p - 1.0)

    else:
        # |x|^(p-1) is singular at 0 for p < 1; floor the magnitude so the
        # search can still slide coordinates toward exact zeros
        def grad(x: np.ndarray) -> np.ndarray:
            return p * np.sign(x) * np.maximum(np.abs(x), 1e-12) ** (p - 1.0)

    return f, grad


def _shannon_objective():
    def f(x: np.ndarray) -> float:
        p = x * x
        mask = p > 0.0
        return float(-np.sum(p[mask] * np.log(p[mask])))

    def grad(x: np.ndarray) -> np.ndarray:
        p = np.maximum(x * x, 1e-300)
        return -2.0 * x * (np.log(p) + 1.0)

    return f, grad


_ZERO_RADIUS = 1e-9


def _support_retract(x: np.ndarray) -> np.ndarray:
    """Re-project while keeping exact zeros exact: the mean is removed over
    the support only, so killed coordinates stay on the hyperplane face."""
    active = x != 0.0
    x = x.copy()
    x[active] -= x[active].mean()
    return x / np.linalg.norm(x)


def _zero_polish(x: np.ndarray, f, sign: float, fx: float) -> tuple[np.ndarray, float]:
    """Try flushing the m smallest coordinates to exact zeros, m = 1..d-2.

    The extremizers with zero coordinates sit at gradient cusps that plain
    descent cannot finish off; hard thresholding closes the gap exactly.
    """
    order = np.argsort(np.abs(x))
    best_x, best_f = x, fx
    for m in range(1, x.size - 1):
        y = x.copy()
        y[order[:m]] = 0.0
        if np.count_nonzero(y) < 2:
            break
        y = _support_retract(y)
        fy = f(y)
        if sign * (fy - best_f) > 0.0:
            best_x, best_f = y, fy
    return best_x, best_f


def _descend(f, grad, x: np.ndarray, fx: float, sign: float, cfg: OracleConfig, kill_zeros: bool):
    eta = 0.1
    for _ in range(cfg.max_iters):
        g = grad(x)
        if kill_zeros:
            g = np.where(x == 0.0, 0.0, g)
        active = x != 0.0
        g[active] -= g[active].mean()
        g -= (g @ x) * x
        gn = float(np.linalg.norm(g))
        if gn == 0.0:
            break
        moved = False
        while eta * gn > 1e-18:
            xn = x + sign * eta * g
            if kill_zeros:
                xn[np.abs(xn) < _ZERO_RADIUS] = 0.0
                if np.count_nonzero(xn) < 2:
                    eta *= 0.5
                    continue
            xn = _support_retract(xn)
            fn = f(xn)
            if sign * (fn - fx) > 0.0:
                step = float(np.linalg.norm(xn - x))
                x, fx = xn, fn
                moved = True
                break
            eta *= 0.5
        if not moved:
            break
        eta = min(eta * 1.5, 1.0)
        if step < cfg.step_tol:
            break
    return x, fx


def _local_search(f, grad, x: np.ndarray, sign: float, cfg: OracleConfig, kill_zeros: bool = False) -> tuple[np.ndarray, float]:
    fx = f(x)
    for _ in range(4):
        x, fx = _descend(f, grad, x, fx, sign, cfg, kill_zeros)
        px, pf = _zero_polish(x, f, sign, fx)
        if not sign * (pf - fx) > 0.0:
            break
        x, fx = px, pf
    return x, fx


def _multistart(f, grad, d: int, sign: float, cfg: OracleConfig, kill_zeros: bool = False) -> float:
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best = math.nan
    for child in children:
        rng = np.random.default_rng(child)
        x0 = _project_start(rng.standard_normal(d))
        _, fx = _local_search(f, grad, x0, sign, cfg, kill_zeros)
        if math.isnan(best) or sign * fx > sign * best:
            best = fx
    return best


def oracle_general(
    d: int, alpha: float, mode: OptimizationMode, cfg: OracleConfig | None = None
) -> float:
    """Multi-start projected gradient extremum of sum |x_j|^(2 alpha).

    Deterministic for a fixed config: restart streams are spawned from the
    seed and the reduction is an associative max/min.
    """
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")
    if alpha <= 0 or alpha == 1:
        raise ValueError("require alpha > 0, alpha != 1")
    cfg = cfg or OracleConfig()
    sign = 1.0 if mode is OptimizationMode.MAXIMIZE else -1.0
    f, grad = _power_objective(alpha)
    return _multistart(f, grad, d, sign, cfg, kill_zeros=alpha <= 0.5)


def oracle_shannon(d: int, cfg: OracleConfig | None = None) -> float:
    """Multi-start minimum of the Shannon entropy of squared coordinates."""
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")
    cfg = cfg or OracleConfig()
    f, grad = _shannon_objective()
    return _multistart(f, grad, d, -1.0, cfg)
