"""Verification library for the tight 2-alpha norm bound on the zero-sum
hyperplane: closed-form constants, a structured critical-point sweep, an
independent brute-force oracle, and the d = 3 analytic apparatus."""

__version__ = "0.1.0"

from .theory import (
    Branch,
    Instance,
    OptimizationMode,
    TheoryValue,
    branch_spread,
    branch_two_point,
    check_inequality,
    critical_dimension,
    d_star_shannon,
    extremal_vector,
    m_theory,
    mode_for,
    renyi_min,
    shannon_min,
)
from .sweep import (
    CriticalCandidate,
    MatchedBranch,
    Split,
    SweepConfig,
    VerificationRecord,
    enumerate_splits,
    m_numeric,
    optimize_split,
    verify_range,
)
from .oracle import OracleConfig, oracle_d3, oracle_general, oracle_shannon
from .trig3 import (
    FourierConfig,
    derivative_ratio_scan,
    fourier_c0,
    g_alpha,
    m_phi,
    m_phi_fourier,
    theorem_chain_check,
    trig_vector,
)

__all__ = [name for name in dir() if not name.startswith("_")]
