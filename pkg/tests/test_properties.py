"""Property suites: randomized invariants of the sweep machinery and the
inequality itself.  The bulk checks are vectorized so that well over 10^5
individual cases run in seconds; the hypothesis tests exercise the same
invariants through an adversarial case generator.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tightnorm.sweep import (
    Split,
    candidate_vector,
    diagonalize,
    enumerate_splits,
    m_numeric,
    objective,
)
from tightnorm.theory import check_inequality, m_theory

# ---------------------------------------------------------------------------
# vectorized bulk checks (each returns the number of cases exercised)
# ---------------------------------------------------------------------------


def bulk_candidate_feasibility(n_cases: int = 100_000, seed: int = 0) -> int:
    """Random (split, t) draws: every circle candidate lies on the unit
    sphere of the zero-sum hyperplane."""
    rng = np.random.default_rng(seed)
    splits = [s for d in range(3, 61) for s in enumerate_splits(d) if s.k1 >= 1]
    idx = rng.integers(0, len(splits), n_cases)
    ts = rng.uniform(0.0, 2.0 * math.pi, n_cases)

    k0 = np.array([splits[i].k0 for i in idx], dtype=float)
    k1 = np.array([splits[i].k1 for i in idx], dtype=float)
    k2 = np.array([splits[i].k2 for i in idx], dtype=float)
    forms = {}
    for i in set(idx.tolist()):
        forms[i] = diagonalize(splits[i])
    lam1 = np.array([forms[i].lambda1 for i in idx])
    lam2 = np.array([forms[i].lambda2 for i in idx])
    u1 = np.array([forms[i].u1 for i in idx])
    u2 = np.array([forms[i].u2 for i in idx])
    v1 = np.array([forms[i].v1 for i in idx])
    v2 = np.array([forms[i].v2 for i in idx])

    c1 = np.cos(ts) / np.sqrt(lam1)
    c2 = np.sin(ts) / np.sqrt(lam2)
    s1 = u1 * c1 + u2 * c2
    s2 = v1 * c1 + v2 * c2
    s0 = -(k1 * s1 + k2 * s2) / k0
    total = k0 * s0 + k1 * s1 + k2 * s2
    sq = k0 * s0**2 + k1 * s1**2 + k2 * s2**2
    assert np.max(np.abs(total)) < 1e-9
    assert np.max(np.abs(sq - 1.0)) < 1e-9
    return n_cases


def bulk_eigen_identities(d_max: int = 200) -> int:
    """Trace and determinant identities of the diagonalization, all splits
    with k1 >= 1 for every dimension up to d_max."""
    cases = 0
    for d in range(3, d_max + 1):
        ks = np.array(
            [(s.k0, s.k1, s.k2) for s in enumerate_splits(d) if s.k1 >= 1], dtype=float
        )
        k0, k1, k2 = ks[:, 0], ks[:, 1], ks[:, 2]
        tr = k0 * (k1 + k2) + k1 * k1 + k2 * k2
        disc = tr * tr - 4.0 * k0 * k1 * k2 * d
        assert np.all(disc >= 0.0)
        sq = np.sqrt(disc)
        lam1 = (tr + sq) / (2.0 * k0)
        lam2 = (tr - sq) / (2.0 * k0)
        assert np.max(np.abs(lam1 + lam2 - tr / k0)) < 1e-7
        assert np.max(np.abs(lam1 * lam2 - k1 * k2 * d / k0) / (k1 * k2 * d / k0)) < 1e-9
        assert np.all(lam2 > 0.0)
        cases += len(ks)
    return cases


def bulk_symmetry(n_cases: int = 10_000, seed: int = 1) -> int:
    """The objective is invariant under coordinate permutation and sign flips."""
    rng = np.random.default_rng(seed)
    d = 8
    x = rng.standard_normal((n_cases, d))
    p = 2.0 * 1.7
    base = np.sum(np.abs(x) ** p, axis=1)
    perm = rng.permutation(d)
    signs = rng.choice([-1.0, 1.0], size=(n_cases, d))
    mangled = np.sum(np.abs(x[:, perm] * signs) ** p, axis=1)
    assert np.max(np.abs(base - mangled) / base) < 1e-12
    return n_cases


def bulk_embedding_monotonicity() -> int:
    """Appending a zero coordinate embeds L_d into L_{d+1}, so the numeric
    extremum is monotone in d: nondecreasing for alpha > 1, nonincreasing
    for alpha < 1."""
    cases = 0
    for a in (0.7, 1.5):
        vals = [m_numeric(d, a).m_numeric for d in range(3, 13)]
        diffs = np.diff(vals)
        if a > 1:
            assert np.all(diffs >= -1e-12)
        else:
            assert np.all(diffs <= 1e-12)
        cases += len(diffs)
    return cases


def bulk_check_inequality(n_per_cell: int = 1_000, seed: int = 2) -> int:
    """Random hyperplane vectors never beat the conjectured constant."""
    rng = np.random.default_rng(seed)
    cases = 0
    for a in (0.7, 1.5):
        for d in range(3, 11):
            x = rng.standard_normal((n_per_cell, d))
            x -= x.mean(axis=1, keepdims=True)
            norm2 = np.linalg.norm(x, axis=1)
            ratio = np.sum(np.abs(x) ** (2 * a), axis=1) ** (1 / (2 * a)) / norm2
            bound = m_theory(d, a).value ** (1 / (2 * a))
            if a > 1:
                assert np.all(ratio <= bound + 1e-12)
            else:
                assert np.all(ratio >= bound - 1e-12)
            cases += n_per_cell
    return cases


BULK_CHECKS = [
    bulk_candidate_feasibility,
    bulk_eigen_identities,
    bulk_symmetry,
    bulk_embedding_monotonicity,
    bulk_check_inequality,
]


def test_bulk_candidate_feasibility():
    assert bulk_candidate_feasibility() == 100_000


def test_bulk_eigen_identities():
    assert bulk_eigen_identities() > 10_000


def test_bulk_symmetry():
    assert bulk_symmetry() == 10_000


def test_bulk_embedding_monotonicity():
    assert bulk_embedding_monotonicity() > 0


def test_bulk_check_inequality():
    assert bulk_check_inequality() == 16_000


# ---------------------------------------------------------------------------
# hypothesis-driven spot checks of the same invariants
# ---------------------------------------------------------------------------

splits_strategy = st.integers(3, 30).flatmap(
    lambda d: st.sampled_from([s for s in enumerate_splits(d) if s.k1 >= 1])
)


@settings(max_examples=200, deadline=None)
@given(split=splits_strategy, t=st.floats(0.0, 2.0 * math.pi))
def test_candidate_feasibility_hypothesis(split: Split, t: float):
    c = candidate_vector(diagonalize(split), split, t)
    total = split.k0 * c.s0 + split.k1 * c.s1 + split.k2 * c.s2
    sq = split.k0 * c.s0**2 + split.k1 * c.s1**2 + split.k2 * c.s2**2
    assert abs(total) < 1e-10
    assert sq == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(
    split=splits_strategy,
    t=st.floats(0.0, 2.0 * math.pi),
    alpha=st.floats(0.1, 6.0).filter(lambda a: abs(a - 1.0) > 1e-3),
)
def test_objective_matches_dense_hypothesis(split: Split, t: float, alpha: float):
    c = candidate_vector(diagonalize(split), split, t)
    x = np.repeat([c.s0, c.s1, c.s2], [split.k0, split.k1, split.k2])
    assert objective(split, c, alpha) == pytest.approx(
        float(np.sum(np.abs(x) ** (2 * alpha))), rel=1e-11, abs=1e-13
    )


@settings(max_examples=200, deadline=None)
@given(
    d=st.integers(3, 10),
    alpha=st.sampled_from([0.7, 1.5]),
    data=st.data(),
)
def test_check_inequality_hypothesis(d: int, alpha: float, data):
    raw = data.draw(
        st.lists(st.floats(-10, 10), min_size=d, max_size=d).filter(
            lambda v: np.std(v) > 1e-6
        )
    )
    x = np.asarray(raw) - np.mean(raw)
    _, ok = check_inequality(x, alpha)
    assert ok
