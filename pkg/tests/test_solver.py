import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparse_gsvp import (
    DegenerateDenominatorError,
    DivergenceError,
    PenaltyKind,
    PgdConfig,
    ShapeError,
    gd_step,
    gradient,
    prox_l1,
    prox_lq,
    rayleigh_quotient,
    reweight_diagonal,
    solve,
)
from sparse_gsvp.solver import initial_iterate, objective, penalty_value


def brute_force_prox_l1(y, alpha, delta, grid):
    # argmin over the grid of |z-y|^2 + alpha*delta*|z|
    vals = (grid - y) ** 2 + alpha * delta * np.abs(grid)
    return grid[np.argmin(vals)]


def brute_force_prox_lq(y, d, alpha, delta, grid):
    # argmin over the grid of |z-y|^2 + alpha*delta*d*z^2
    vals = (grid - y) ** 2 + alpha * delta * d * grid * grid
    return grid[np.argmin(vals)]


def test_prox_l1_against_grid_oracle():
    rng = np.random.default_rng(7)
    grid = np.arange(-3.0, 3.0, 1e-4)
    for _ in range(200):
        y = rng.uniform(-2, 2)
        alpha = rng.uniform(1e-3, 1.0)
        delta = rng.uniform(1e-3, 1.0)
        got = prox_l1(np.array([y]), alpha, delta)[0]
        want = brute_force_prox_l1(y, alpha, delta, grid)
        assert abs(got - want) <= 1e-4


def test_prox_lq_against_grid_oracle():
    rng = np.random.default_rng(8)
    grid = np.arange(-3.0, 3.0, 1e-4)
    for _ in range(200):
        y = rng.uniform(-2, 2)
        alpha = rng.uniform(1e-3, 1.0)
        delta = rng.uniform(1e-3, 1.0)
        d = rng.uniform(1e-2, 10.0)
        got = prox_lq(np.array([y]), np.array([d]), alpha, delta)[0]
        want = brute_force_prox_lq(y, d, alpha, delta, grid)
        assert abs(got - want) <= 1e-4


def test_prox_l1_threshold_kills_small_entries():
    y = np.array([0.4, -0.4, 0.6, -0.6])
    out = prox_l1(y, 1.0, 1.0)  # threshold 0.5
    assert np.allclose(out, [0.0, 0.0, 0.1, -0.1])


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(1e-4, 1.0), st.floats(1e-4, 1.0))
def test_prox_l1_shrinks_toward_zero(y, alpha, delta):
    z = prox_l1(np.array([y]), alpha, delta)[0]
    assert abs(z) <= abs(y) + 1e-15
    assert z * y >= 0.0  # sign preserved or zero


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(1e-3, 1e3), st.floats(0.05, 0.95),
       st.floats(1e-3, 1.0))
def test_reweight_diagonal_positive(z, eps, q, _unused):
    d = reweight_diagonal(np.array([z]), eps, q)[0]
    assert d > 0.0
    assert math.isfinite(d)


def test_reweight_diagonal_value():
    # (z^2 + eps^2)^((q-2)/2) spot check
    z, eps, q = 2.0, 0.5, 0.5
    d = reweight_diagonal(np.array([z]), eps, q)[0]
    assert np.isclose(d, (4.0 + 0.25) ** (-0.75))


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(11)
    step = 1e-6
    for _ in range(50):
        A = rng.standard_normal((6, 4))
        B = rng.standard_normal((5, 4))
        z = rng.standard_normal(4)
        if np.linalg.norm(B @ z) < 1e-3:
            continue
        r = rayleigh_quotient(A, B, z)
        g = gradient(A, B, z, r)
        for i in range(4):
            zp = z.copy(); zp[i] += step
            zm = z.copy(); zm[i] -= step
            fd = (rayleigh_quotient(A, B, zp) - rayleigh_quotient(A, B, zm)) / (2 * step)
            denom = max(abs(fd), abs(g[i]), 1e-8)
            assert abs(g[i] - fd) / denom <= 1e-5


def test_rayleigh_quotient_scale_invariant():
    rng = np.random.default_rng(12)
    A = rng.standard_normal((6, 4))
    B = rng.standard_normal((5, 4))
    z = rng.standard_normal(4)
    r1 = rayleigh_quotient(A, B, z)
    r2 = rayleigh_quotient(A, B, 7.3 * z)
    assert np.isclose(r1, r2, rtol=1e-12)


def test_rayleigh_quotient_degenerate_denominator():
    A = np.array([[1.0, 0.0]])
    B = np.array([[1.0, 0.0]])
    with pytest.raises(DegenerateDenominatorError) as exc:
        rayleigh_quotient(A, B, np.array([0.0, 1.0]), _iteration=5)
    assert exc.value.iteration == 5


def test_gd_step_is_plain_descent():
    z = np.array([1.0, 2.0])
    g = np.array([0.5, -0.5])
    assert np.allclose(gd_step(z, g, 0.1), [0.95, 2.05])
    with pytest.raises(ShapeError):
        gd_step(z, np.zeros(3), 0.1)


def test_two_by_two_closed_form():
    # numerator only sees coordinate 0, denominator only coordinate 1:
    # the minimizer concentrates on coordinate 1 and the ratio goes to ~0.
    A = np.array([[1.0, 0.0]])
    B = np.array([[0.0, 1.0]])
    cfg = PgdConfig(alpha=1e-2, delta1=1e-8, delta2=1e-8, maxiter=50_000, tol=0.0)
    z, trace = solve(A, B, cfg, PenaltyKind.L1, 1e-8,
                     z0=np.array([1.0, 1.0]) / np.sqrt(2))
    r = rayleigh_quotient(A, B, z)
    assert r < 1e-6
    assert abs(z[0]) < 1e-4


def test_solve_objective_decreases_statistically():
    # monotone descent is not guaranteed for a ratio objective, but on
    # average the trajectory must go down
    rng = np.random.default_rng(21)
    improved = 0
    for trial in range(20):
        A = rng.standard_normal((8, 5))
        B = rng.standard_normal((7, 5))
        cfg = PgdConfig(alpha=1e-3, delta1=1e-3, delta2=1e-3, maxiter=2000,
                        tol=1e-10, init="seeded-gaussian", seed=trial)
        _, trace = solve(A, B, cfg, PenaltyKind.L1, cfg.delta1)
        if trace.objective_history[-1] < trace.objective_history[0]:
            improved += 1
    assert improved >= 16


def test_solve_trace_contract():
    rng = np.random.default_rng(22)
    A = rng.standard_normal((6, 4))
    B = rng.standard_normal((5, 4))
    cfg = PgdConfig(alpha=1e-3, maxiter=50, tol=0.0)
    _, trace = solve(A, B, cfg, PenaltyKind.L1, cfg.delta1)
    # tol=0 means the relative-change test never fires
    assert trace.iterations_run == 50
    assert not trace.converged
    assert len(trace.objective_history) == 51
    assert len(trace.relative_change_history) == 50


def test_solve_deterministic():
    rng = np.random.default_rng(23)
    A = rng.standard_normal((6, 4))
    B = rng.standard_normal((5, 4))
    cfg = PgdConfig(alpha=1e-3, maxiter=200, init="seeded-gaussian", seed=5)
    z1, t1 = solve(A, B, cfg, PenaltyKind.L1, cfg.delta1)
    z2, t2 = solve(A, B, cfg, PenaltyKind.L1, cfg.delta1)
    assert np.array_equal(z1, z2)
    assert t1.objective_history == t2.objective_history


def test_solve_oversized_step_fails_loudly():
    # a hopeless step size must surface as a solver error, not a silent
    # garbage iterate: here the prox wipes the iterate out and the
    # denominator collapses
    rng = np.random.default_rng(24)
    A = np.hstack([rng.standard_normal((20, 4)), np.ones((20, 1))])
    B = np.hstack([rng.standard_normal((20, 4)) + 8.0, np.ones((20, 1))])
    cfg = PgdConfig(alpha=1e9, delta1=1e-3, delta2=1e-3, maxiter=2000, tol=0.0)
    with pytest.raises((DivergenceError, DegenerateDenominatorError)):
        solve(A, B, cfg, PenaltyKind.L1, cfg.delta1)


def test_solve_lq_requires_q_below_one():
    A = np.eye(3)
    cfg = PgdConfig(q=1.0)
    with pytest.raises(ValueError):
        solve(A, A, cfg, PenaltyKind.LQ, cfg.delta1)


def test_solve_column_mismatch():
    with pytest.raises(ShapeError):
        solve(np.eye(3), np.eye(4), PgdConfig(), PenaltyKind.L1, 1e-2)


def test_initial_iterate_modes():
    cfg = PgdConfig(init="ones-unit-norm")
    z = initial_iterate(9, cfg)
    assert np.allclose(z, 1.0 / 3.0)
    cfg2 = PgdConfig(init="seeded-gaussian", seed=3)
    a = initial_iterate(20, cfg2)
    b = initial_iterate(20, cfg2)
    assert np.array_equal(a, b)
    assert np.isclose(np.linalg.norm(a), 1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        PgdConfig(q=0.0)
    with pytest.raises(ValueError):
        PgdConfig(q=1.5)
    with pytest.raises(ValueError):
        PgdConfig(alpha=0.0)
    with pytest.raises(ValueError):
        PgdConfig(delta1=-1.0)
    with pytest.raises(ValueError):
        PgdConfig(maxiter=0)
    with pytest.raises(ValueError):
        PgdConfig(tol=-1e-9)
    with pytest.raises(ValueError):
        PgdConfig(init="random")


def test_objective_combines_ratio_and_penalty():
    A = np.eye(2)
    B = 2.0 * np.eye(2)
    z = np.array([1.0, 1.0])
    cfg = PgdConfig()
    h = objective(A, B, z, PenaltyKind.L1, cfg, delta=0.5)
    assert np.isclose(h, 0.25 + 0.5 * 2.0)
    assert np.isclose(penalty_value(z, PenaltyKind.L1, cfg), 2.0)
