"""Proximal gradient descent for the sparse ratio-of-norms problem.

Minimizes  h(z) = ||A_num z||^2 / ||A_den z||^2 + delta * penalty(z)
over z in R^m, where the penalty is either the l1 norm (soft-thresholding
prox) or a weighted-l2 surrogate of the lq quasi-norm for 0 < q < 1
(diagonal reweighting prox).  The minimizers approximate right generalized
singular vectors of the pair (A_num, A_den) for the smallest generalized
singular values.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDenominatorError, DivergenceError, ShapeError
from .linalg import matvec, matvec_transposed

# Below this, ||A_den z||^2 is treated as numerically zero.
DENOMINATOR_FLOOR = 1e-30

DEFAULT_EPSILON = 10.0 ** -2.5


class PenaltyKind(enum.Enum):
    L1 = "l1"
    LQ = "lq"


@dataclass(frozen=True)
class PgdConfig:
    """All solver knobs.

    q and epsilon only matter for the LQ penalty; init is either
    "ones-unit-norm" (deterministic all-ones start, unit l2 norm) or
    "seeded-gaussian" (unit-norm Gaussian draw from `seed`).
    """

    q: float = 1.0
    epsilon: float = DEFAULT_EPSILON
    alpha: float = 1e-3
    delta1: float = 1e-2
    delta2: float = 1e-2
    maxiter: int = 10_000
    tol: float = 1e-4
    init: str = "ones-unit-norm"
    seed: int = 42

    def __post_init__(self):
        if not 0.0 < self.q <= 1.0:
            raise ValueError(f"q must be in (0, 1], got {self.q}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.delta1 <= 0 or self.delta2 <= 0:
            raise ValueError("delta1 and delta2 must be > 0")
        if self.maxiter < 1:
            raise ValueError(f"maxiter must be >= 1, got {self.maxiter}")
        if self.tol < 0:
            raise ValueError(f"tol must be >= 0, got {self.tol}")
        if self.init not in ("ones-unit-norm", "seeded-gaussian"):
            raise ValueError(f"unknown init mode {self.init!r}")


@dataclass
class SolveTrace:
    """Per-iteration diagnostics of one solve."""

    objective_history: list = field(default_factory=list)
    relative_change_history: list = field(default_factory=list)
    iterations_run: int = 0
    converged: bool = False


def initial_iterate(m, cfg):
    """Starting vector z^(0) of length m per the configured init mode."""
    if cfg.init == "ones-unit-norm":
        return np.full(m, 1.0 / math.sqrt(m))
    rng = np.random.default_rng(cfg.seed)
    z = rng.standard_normal(m)
    return z / np.linalg.norm(z)


def rayleigh_quotient(A_num, A_den, z, _iteration=0):
    """Ratio ||A_num z||^2 / ||A_den z||^2."""
    if A_num.shape[1] != z.shape[0] or A_den.shape[1] != z.shape[0]:
        raise ShapeError(
            f"rayleigh_quotient: A_num {A_num.shape}, A_den {A_den.shape}, "
            f"z length {z.shape[0]} are inconsistent"
        )
    num = matvec(A_num, z)
    den = matvec(A_den, z)
    den_sq = float(den @ den)
    if den_sq < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(_iteration, den_sq)
    return float(num @ num) / den_sq


def gradient(A_num, A_den, z, r_value, _iteration=0):
    """Gradient of the ratio objective at z, given r_value = r(z).

    Computed as (2 / ||A_den z||^2) * (A_num.T (A_num z) - r(z) A_den.T (A_den z)),
    i.e. with two matvec pairs and no Gram matrices.
    """
    num = matvec(A_num, z)
    den = matvec(A_den, z)
    den_sq = float(den @ den)
    if den_sq < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(_iteration, den_sq)
    return (2.0 / den_sq) * (
        matvec_transposed(A_num, num) - r_value * matvec_transposed(A_den, den)
    )


def gd_step(z, grad, alpha):
    """Plain gradient-descent step y = z - alpha * grad."""
    if z.shape != grad.shape:
        raise ShapeError(f"gd_step: z {z.shape} vs grad {grad.shape}")
    return z - alpha * grad


def prox_l1(y, alpha, delta):
    """Soft-thresholding at alpha*delta/2: sign(y) * max(|y| - alpha*delta/2, 0)."""
    t = alpha * delta / 2.0
    return np.sign(y) * np.maximum(np.abs(y) - t, 0.0)


def reweight_diagonal(z, epsilon, q):
    """Diagonal of the reweighting matrix: (z_l^2 + eps^2)^((q-2)/2), all > 0.

    The diagonal matrix itself is never materialized; the prox consumes
    this vector elementwise.
    """
    return (z * z + epsilon * epsilon) ** ((q - 2.0) / 2.0)


def prox_lq(y, d, alpha, delta):
    """Diagonal shrinkage z_l = y_l / (1 + alpha*delta*d_l), elementwise."""
    if y.shape != d.shape:
        raise ShapeError(f"prox_lq: y {y.shape} vs d {d.shape}")
    return y / (1.0 + alpha * delta * d)


def penalty_value(z, kind, cfg):
    """Penalty term of the objective: ||z||_1 for L1, z.T D(z) z for LQ."""
    if kind is PenaltyKind.L1:
        return float(np.sum(np.abs(z)))
    d = reweight_diagonal(z, cfg.epsilon, cfg.q)
    return float(np.sum(d * z * z))


def objective(A_num, A_den, z, kind, cfg, delta, _iteration=0):
    """Full objective h(z) = r(z) + delta * penalty(z)."""
    r = rayleigh_quotient(A_num, A_den, z, _iteration)
    return r + delta * penalty_value(z, kind, cfg)


def solve(A_num, A_den, cfg, kind, delta, z0=None):
    """Run the proximal gradient iteration and return (iterate, trace).

    Each iteration: (LQ only: reweight at the current z) -> ratio value ->
    gradient -> gradient step -> prox.  Stops when the relative change of
    h(z) = r(z) + delta*penalty(z) drops below cfg.tol, or at cfg.maxiter.
    """
    if A_num.shape[1] != A_den.shape[1]:
        raise ShapeError(
            f"solve: column counts differ ({A_num.shape[1]} vs {A_den.shape[1]})"
        )
    if kind is PenaltyKind.LQ and not cfg.q < 1.0:
        raise ValueError("LQ penalty requires q < 1 in the config")
    m = A_num.shape[1]
    z = initial_iterate(m, cfg) if z0 is None else np.array(z0, dtype=np.float64)
    if z.shape != (m,):
        raise ShapeError(f"solve: z0 has shape {z.shape}, expected ({m},)")

    trace = SolveTrace()
    h_prev = objective(A_num, A_den, z, kind, cfg, delta, 0)
    trace.objective_history.append(h_prev)

    for k in range(cfg.maxiter):
        if kind is PenaltyKind.LQ:
            d = reweight_diagonal(z, cfg.epsilon, cfg.q)
        r = rayleigh_quotient(A_num, A_den, z, k)
        g = gradient(A_num, A_den, z, r, k)
        y = gd_step(z, g, cfg.alpha)
        if kind is PenaltyKind.L1:
            z = prox_l1(y, cfg.alpha, delta)
        else:
            z = prox_lq(y, d, cfg.alpha, delta)

        h = objective(A_num, A_den, z, kind, cfg, delta, k + 1)
        if not math.isfinite(h):
            raise DivergenceError(k + 1)
        trace.objective_history.append(h)
        trace.iterations_run = k + 1

        # Relative change of the scalar objective; a vanished objective is
        # treated as converged only if it stays vanished.
        if abs(h_prev) < DENOMINATOR_FLOOR:
            rel = 0.0 if abs(h) < DENOMINATOR_FLOOR else math.inf
        else:
            rel = abs(h - h_prev) / abs(h_prev)
        trace.relative_change_history.append(rel)
        h_prev = h
        if rel < cfg.tol:
            trace.converged = True
            break

    return z, trace
