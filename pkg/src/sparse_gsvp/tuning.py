"""Grid search over (delta1, delta2, alpha) by validation balanced accuracy.

Every grid point is fitted on the training set and scored on the validation
set; solver failures are recorded and skipped.  Ties between equally
accurate points are broken by fewer selected features, then smaller alpha.
"""

from dataclasses import dataclass, field

import numpy as np

from . import classify
from .errors import ExhaustedGridError, InputError
from .metrics import confusion, report
from .solver import DEFAULT_EPSILON, PgdConfig

DEFAULT_ALPHA_EXPONENTS = (-0.5, -1.0, -1.5, -2.0, -2.5, -3.0, -3.5)


def log_spaced(lo, hi, n):
    """n logarithmically spaced grid values spanning [lo, hi]."""
    if lo <= 0 or hi <= lo or n < 1:
        raise InputError(f"bad log grid bounds ({lo}, {hi}, n={n})")
    return list(np.logspace(np.log10(lo), np.log10(hi), n))


@dataclass
class GridSpec:
    """Search grid; alpha values are alpha_base * 10^e over alpha_exponents
    unless an explicit alphas list is given."""

    delta1_grid: list = field(default_factory=lambda: log_spaced(1e-4, 1.0, 12))
    delta2_grid: list = field(default_factory=lambda: log_spaced(2e-4, 1.0, 12))
    alpha_base: float = 1.0
    alpha_exponents: tuple = DEFAULT_ALPHA_EXPONENTS
    alphas: list = None
    q: float = 1.0
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if not self.delta1_grid or not self.delta2_grid:
            raise InputError("delta grids must be nonempty")
        if any(v <= 0 for v in self.delta1_grid + self.delta2_grid):
            raise InputError("all delta grid values must be positive")
        if self.alphas is None and self.alpha_base <= 0:
            raise InputError("alpha_base must be positive")

    def alpha_values(self):
        if self.alphas is not None:
            if not self.alphas or any(a <= 0 for a in self.alphas):
                raise InputError("explicit alphas must be nonempty and positive")
            return list(self.alphas)
        return [self.alpha_base * 10.0 ** e for e in self.alpha_exponents]


@dataclass
class TrialRecord:
    delta1: float
    delta2: float
    alpha: float
    failed: bool = False
    error: str = ""
    report: object = None
    n_selected: int = 0
    elbow_1: int = 0
    elbow_2: int = 0
    iterations_0: int = 0
    iterations_1: int = 0
    converged_0: bool = False
    converged_1: bool = False

    @property
    def balanced_accuracy(self):
        return None if self.report is None else self.report.balanced_accuracy


def grid_search(train, validation, grid, kind, maxiter=10_000, tol=1e-4,
                init="ones-unit-norm", seed=42):
    """Exhaustive search; returns (best PgdConfig, all TrialRecords).

    Records are emitted in deterministic grid order (delta1 outer, delta2,
    alpha inner).  Raises ExhaustedGridError if every trial failed.
    """
    if train.n_features != validation.n_features:
        raise InputError("train and validation disagree on feature count")
    C1, C2 = train.class_matrices()

    records = []
    best = None  # (neg bal acc is maximized; tie: fewer features, smaller alpha)
    best_cfg = None
    for d1 in grid.delta1_grid:
        for d2 in grid.delta2_grid:
            for alpha in grid.alpha_values():
                cfg = PgdConfig(
                    q=grid.q, epsilon=grid.epsilon, alpha=alpha,
                    delta1=d1, delta2=d2, maxiter=maxiter, tol=tol,
                    init=init, seed=seed,
                )
                rec = TrialRecord(delta1=d1, delta2=d2, alpha=alpha)
                try:
                    model = classify.fit(C1, C2, cfg, kind)
                    pred = classify.predict_batch(model, validation.X)
                    rec.report = report(confusion(validation.y, pred))
                    rec.n_selected = len(model.selection.selected_union)
                    rec.elbow_1 = model.selection.elbow_1.x
                    rec.elbow_2 = model.selection.elbow_2.x
                    rec.iterations_0 = model.trace0.iterations_run
                    rec.iterations_1 = model.trace1.iterations_run
                    rec.converged_0 = model.trace0.converged
                    rec.converged_1 = model.trace1.converged
                except Exception as exc:  # noqa: BLE001 - trial isolation
                    rec.failed = True
                    rec.error = f"{type(exc).__name__}: {exc}"
                records.append(rec)
                if rec.failed:
                    continue
                key = (-rec.report.balanced_accuracy, rec.n_selected, alpha)
                if best is None or key < best:
                    best = key
                    best_cfg = cfg

    if best_cfg is None:
        raise ExhaustedGridError([r.error for r in records])
    return best_cfg, records


def write_trials_csv(records, path):
    """One CSV row per grid point, in grid order."""
    header = ("delta1,delta2,alpha,failed,error,balanced_accuracy,"
              "n_selected,elbow_1,elbow_2,iterations_0,iterations_1,"
              "converged_0,converged_1")
    lines = [header]
    for r in records:
        bal = "" if r.report is None else repr(r.report.balanced_accuracy)
        err = r.error.replace(",", ";").replace("\n", " ")
        lines.append(
            f"{r.delta1!r},{r.delta2!r},{r.alpha!r},{int(r.failed)},{err},"
            f"{bal},{r.n_selected},{r.elbow_1},{r.elbow_2},"
            f"{r.iterations_0},{r.iterations_1},"
            f"{int(r.converged_0)},{int(r.converged_1)}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
