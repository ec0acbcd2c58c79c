"""Non-parallel proximal hyperplane classifier.

Fits one hyperplane per class by solving the sparse ratio problem twice
(each class block in the numerator once), selects features from the
induced sparsity, and classifies a sample by the smaller normalized
distance to the two planes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptyModelError, ShapeError
from .linalg import as_matrix, augment_with_ones
from .selection import (
    ElbowPoint,
    SelectionResult,
    apply_mask,
    select_features,
)
from .solver import PenaltyKind, PgdConfig, SolveTrace, solve

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Hyperplane:
    """A plane x.T w + b = 0; w is the normal, b the bias."""

    w: np.ndarray
    b: float

    def distance(self, x):
        """Normalized distance |x.T w + b| / ||w||_2 of a sample to the plane."""
        norm = float(np.linalg.norm(self.w))
        if norm == 0.0:
            raise EmptyModelError("hyperplane normal is identically zero")
        return abs(float(x @ self.w) + self.b) / norm


@dataclass
class GsvpSvmModel:
    """Fitted pair of non-parallel planes plus the selection that masked them.

    plane0 is the plane fitted to lie close to Class-0 samples (its class
    block was the numerator), plane1 the Class-1 analogue.  discriminative
    is False when the two solve directions saw indistinguishable classes
    (both ratio objectives pinned at 1).
    """

    plane0: Hyperplane
    plane1: Hyperplane
    selection: SelectionResult
    config: PgdConfig
    penalty: PenaltyKind
    trace0: SolveTrace = None
    trace1: SolveTrace = None
    discriminative: bool = True

    @property
    def n_features(self):
        return self.plane0.w.shape[0]


def fit(C1, C2, cfg, kind, select=True, on_degenerate="keep-all"):
    """Fit the two-plane model from the class matrices.

    C1 holds the Class-0 training rows, C2 the Class-1 rows (same column
    count).  Each class block is augmented with a ones column, the ratio
    problem is solved in both directions (delta1 for the Class-0 plane,
    delta2 for the Class-1 plane), the bias is split off, and feature
    selection masks the normals.  select=False keeps all features.
    """
    C1 = as_matrix(C1)
    C2 = as_matrix(C2)
    if C1.shape[1] != C2.shape[1]:
        raise ShapeError(
            f"class matrices disagree on feature count: {C1.shape[1]} vs {C2.shape[1]}"
        )
    if C1.shape[1] < 2:
        raise ShapeError("need at least 2 features")

    C1t = augment_with_ones(C1)
    C2t = augment_with_ones(C2)

    w1_full, trace0 = solve(C1t, C2t, cfg, kind, cfg.delta1)
    w2_full, trace1 = solve(C2t, C1t, cfg, kind, cfg.delta2)

    w1, b1 = w1_full[:-1], float(w1_full[-1])
    w2, b2 = w2_full[:-1], float(w2_full[-1])

    if select:
        sel = select_features(w1, w2, on_degenerate=on_degenerate)
    else:
        all_idx = list(range(w1.shape[0]))
        mags1 = np.abs(w1)[np.argsort(-np.abs(w1), kind="stable")]
        mags2 = np.abs(w2)[np.argsort(-np.abs(w2), kind="stable")]
        sel = SelectionResult(
            sorted_magnitudes_1=mags1,
            sorted_magnitudes_2=mags2,
            rank_indices_1=np.argsort(-np.abs(w1), kind="stable"),
            rank_indices_2=np.argsort(-np.abs(w2), kind="stable"),
            elbow_1=ElbowPoint(x=len(all_idx), y=float(mags1[-1])),
            elbow_2=ElbowPoint(x=len(all_idx), y=float(mags2[-1])),
            selected_1=all_idx,
            selected_2=list(all_idx),
            selected_union=list(all_idx),
            exclusive_1=[],
            exclusive_2=[],
            common=list(all_idx),
        )
    masked = apply_mask(w1, w2, b1, b2, sel)

    if np.all(masked.w1 == 0.0) or np.all(masked.w2 == 0.0):
        raise EmptyModelError("a masked hyperplane normal is identically zero")

    # Both directions pinned at ratio 1 means the class blocks are
    # indistinguishable to the objective (e.g. C1 == C2).
    r0 = trace0.objective_history
    r1 = trace1.objective_history
    scale0 = max(1.0, abs(r0[0]))
    scale1 = max(1.0, abs(r1[0]))
    discriminative = not (
        abs(r0[-1] - r0[0]) < 1e-8 * scale0
        and abs(r1[-1] - r1[0]) < 1e-8 * scale1
        and trace0.iterations_run <= 2
        and trace1.iterations_run <= 2
    )

    return GsvpSvmModel(
        plane0=Hyperplane(w=masked.w1, b=masked.b1),
        plane1=Hyperplane(w=masked.w2, b=masked.b2),
        selection=sel,
        config=cfg,
        penalty=kind,
        trace0=trace0,
        trace1=trace1,
        discriminative=discriminative,
    )


def predict(model, x):
    """Label a sample: 0 iff its normalized distance to plane0 is <= the
    distance to plane1 (ties go to class 0)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.n_features,):
        raise ShapeError(
            f"sample has shape {x.shape}, model expects ({model.n_features},)"
        )
    return 0 if model.plane0.distance(x) <= model.plane1.distance(x) else 1


def predict_batch(model, X):
    """Rowwise predict, order preserved."""
    X = as_matrix(X)
    if X.shape[1] != model.n_features:
        raise ShapeError(
            f"samples have {X.shape[1]} columns, model expects {model.n_features}"
        )
    n0 = float(np.linalg.norm(model.plane0.w))
    n1 = float(np.linalg.norm(model.plane1.w))
    if n0 == 0.0 or n1 == 0.0:
        raise EmptyModelError("hyperplane normal is identically zero")
    d0 = np.abs(X @ model.plane0.w + model.plane0.b) / n0
    d1 = np.abs(X @ model.plane1.w + model.plane1.b) / n1
    return np.where(d0 <= d1, 0, 1)


def _format_floats(values):
    return " ".join(repr(float(v)) for v in values)


def _format_ints(values):
    return " ".join(str(int(v)) for v in values)


def save_model(model, path):
    """Write the model in a flat, versioned, self-describing text format.

    One `key: value` line per field; float arrays are space-separated reprs
    so a reload is bit-exact.
    """
    cfg = model.config
    lines = [
        f"format_version: {MODEL_FORMAT_VERSION}",
        f"n_features: {model.n_features}",
        f"penalty: {model.penalty.value}",
        f"q: {cfg.q!r}",
        f"epsilon: {cfg.epsilon!r}",
        f"alpha: {cfg.alpha!r}",
        f"delta1: {cfg.delta1!r}",
        f"delta2: {cfg.delta2!r}",
        f"maxiter: {cfg.maxiter}",
        f"tol: {cfg.tol!r}",
        f"init: {cfg.init}",
        f"seed: {cfg.seed}",
        f"discriminative: {int(model.discriminative)}",
        f"plane0_bias: {model.plane0.b!r}",
        f"plane1_bias: {model.plane1.b!r}",
        f"plane0_weights: {_format_floats(model.plane0.w)}",
        f"plane1_weights: {_format_floats(model.plane1.w)}",
        f"elbow_1: {model.selection.elbow_1.x} {model.selection.elbow_1.y!r}",
        f"elbow_2: {model.selection.elbow_2.x} {model.selection.elbow_2.y!r}",
        f"selected_1: {_format_ints(model.selection.selected_1)}",
        f"selected_2: {_format_ints(model.selection.selected_2)}",
    ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path):
    """Reload a model written by save_model."""
    fields = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            key, _, value = line.partition(":")
            fields[key.strip()] = value.strip()
    version = int(fields["format_version"])
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {version}")

    cfg = PgdConfig(
        q=float(fields["q"]),
        epsilon=float(fields["epsilon"]),
        alpha=float(fields["alpha"]),
        delta1=float(fields["delta1"]),
        delta2=float(fields["delta2"]),
        maxiter=int(fields["maxiter"]),
        tol=float(fields["tol"]),
        init=fields["init"],
        seed=int(fields["seed"]),
    )
    w1 = np.array([float(v) for v in fields["plane0_weights"].split()])
    w2 = np.array([float(v) for v in fields["plane1_weights"].split()])
    sel1 = [int(v) for v in fields["selected_1"].split()] if fields["selected_1"] else []
    sel2 = [int(v) for v in fields["selected_2"].split()] if fields["selected_2"] else []
    ex1, ey1 = fields["elbow_1"].split()
    ex2, ey2 = fields["elbow_2"].split()

    union = []
    seen = set()
    for i in sel1 + sel2:
        if i not in seen:
            seen.add(i)
            union.append(i)
    s1, s2 = set(sel1), set(sel2)
    mags1 = np.abs(w1)[np.argsort(-np.abs(w1), kind="stable")]
    mags2 = np.abs(w2)[np.argsort(-np.abs(w2), kind="stable")]
    sel = SelectionResult(
        sorted_magnitudes_1=mags1,
        sorted_magnitudes_2=mags2,
        rank_indices_1=np.argsort(-np.abs(w1), kind="stable"),
        rank_indices_2=np.argsort(-np.abs(w2), kind="stable"),
        elbow_1=ElbowPoint(x=int(ex1), y=float(ey1)),
        elbow_2=ElbowPoint(x=int(ex2), y=float(ey2)),
        selected_1=sel1,
        selected_2=sel2,
        selected_union=union,
        exclusive_1=[i for i in union if i in s1 and i not in s2],
        exclusive_2=[i for i in union if i in s2 and i not in s1],
        common=[i for i in union if i in s1 and i in s2],
    )
    return GsvpSvmModel(
        plane0=Hyperplane(w=w1, b=float(fields["plane0_bias"])),
        plane1=Hyperplane(w=w2, b=float(fields["plane1_bias"])),
        selection=sel,
        config=cfg,
        penalty=PenaltyKind(fields["penalty"]),
        discriminative=bool(int(fields.get("discriminative", "1"))),
    )
