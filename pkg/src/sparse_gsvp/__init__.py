"""Sparse approximate generalized singular vectors via proximal gradient
descent, with elbow-based feature selection and non-parallel proximal
hyperplane classification."""

from .classify import (
    GsvpSvmModel,
    Hyperplane,
    fit,
    load_model,
    predict,
    predict_batch,
    save_model,
)
from .data import (
    DatasetSplit,
    LabeledDataset,
    SplitSpec,
    load_csv,
    row_normalize,
    standardize,
    stratified_split,
)
from .errors import (
    CurveTooShortError,
    DegenerateCurveError,
    DegenerateDenominatorError,
    DivergenceError,
    EmptyModelError,
    ExhaustedGridError,
    InputError,
    ShapeError,
    UndefinedMetricError,
)
from .linalg import augment_with_ones, matvec, matvec_transposed
from .metrics import (
    ClassificationReport,
    ConfusionCounts,
    avg_jaccard,
    confusion,
    jaccard,
    report,
)
from .selection import (
    ElbowPoint,
    MaskedHyperplanePair,
    SelectionResult,
    apply_mask,
    find_elbow,
    select_features,
    sort_by_magnitude,
)
from .solver import (
    PenaltyKind,
    PgdConfig,
    SolveTrace,
    gd_step,
    gradient,
    prox_l1,
    prox_lq,
    rayleigh_quotient,
    reweight_diagonal,
    solve,
)
from .tuning import GridSpec, TrialRecord, grid_search, log_spaced

__version__ = "0.1.0"

__all__ = [
    "GsvpSvmModel", "Hyperplane", "fit", "load_model", "predict",
    "predict_batch", "save_model",
    "DatasetSplit", "LabeledDataset", "SplitSpec", "load_csv",
    "row_normalize", "standardize", "stratified_split",
    "CurveTooShortError", "DegenerateCurveError", "DegenerateDenominatorError",
    "DivergenceError", "EmptyModelError", "ExhaustedGridError", "InputError",
    "ShapeError", "UndefinedMetricError",
    "augment_with_ones", "matvec", "matvec_transposed",
    "ClassificationReport", "ConfusionCounts", "avg_jaccard", "confusion",
    "jaccard", "report",
    "ElbowPoint", "MaskedHyperplanePair", "SelectionResult", "apply_mask",
    "find_elbow", "select_features", "sort_by_magnitude",
    "PenaltyKind", "PgdConfig", "SolveTrace", "gd_step", "gradient",
    "prox_l1", "prox_lq", "rayleigh_quotient", "reweight_diagonal", "solve",
    "GridSpec", "TrialRecord", "grid_search", "log_spaced",
    "__version__",
]
