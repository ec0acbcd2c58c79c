"""CSV ingestion, seeded stratified splitting, and feature standardization.

The split contract is on per-class COUNTS, not on row membership: training
takes floor(train_fraction * n) per class, validation takes the floor of
its fraction of the remainder, and the test set takes what is left.  The
shuffle uses numpy's PCG64 generator with a configured seed, so splits are
reproducible across runs and platforms.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


@dataclass
class LabeledDataset:
    """Samples-by-features matrix with binary labels and feature names."""

    X: np.ndarray
    y: np.ndarray
    feature_names: list

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=int)
        if self.X.ndim != 2:
            raise InputError("X must be 2-D")
        if self.y.shape != (self.X.shape[0],):
            raise InputError("label count must match sample count")
        if len(self.feature_names) != self.X.shape[1]:
            raise InputError("feature name count must match column count")
        if set(np.unique(self.y)) - {0, 1}:
            raise InputError("labels must be binary 0/1")

    @property
    def n_samples(self):
        return self.X.shape[0]

    @property
    def n_features(self):
        return self.X.shape[1]

    def class_matrices(self):
        """(Class-0 rows, Class-1 rows)."""
        return self.X[self.y == 0], self.X[self.y == 1]

    def subset(self, indices):
        idx = np.asarray(indices, dtype=int)
        return LabeledDataset(
            X=self.X[idx], y=self.y[idx], feature_names=list(self.feature_names)
        )


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.70
    holdout_val_fraction: float = 0.60
    seed: int = 42
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise InputError("train_fraction must be in (0, 1)")
        if not 0.0 < self.holdout_val_fraction < 1.0:
            raise InputError("holdout_val_fraction must be in (0, 1)")


@dataclass
class DatasetSplit:
    train: LabeledDataset
    validation: LabeledDataset
    test: LabeledDataset
    train_indices: np.ndarray = field(default=None)
    validation_indices: np.ndarray = field(default=None)
    test_indices: np.ndarray = field(default=None)


def _sniff_delimiter(header_line):
    return ";" if header_line.count(";") > header_line.count(",") else ","


def load_csv(path, label_column, positive_label):
    """Read a UTF-8 CSV with a header row into a LabeledDataset.

    The label column is selected by name; `positive_label` maps to class 1,
    the single other label value to class 0.  Comma and semicolon delimiters
    are auto-detected.  Any non-numeric feature cell is rejected with its
    row and column named.
    """
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    with fh:
        first = fh.readline()
        if not first:
            raise InputError(f"{path} is empty")
        delim = _sniff_delimiter(first)
        fh.seek(0)
        reader = csv.reader(fh, delimiter=delim)
        header = next(reader)
        header = [h.strip() for h in header]
        if label_column not in header:
            raise InputError(f"label column {label_column!r} not in header {header}")
        label_idx = header.index(label_column)
        feature_names = [h for i, h in enumerate(header) if i != label_idx]

        rows = []
        labels = []
        for row_num, cells in enumerate(reader, start=2):
            if not cells or (len(cells) == 1 and not cells[0].strip()):
                continue
            if len(cells) != len(header):
                raise InputError(
                    f"row {row_num}: expected {len(header)} cells, got {len(cells)}"
                )
            labels.append(cells[label_idx].strip())
            feats = [c for i, c in enumerate(cells) if i != label_idx]
            try:
                rows.append([float(c) for c in feats])
            except ValueError:
                for col_name, cell in zip(feature_names, feats):
                    try:
                        float(cell)
                    except ValueError:
                        raise InputError(
                            f"row {row_num}, column {col_name!r}: "
                            f"non-numeric value {cell.strip()!r}"
                        ) from None
                raise

    if not rows:
        raise InputError(f"{path} has no data rows")
    distinct = sorted(set(labels))
    if len(distinct) != 2:
        raise InputError(
            f"label column must have exactly 2 distinct values, got {distinct}"
        )
    if str(positive_label) not in distinct:
        raise InputError(
            f"positive label {positive_label!r} not among label values {distinct}"
        )
    y = np.array([1 if v == str(positive_label) else 0 for v in labels], dtype=int)
    X = np.array(rows, dtype=np.float64)
    if not np.all(np.isfinite(X)):
        bad = np.argwhere(~np.isfinite(X))[0]
        raise InputError(
            f"row {bad[0] + 2}, column {feature_names[bad[1]]!r}: non-finite value"
        )
    return LabeledDataset(X=X, y=y, feature_names=feature_names)


def _split_counts(n, spec):
    """Per-class partition sizes: (train, validation, test)."""
    n_train = math.floor(spec.train_fraction * n)
    rem = n - n_train
    n_val = math.floor(spec.holdout_val_fraction * rem)
    n_test = rem - n_val
    if min(n_train, n_val, n_test) < 1:
        raise InputError(
            f"class with {n} samples yields an empty partition "
            f"({n_train}/{n_val}/{n_test})"
        )
    return n_train, n_val, n_test


def stratified_split(ds, spec):
    """Seeded per-class shuffle and three-way partition.

    Deterministic for a fixed (dataset, spec); the same PCG64 stream
    shuffles class 0 first, then class 1.
    """
    rng = np.random.default_rng(spec.seed)
    train_idx, val_idx, test_idx = [], [], []
    for label in (0, 1):
        cls = np.flatnonzero(ds.y == label)
        if cls.size == 0:
            raise InputError(f"class {label} is empty")
        order = rng.permutation(cls.size)
        shuffled = cls[order]
        n_train, n_val, _ = _split_counts(cls.size, spec)
        train_idx.extend(shuffled[:n_train])
        val_idx.extend(shuffled[n_train : n_train + n_val])
        test_idx.extend(shuffled[n_train + n_val :])

    train_idx = np.sort(np.array(train_idx, dtype=int))
    val_idx = np.sort(np.array(val_idx, dtype=int))
    test_idx = np.sort(np.array(test_idx, dtype=int))
    return DatasetSplit(
        train=ds.subset(train_idx),
        validation=ds.subset(val_idx),
        test=ds.subset(test_idx),
        train_indices=train_idx,
        validation_indices=val_idx,
        test_indices=test_idx,
    )


def standardize(train, others=()):
    """Center and scale every dataset by the TRAIN per-feature mean/stdev.

    Zero-variance features are centered but left unscaled (scale 1).
    Returns (standardized train, list of standardized others, means, stdevs).
    """
    means = train.X.mean(axis=0)
    stds = train.X.std(axis=0)
    scales = np.where(stds > 0.0, stds, 1.0)

    def transform(ds):
        return LabeledDataset(
            X=(ds.X - means) / scales, y=ds.y.copy(),
            feature_names=list(ds.feature_names),
        )

    return transform(train), [transform(d) for d in others], means, scales


def row_normalize(ds):
    """Scale every sample to unit Euclidean norm.

    A useful conditioning step after standardization on wide data: it puts
    all samples on the unit sphere so the ratio objective is driven by
    direction rather than per-sample magnitude.  Zero rows are left as-is.
    """
    norms = np.linalg.norm(ds.X, axis=1, keepdims=True)
    norms = np.where(norms > 0.0, norms, 1.0)
    return LabeledDataset(
        X=ds.X / norms, y=ds.y.copy(), feature_names=list(ds.feature_names)
    )
