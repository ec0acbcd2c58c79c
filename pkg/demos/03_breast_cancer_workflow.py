"""End-to-end classification workflow on the 569 x 30 breast-cancer table.

Loads the dataset (via scikit-learn's bundled copy), performs the seeded
stratified 70 / 18 / 12 split, standardizes and row-normalizes, fits the
two-plane classifier with the l1 penalty, and prints validation and test
reports plus the names of the selected features.

Requires scikit-learn.  Run:  python3 demos/03_breast_cancer_workflow.py
"""

import tempfile
from pathlib import Path

from sparse_gsvp import (
    PenaltyKind,
    PgdConfig,
    SplitSpec,
    confusion,
    fit,
    load_csv,
    predict_batch,
    report,
    row_normalize,
    standardize,
    stratified_split,
)
from sparse_gsvp.datasets import write_breast_cancer_csv
from sparse_gsvp.metrics import format_report_table

csv_path = Path(tempfile.mkdtemp()) / "breast.csv"
write_breast_cancer_csv(csv_path)
ds = load_csv(csv_path, "diagnosis", "M")
print(f"dataset: {ds.n_samples} samples x {ds.n_features} features")

split = stratified_split(ds, SplitSpec(0.70, 0.60, seed=42))
for name, part in (("train", split.train), ("validation", split.validation),
                   ("test", split.test)):
    n0 = int((part.y == 0).sum())
    n1 = int((part.y == 1).sum())
    print(f"  {name:10s} benign={n0:3d} malignant={n1:3d}")

train, (val, test), _, _ = standardize(split.train, [split.validation, split.test])
train, val, test = row_normalize(train), row_normalize(val), row_normalize(test)

cfg = PgdConfig(q=1.0, alpha=1e-3, delta1=20627 / 23750, delta2=20627 / 23750,
                maxiter=10_000, init="seeded-gaussian", seed=3)
C1, C2 = train.class_matrices()
model = fit(C1, C2, cfg, PenaltyKind.L1)

reps = [report(confusion(val.y, predict_batch(model, val.X))),
        report(confusion(test.y, predict_batch(model, test.X)))]
print()
print(format_report_table(reps, ["validation", "test"]))

names = [ds.feature_names[i] for i in model.selection.selected_union]
print(f"\nselected features ({len(names)}): " + ", ".join(names))
print(f"elbow ranks: {model.selection.elbow_1.x}, {model.selection.elbow_2.x}")
