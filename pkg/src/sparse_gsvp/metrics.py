"""Confusion-matrix bookkeeping, balanced accuracy, and Jaccard stability.

Class 1 is the positive class throughout.  Percentages are reported to two
decimals; precision with an empty predicted-positive set is undefined
(None), never zero.
"""

import itertools
from dataclasses import dataclass

from .errors import InputError, UndefinedMetricError


@dataclass(frozen=True)
class ConfusionCounts:
    tn: int
    fp: int
    fn: int
    tp: int

    def __post_init__(self):
        for name in ("tn", "fp", "fn", "tp"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise InputError(f"{name} must be a nonnegative integer, got {v!r}")


@dataclass(frozen=True)
class ClassificationReport:
    """Derived rates in [0, 1]; precision is None when tp+fp == 0."""

    counts: ConfusionCounts
    balanced_accuracy: float
    specificity: float
    recall: float
    precision: float


def confusion(y_true, y_pred):
    """Tally the 2x2 confusion counts from binary label sequences."""
    y_true = list(y_true)
    y_pred = list(y_pred)
    if len(y_true) != len(y_pred):
        raise InputError(
            f"label sequences differ in length: {len(y_true)} vs {len(y_pred)}"
        )
    if not y_true:
        raise InputError("empty label sequences")
    tn = fp = fn = tp = 0
    for i, (t, p) in enumerate(zip(y_true, y_pred)):
        if t not in (0, 1) or p not in (0, 1):
            raise InputError(f"non-binary label at position {i}: true={t!r}, pred={p!r}")
        if t == 0:
            if p == 0:
                tn += 1
            else:
                fp += 1
        else:
            if p == 1:
                tp += 1
            else:
                fn += 1
    return ConfusionCounts(tn=tn, fp=fp, fn=fn, tp=tp)


def report(counts):
    """Derive recall, specificity, precision, and balanced accuracy."""
    if counts.tp + counts.fn == 0:
        raise UndefinedMetricError("no positive samples; recall undefined")
    if counts.tn + counts.fp == 0:
        raise UndefinedMetricError("no negative samples; specificity undefined")
    recall = counts.tp / (counts.tp + counts.fn)
    specificity = counts.tn / (counts.tn + counts.fp)
    precision = (
        counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp > 0 else None
    )
    return ClassificationReport(
        counts=counts,
        balanced_accuracy=(recall + specificity) / 2.0,
        specificity=specificity,
        recall=recall,
        precision=precision,
    )


def as_percentages(rep, decimals=2):
    """Rates as percentages rounded to `decimals` (precision may be None)."""
    conv = lambda v: None if v is None else round(100.0 * v, decimals)
    return {
        "balanced_accuracy": conv(rep.balanced_accuracy),
        "specificity": conv(rep.specificity),
        "recall": conv(rep.recall),
        "precision": conv(rep.precision),
    }


def format_report_table(reps, labels=None):
    """Columnar text table: Bal. Acc., Specificity, Recall, Precision,
    TN, FP, FN, TP, percentages to 2 decimals."""
    if labels is None:
        labels = [f"run {i}" for i in range(len(reps))]
    header = ["Label", "Bal. Acc.", "Specificity", "Recall", "Precision",
              "TN", "FP", "FN", "TP"]
    rows = [header]
    for label, rep in zip(labels, reps):
        pct = as_percentages(rep)
        rows.append([
            label,
            f"{pct['balanced_accuracy']:.2f}",
            f"{pct['specificity']:.2f}",
            f"{pct['recall']:.2f}",
            "undefined" if pct["precision"] is None else f"{pct['precision']:.2f}",
            str(rep.counts.tn), str(rep.counts.fp),
            str(rep.counts.fn), str(rep.counts.tp),
        ])
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    )


def write_report_csv(reps, labels, path):
    """Emit reports as CSV: percentage columns to 2 decimals plus the raw
    counts, one row per report."""
    lines = ["label,balanced_accuracy,specificity,recall,precision,tn,fp,fn,tp"]
    for label, rep in zip(labels, reps):
        pct = as_percentages(rep)
        prec = "" if pct["precision"] is None else f"{pct['precision']:.2f}"
        lines.append(
            f"{label},{pct['balanced_accuracy']:.2f},{pct['specificity']:.2f},"
            f"{pct['recall']:.2f},{prec},"
            f"{rep.counts.tn},{rep.counts.fp},{rep.counts.fn},{rep.counts.tp}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_report_csv(path):
    """Reconstruct (labels, reports) from an emitted report CSV.

    The reports are rebuilt from the raw counts, so the reconstruction is
    exact (full-precision rates, not the rounded percentages)."""
    labels, reps = [], []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("label,"):
            raise InputError(f"{path} is not a report CSV")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            labels.append(cells[0])
            tn, fp, fn, tp = (int(v) for v in cells[5:9])
            reps.append(report(ConfusionCounts(tn=tn, fp=fp, fn=fn, tp=tp)))
    return labels, reps


def jaccard(s1, s2):
    """|intersection| / |union|; two empty sets count as identical (1.0)."""
    s1, s2 = set(s1), set(s2)
    if not s1 and not s2:
        return 1.0
    return len(s1 & s2) / len(s1 | s2)


def avg_jaccard(family):
    """Mean Jaccard index over all unordered pairs of the family."""
    family = [set(s) for s in family]
    if len(family) < 2:
        raise InputError(f"need at least 2 sets, got {len(family)}")
    pairs = list(itertools.combinations(family, 2))
    return sum(jaccard(a, b) for a, b in pairs) / len(pairs)
