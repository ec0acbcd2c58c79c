"""Dataset materialization helpers.

The breast-cancer table (569 samples x 30 features, benign/malignant) is
written from scikit-learn's bundled copy; scikit-learn is imported lazily
so the core library does not depend on it.  The microarray surrogate
generates a gene-expression-like matrix with a small planted set of
informative genes, for use when the real 253 x 15154 screening dataset is
not available locally.
"""

import numpy as np

from .data import LabeledDataset


def write_breast_cancer_csv(path):
    """Materialize the 569x30 breast-cancer table as CSV.

    The label column is named 'diagnosis' with values 'B' (benign, class 0)
    and 'M' (malignant, class 1).  Requires scikit-learn.
    """
    from sklearn.datasets import load_breast_cancer

    bunch = load_breast_cancer()
    names = [n.replace(" ", "_") for n in bunch.feature_names]
    # sklearn encodes malignant as 0, benign as 1
    labels = np.where(bunch.target == 0, "M", "B")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(names + ["diagnosis"]) + "\n")
        for row, lab in zip(bunch.data, labels):
            fh.write(",".join(repr(float(v)) for v in row) + f",{lab}\n")
    return path


def make_microarray_surrogate(n_class0=91, n_class1=162, n_features=15154,
                              n_informative=4, shift=3.0,
                              informative_noise=0.25, noise_scale=0.1, seed=0):
    """Synthetic gene-expression-like dataset with planted signal.

    The first n_informative columns have class means separated by `shift`
    with a tight within-class spread of `informative_noise`, mimicking
    differentially expressed genes; all remaining columns are noise with
    standard deviation `noise_scale`.  Shapes default to the ovarian
    screening layout (91 normal + 162 cancer samples, 15154 genes).
    """
    rng = np.random.default_rng(seed)
    n = n_class0 + n_class1
    X = rng.standard_normal((n, n_features))
    y = np.concatenate([np.zeros(n_class0, dtype=int), np.ones(n_class1, dtype=int)])
    X[:, n_informative:] *= noise_scale
    X[:, :n_informative] *= informative_noise
    X[y == 1, :n_informative] += shift
    names = [f"gene_{i:05d}" for i in range(n_features)]
    return LabeledDataset(X=X, y=y, feature_names=names)


def write_microarray_surrogate_csv(path, **kwargs):
    """Materialize the microarray surrogate as CSV with a 'status' label
    column taking values 'Normal' (class 0) and 'Cancer' (class 1)."""
    ds = make_microarray_surrogate(**kwargs)
    labels = np.where(ds.y == 1, "Cancer", "Normal")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(ds.feature_names + ["status"]) + "\n")
        for row, lab in zip(ds.X, labels):
            fh.write(",".join(repr(float(v)) for v in row) + f",{lab}\n")
    return path


def make_gaussian_clouds(n_per_class=20, separation=6.0, n_features=2, seed=0):
    """Two well-separated Gaussian clouds; a sanity fixture for the classifier."""
    rng = np.random.default_rng(seed)
    c0 = rng.standard_normal((n_per_class, n_features))
    c1 = rng.standard_normal((n_per_class, n_features)) + separation
    X = np.vstack([c0, c1])
    y = np.concatenate([np.zeros(n_per_class, dtype=int),
                        np.ones(n_per_class, dtype=int)])
    names = [f"x{i}" for i in range(n_features)]
    return LabeledDataset(X=X, y=y, feature_names=names)
