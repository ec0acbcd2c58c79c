import numpy as np
import pytest

from sparse_gsvp import (
    InputError,
    LabeledDataset,
    SplitSpec,
    load_csv,
    row_normalize,
    standardize,
    stratified_split,
)
from sparse_gsvp.data import _split_counts


def make_dataset(n0, n1, n_features=3, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n0 + n1, n_features))
    y = np.concatenate([np.zeros(n0, dtype=int), np.ones(n1, dtype=int)])
    return LabeledDataset(X=X, y=y, feature_names=[f"f{i}" for i in range(n_features)])


def test_split_counts_breast_cancer_layout():
    # 569 samples: 357 benign / 212 malignant, 70% train, then 60:40
    spec = SplitSpec(0.70, 0.60)
    assert _split_counts(357, spec) == (249, 64, 44)
    assert _split_counts(212, spec) == (148, 38, 26)


def test_split_counts_microarray_layout():
    # 253 samples: 91 normal / 162 cancer, 70% train, then 70:30
    spec = SplitSpec(0.70, 0.70)
    assert _split_counts(91, spec) == (63, 19, 9)
    assert _split_counts(162, spec) == (113, 34, 15)


def test_split_counts_rejects_empty_partition():
    with pytest.raises(InputError):
        _split_counts(3, SplitSpec(0.70, 0.60))


def test_stratified_split_partition_properties():
    ds = make_dataset(40, 25)
    split = stratified_split(ds, SplitSpec(0.70, 0.60, seed=7))
    idx = np.concatenate([split.train_indices, split.validation_indices,
                          split.test_indices])
    assert sorted(idx) == list(range(65))  # disjoint and exhaustive
    # per-class counts follow the floor rule
    assert int(np.sum(split.train.y == 0)) == 28
    assert int(np.sum(split.train.y == 1)) == 17
    assert split.train.n_samples == 45


def test_stratified_split_deterministic_and_seed_sensitive():
    ds = make_dataset(40, 25)
    a = stratified_split(ds, SplitSpec(seed=1))
    b = stratified_split(ds, SplitSpec(seed=1))
    c = stratified_split(ds, SplitSpec(seed=2))
    assert np.array_equal(a.train_indices, b.train_indices)
    assert not np.array_equal(a.train_indices, c.train_indices)


def test_stratified_split_empty_class():
    ds = make_dataset(10, 5)
    ds.y[:] = 0
    with pytest.raises(InputError):
        stratified_split(ds, SplitSpec())


def test_load_csv_comma_and_semicolon(tmp_path):
    for delim, name in ((",", "c.csv"), (";", "s.csv")):
        path = tmp_path / name
        path.write_text(
            f"a{delim}b{delim}label\n1.0{delim}2.0{delim}pos\n"
            f"3.0{delim}4.0{delim}neg\n",
            encoding="utf-8",
        )
        ds = load_csv(path, "label", "pos")
        assert ds.feature_names == ["a", "b"]
        assert list(ds.y) == [1, 0]
        assert np.allclose(ds.X, [[1.0, 2.0], [3.0, 4.0]])


def test_load_csv_diagnostics(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,label\n1.0,oops,pos\n2.0,3.0,neg\n", encoding="utf-8")
    with pytest.raises(InputError, match=r"row 2.*'b'.*oops"):
        load_csv(path, "label", "pos")

    path2 = tmp_path / "short.csv"
    path2.write_text("a,b,label\n1.0,pos\n", encoding="utf-8")
    with pytest.raises(InputError, match="row 2"):
        load_csv(path2, "label", "pos")


def test_load_csv_label_errors(tmp_path):
    path = tmp_path / "l.csv"
    path.write_text("a,label\n1.0,x\n2.0,y\n3.0,z\n", encoding="utf-8")
    with pytest.raises(InputError, match="exactly 2 distinct"):
        load_csv(path, "label", "x")
    path2 = tmp_path / "l2.csv"
    path2.write_text("a,label\n1.0,x\n2.0,y\n", encoding="utf-8")
    with pytest.raises(InputError, match="positive label"):
        load_csv(path2, "label", "nope")
    with pytest.raises(InputError, match="not in header"):
        load_csv(path2, "missing", "x")


def test_load_csv_missing_file():
    with pytest.raises(InputError, match="cannot read"):
        load_csv("/nonexistent/file.csv", "label", "x")


def test_standardize_uses_train_statistics():
    train = make_dataset(30, 20, seed=1)
    other = make_dataset(10, 10, seed=2)
    s_train, (s_other,), means, scales = standardize(train, [other])
    assert np.allclose(s_train.X.mean(axis=0), 0.0, atol=1e-12)
    assert np.allclose(s_train.X.std(axis=0), 1.0, atol=1e-12)
    assert np.allclose(s_other.X, (other.X - means) / scales)


def test_standardize_zero_variance_column():
    X = np.ones((5, 2))
    X[:, 1] = np.arange(5.0)
    ds = LabeledDataset(X=X, y=np.array([0, 0, 1, 1, 1]), feature_names=["c", "v"])
    s, _, _, scales = standardize(ds)
    assert scales[0] == 1.0  # constant column left unscaled
    assert np.allclose(s.X[:, 0], 0.0)


def test_row_normalize():
    ds = make_dataset(5, 5, seed=3)
    out = row_normalize(ds)
    assert np.allclose(np.linalg.norm(out.X, axis=1), 1.0)
    # zero rows pass through
    ds.X[0] = 0.0
    out2 = row_normalize(ds)
    assert np.all(out2.X[0] == 0.0)


def test_dataset_validation():
    with pytest.raises(InputError):
        LabeledDataset(X=np.zeros((2, 2)), y=np.array([0, 2]), feature_names=["a", "b"])
    with pytest.raises(InputError):
        LabeledDataset(X=np.zeros((2, 2)), y=np.array([0]), feature_names=["a", "b"])
    with pytest.raises(InputError):
        LabeledDataset(X=np.zeros((2, 2)), y=np.array([0, 1]), feature_names=["a"])


def test_split_spec_validation():
    with pytest.raises(InputError):
        SplitSpec(train_fraction=0.0)
    with pytest.raises(InputError):
        SplitSpec(holdout_val_fraction=1.0)
