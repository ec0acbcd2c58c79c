import os

import numpy as np
import pytest

from sparse_gsvp import cli
from sparse_gsvp.datasets import make_gaussian_clouds
from sparse_gsvp.metrics import read_report_csv


@pytest.fixture(scope="module")
def clouds_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "clouds.csv"
    ds = make_gaussian_clouds(n_per_class=30, separation=8.0, n_features=4, seed=0)
    labels = np.where(ds.y == 1, "pos", "neg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(ds.feature_names + ["label"]) + "\n")
        for row, lab in zip(ds.X, labels):
            fh.write(",".join(repr(float(v)) for v in row) + f",{lab}\n")
    return str(path)


def base_args(clouds_csv, out):
    return ["--dataset", clouds_csv, "--label-column", "label",
            "--positive-label", "pos", "--out", str(out),
            "--alpha", "0.01", "--delta1", "0.001", "--delta2", "0.001",
            "--maxiter", "2000"]


def test_split_writes_manifests(clouds_csv, tmp_path):
    out = tmp_path / "out"
    rc = cli.main(["split"] + base_args(clouds_csv, out))
    assert rc == 0
    for name in ("train", "validation", "test"):
        assert (out / f"split_{name}_indices.txt").exists()
    summary = (out / "split_summary.csv").read_text(encoding="utf-8")
    assert summary.splitlines()[0] == "partition,class0,class1,total"
    # floor rule on 30/30 with 60:40 holdout: 21/5/4 per class
    assert "train,21,21,42" in summary
    assert "validation,5,5,10" in summary
    assert "test,4,4,8" in summary


def test_split_rerun_byte_identical(clouds_csv, tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert cli.main(["split"] + base_args(clouds_csv, out1)) == 0
    assert cli.main(["split"] + base_args(clouds_csv, out2)) == 0
    for name in ("split_train_indices.txt", "split_summary.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_missing_dataset_exits_2(tmp_path, capsys):
    rc = cli.main(["split", "--dataset", "/nonexistent.csv",
                   "--out", str(tmp_path / "o")])
    assert rc == cli.EXIT_INPUT
    assert "/nonexistent.csv" in capsys.readouterr().err


def test_no_dataset_configured_exits_2(tmp_path):
    rc = cli.main(["split", "--out", str(tmp_path / "o")])
    assert rc == cli.EXIT_INPUT


def test_fit_emits_model_reports_and_traces(clouds_csv, tmp_path):
    out = tmp_path / "fit"
    rc = cli.main(["fit"] + base_args(clouds_csv, out))
    assert rc == 0
    for name in ("model.txt", "report_validation.csv", "report_test.csv",
                 "selection.txt", "trace_plane0.csv", "trace_plane1.csv"):
        assert (out / name).exists(), name
    labels, reps = read_report_csv(out / "report_test.csv")
    assert labels == ["test"]
    assert reps[0].balanced_accuracy == 1.0  # clouds are trivially separable
    sel_text = (out / "selection.txt").read_text(encoding="utf-8")
    assert "selected_union" in sel_text and "elbow_1" in sel_text


def test_fit_rerun_byte_identical(clouds_csv, tmp_path):
    out1, out2 = tmp_path / "f1", tmp_path / "f2"
    assert cli.main(["fit"] + base_args(clouds_csv, out1)) == 0
    assert cli.main(["fit"] + base_args(clouds_csv, out2)) == 0
    for name in ("model.txt", "report_validation.csv", "report_test.csv",
                 "selection.txt", "trace_plane0.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_solver_failure_exits_4(clouds_csv, tmp_path):
    out = tmp_path / "diverge"
    rc = cli.main(["fit", "--dataset", clouds_csv, "--label-column", "label",
                   "--positive-label", "pos", "--out", str(out),
                   "--alpha", "1e9", "--delta1", "0.001", "--delta2", "0.001"])
    assert rc == cli.EXIT_SOLVER


def test_plot_without_fit_exits_3(clouds_csv, tmp_path, capsys):
    out = tmp_path / "empty"
    rc = cli.main(["plot"] + base_args(clouds_csv, out))
    assert rc == cli.EXIT_ARTIFACT
    assert "fit" in capsys.readouterr().err


def test_plot_after_fit(clouds_csv, tmp_path):
    out = tmp_path / "plots"
    assert cli.main(["fit"] + base_args(clouds_csv, out)) == 0
    assert cli.main(["plot"] + base_args(clouds_csv, out)) == 0
    for plane in ("plane0", "plane1"):
        svg = (out / f"weights_{plane}.svg").read_text(encoding="utf-8")
        csv_rows = (out / f"weights_{plane}.csv").read_text(
            encoding="utf-8").strip().splitlines()[1:]
        # CSV row count equals curve length (4 features)
        assert len(csv_rows) == 4
        assert "<metadata>elbow_x=" in svg
        assert (out / f"objective_{plane}.svg").exists()
        obj_rows = (out / f"objective_{plane}.csv").read_text(
            encoding="utf-8").strip().splitlines()[1:]
        trace_rows = (out / f"trace_{plane}.csv").read_text(
            encoding="utf-8").strip().splitlines()[1:]
        # objective CSV final row equals the trace's last objective
        assert obj_rows[-1].split(",")[1] == trace_rows[-1].split(",")[1]


def test_svg_elbow_marker_matches_selection(clouds_csv, tmp_path):
    out = tmp_path / "marker"
    assert cli.main(["fit"] + base_args(clouds_csv, out)) == 0
    assert cli.main(["plot"] + base_args(clouds_csv, out)) == 0
    sel_text = (out / "selection.txt").read_text(encoding="utf-8")
    elbow_x = int(sel_text.splitlines()[0].split("x=")[1].split()[0])
    svg = (out / "weights_plane0.svg").read_text(encoding="utf-8")
    meta = svg.split("<metadata>")[1].split("</metadata>")[0]
    assert meta == f"elbow_x={elbow_x}"


def test_stability_command(clouds_csv, tmp_path):
    out = tmp_path / "stab"
    rc = cli.main(["stability"] + base_args(clouds_csv, out)
                  + ["--q-list", "0.5,0.5"])
    assert rc == 0
    text = (out / "stability.txt").read_text(encoding="utf-8")
    # identical q values select identical features: avg JSI is exactly 1
    assert text == "avg_jsi = 1.0000\n"
    assert (out / "jsi_matrix.csv").exists()
    rows = (out / "stability.csv").read_text(encoding="utf-8").strip().splitlines()
    assert len(rows) == 3


def test_stability_needs_two_qs(clouds_csv, tmp_path):
    rc = cli.main(["stability"] + base_args(clouds_csv, tmp_path / "s1")
                  + ["--q-list", "0.5"])
    assert rc == cli.EXIT_INPUT


def test_tune_command(clouds_csv, tmp_path):
    out = tmp_path / "tune"
    rc = cli.main(["tune"] + base_args(clouds_csv, out) + [
        "--config", _write_config(tmp_path, {
            "delta1_grid": "0.001,0.01",
            "delta2_grid": "0.001",
            "alpha_grid": "0.01",
        }),
    ])
    assert rc == 0
    trials = (out / "trials.csv").read_text(encoding="utf-8").strip().splitlines()
    assert len(trials) == 3  # header + 2 grid points
    best = (out / "best_params.txt").read_text(encoding="utf-8")
    assert best.startswith("delta1 = ")


def _write_config(tmp_path, extra):
    path = tmp_path / "config.txt"
    lines = ["# test config"] + [f"{k} = {v}" for k, v in extra.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def test_config_file_parsing_and_unknown_key(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("nonsense_key = 1\n", encoding="utf-8")
    rc = cli.main(["split", "--config", str(path), "--out", str(tmp_path / "o")])
    assert rc == cli.EXIT_INPUT


def test_env_override(clouds_csv, tmp_path, monkeypatch):
    out = tmp_path / "env"
    monkeypatch.setenv("SPARSE_GSVP_DATASET", clouds_csv)
    monkeypatch.setenv("SPARSE_GSVP_LABEL_COLUMN", "label")
    monkeypatch.setenv("SPARSE_GSVP_POSITIVE_LABEL", "pos")
    rc = cli.main(["split", "--out", str(out)])
    assert rc == 0
    assert (out / "split_summary.csv").exists()


def test_flag_overrides_env(clouds_csv, tmp_path, monkeypatch):
    monkeypatch.setenv("SPARSE_GSVP_DATASET", "/nonexistent.csv")
    out = tmp_path / "flag"
    rc = cli.main(["split"] + base_args(clouds_csv, out))
    assert rc == 0
