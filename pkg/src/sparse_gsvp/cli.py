"""Command-line surface: split | tune | fit | stability | plot.

All commands read a flat key=value config file (see DEFAULTS for the
schema; defaults are the breast-cancer l1 settings) with flag and
SPARSE_GSVP_* environment-variable overrides.  Outputs are plain UTF-8
text/CSV/SVG files without timestamps, so reruns with the same config are
byte-identical.

Exit statuses: 0 success, 2 input error, 3 missing artifact, 4 solver error.
"""

import argparse
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import classify
from .data import SplitSpec, load_csv, row_normalize, standardize, stratified_split
from .errors import (
    DegenerateDenominatorError,
    DivergenceError,
    EmptyModelError,
    ExhaustedGridError,
    InputError,
    ShapeError,
)
from .metrics import (
    avg_jaccard,
    confusion,
    jaccard,
    report,
    write_report_csv,
)
from .solver import DEFAULT_EPSILON, PenaltyKind, PgdConfig
from .tuning import GridSpec, grid_search, write_trials_csv

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ARTIFACT = 3
EXIT_SOLVER = 4

ENV_PREFIX = "SPARSE_GSVP_"

# Config schema with defaults (breast-cancer l1 settings).
DEFAULTS = {
    "dataset": "",
    "label_column": "diagnosis",
    "positive_label": "M",
    "train_fraction": "0.70",
    "holdout_val_fraction": "0.60",
    "seed": "42",
    "standardize": "true",
    "row_normalize": "false",
    "penalty": "l1",           # l1 | lq
    "q": "1.0",
    "q_list": "0.1,0.5,0.9",   # stability sweep
    "epsilon": repr(DEFAULT_EPSILON),
    "alpha": "0.001",
    "delta1": repr(20627 / 23750),
    "delta2": repr(20627 / 23750),
    "maxiter": "10000",
    "tol": "0.0001",
    "init": "ones-unit-norm",
    "out": "out",
    # tuning grids: comma lists override the defaults built in tuning.py
    "delta1_grid": "",
    "delta2_grid": "",
    "alpha_grid": "",
}


class ArtifactError(FileNotFoundError):
    """A required artifact from an earlier command is missing."""


def read_config_file(path):
    """Parse a flat key = value config file; '#' starts a comment."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    for line_num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{line_num}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in DEFAULTS:
            raise InputError(f"{path}:{line_num}: unknown key {key!r}")
        values[key] = value
    return values


def resolve_config(args):
    """Merge defaults < config file < environment < command-line flags."""
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config_file(args.config))
    for key in DEFAULTS:
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            cfg[key] = env
    flag_map = {
        "dataset": args.dataset,
        "label_column": getattr(args, "label_column", None),
        "positive_label": getattr(args, "positive_label", None),
        "seed": args.seed,
        "q": getattr(args, "q", None),
        "epsilon": getattr(args, "epsilon", None),
        "alpha": getattr(args, "alpha", None),
        "delta1": getattr(args, "delta1", None),
        "delta2": getattr(args, "delta2", None),
        "maxiter": getattr(args, "maxiter", None),
        "penalty": getattr(args, "penalty", None),
        "out": args.out,
        "q_list": getattr(args, "q_list", None),
    }
    for key, value in flag_map.items():
        if value is not None:
            cfg[key] = str(value)
    if getattr(args, "no_standardize", False):
        cfg["standardize"] = "false"
    if getattr(args, "row_normalize", False):
        cfg["row_normalize"] = "true"
    if getattr(args, "init", None) is not None:
        cfg["init"] = args.init
    return cfg


def _parse_bool(value, key):
    v = value.strip().lower()
    if v in ("true", "1", "yes", "on"):
        return True
    if v in ("false", "0", "no", "off"):
        return False
    raise InputError(f"config key {key!r}: expected a boolean, got {value!r}")


def _parse_float_list(value, key):
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"config key {key!r}: bad float list {value!r}") from exc


def pgd_config(cfg, q=None, penalty=None):
    kind = PenaltyKind.LQ if (penalty or cfg["penalty"]).lower() == "lq" else PenaltyKind.L1
    qv = float(cfg["q"]) if q is None else float(q)
    try:
        pc = PgdConfig(
            q=qv,
            epsilon=float(cfg["epsilon"]),
            alpha=float(cfg["alpha"]),
            delta1=float(cfg["delta1"]),
            delta2=float(cfg["delta2"]),
            maxiter=int(cfg["maxiter"]),
            tol=float(cfg["tol"]),
            init=cfg["init"],
            seed=int(cfg["seed"]),
        )
    except ValueError as exc:
        raise InputError(f"bad solver configuration: {exc}") from exc
    return pc, kind


def load_dataset(cfg):
    if not cfg["dataset"]:
        raise InputError("no dataset configured (set 'dataset' or pass --dataset)")
    return load_csv(cfg["dataset"], cfg["label_column"], cfg["positive_label"])


def split_dataset(ds, cfg):
    spec = SplitSpec(
        train_fraction=float(cfg["train_fraction"]),
        holdout_val_fraction=float(cfg["holdout_val_fraction"]),
        seed=int(cfg["seed"]),
    )
    return stratified_split(ds, spec)


def prepared_split(cfg):
    """Load, split, and (optionally) standardize by train statistics."""
    ds = load_dataset(cfg)
    split = split_dataset(ds, cfg)
    if _parse_bool(cfg["standardize"], "standardize"):
        train, (val, test), _, _ = standardize(
            split.train, [split.validation, split.test]
        )
        split.train, split.validation, split.test = train, val, test
    if _parse_bool(cfg["row_normalize"], "row_normalize"):
        split.train = row_normalize(split.train)
        split.validation = row_normalize(split.validation)
        split.test = row_normalize(split.test)
    return ds, split


def _outdir(cfg):
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_split(cfg):
    ds = load_dataset(cfg)
    split = split_dataset(ds, cfg)
    out = _outdir(cfg)
    for name, idx in (
        ("train", split.train_indices),
        ("validation", split.validation_indices),
        ("test", split.test_indices),
    ):
        (out / f"split_{name}_indices.txt").write_text(
            "\n".join(str(int(i)) for i in idx) + "\n", encoding="utf-8"
        )
    lines = ["partition,class0,class1,total"]
    for name, part in (
        ("train", split.train),
        ("validation", split.validation),
        ("test", split.test),
    ):
        n0 = int(np.sum(part.y == 0))
        n1 = int(np.sum(part.y == 1))
        lines.append(f"{name},{n0},{n1},{n0 + n1}")
    (out / "split_summary.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print((out / "split_summary.csv").read_text(encoding="utf-8").rstrip())
    return EXIT_OK


def _write_trace_csv(trace, path):
    lines = ["iteration,objective,relative_change"]
    for k, h in enumerate(trace.objective_history):
        rel = "" if k == 0 else repr(trace.relative_change_history[k - 1])
        lines.append(f"{k},{h!r},{rel}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_selection(model, feature_names, path):
    sel = model.selection
    names = lambda idx: ", ".join(feature_names[i] for i in idx) or "(none)"
    lines = [
        f"elbow_1: x={sel.elbow_1.x} y={sel.elbow_1.y!r}",
        f"elbow_2: x={sel.elbow_2.x} y={sel.elbow_2.y!r}",
        f"selected_union ({len(sel.selected_union)}): {names(sel.selected_union)}",
        f"exclusive_1 ({len(sel.exclusive_1)}): {names(sel.exclusive_1)}",
        f"exclusive_2 ({len(sel.exclusive_2)}): {names(sel.exclusive_2)}",
        f"common ({len(sel.common)}): {names(sel.common)}",
        "selected_union_indices: "
        + " ".join(str(i) for i in sel.selected_union),
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _fit_once(cfg, q=None, penalty=None):
    _, split = prepared_split(cfg)
    pc, kind = pgd_config(cfg, q=q, penalty=penalty)
    C1, C2 = split.train.class_matrices()
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        model = classify.fit(C1, C2, pc, kind)
    return split, model, kind


def cmd_fit(cfg):
    split, model, _ = _fit_once(cfg)
    out = _outdir(cfg)
    classify.save_model(model, out / "model.txt")

    reps, labels = [], []
    for name, part in (("validation", split.validation), ("test", split.test)):
        pred = classify.predict_batch(model, part.X)
        rep = report(confusion(part.y, pred))
        write_report_csv([rep], [name], out / f"report_{name}.csv")
        reps.append(rep)
        labels.append(name)
    _write_selection(model, split.train.feature_names, out / "selection.txt")
    _write_trace_csv(model.trace0, out / "trace_plane0.csv")
    _write_trace_csv(model.trace1, out / "trace_plane1.csv")

    from .metrics import format_report_table

    print(format_report_table(reps, labels))
    print(f"selected features: {len(model.selection.selected_union)}")
    return EXIT_OK


def cmd_tune(cfg):
    _, split = prepared_split(cfg)
    kind = PenaltyKind.LQ if cfg["penalty"].lower() == "lq" else PenaltyKind.L1
    grid_kwargs = {"q": float(cfg["q"]), "epsilon": float(cfg["epsilon"])}
    if cfg["delta1_grid"]:
        grid_kwargs["delta1_grid"] = _parse_float_list(cfg["delta1_grid"], "delta1_grid")
    if cfg["delta2_grid"]:
        grid_kwargs["delta2_grid"] = _parse_float_list(cfg["delta2_grid"], "delta2_grid")
    if cfg["alpha_grid"]:
        grid_kwargs["alphas"] = _parse_float_list(cfg["alpha_grid"], "alpha_grid")
    grid = GridSpec(**grid_kwargs)

    best, records = grid_search(
        split.train, split.validation, grid, kind,
        maxiter=int(cfg["maxiter"]), tol=float(cfg["tol"]),
        init=cfg["init"], seed=int(cfg["seed"]),
    )
    out = _outdir(cfg)
    write_trials_csv(records, out / "trials.csv")
    (out / "best_params.txt").write_text(
        f"delta1 = {best.delta1!r}\ndelta2 = {best.delta2!r}\n"
        f"alpha = {best.alpha!r}\nq = {best.q!r}\nepsilon = {best.epsilon!r}\n",
        encoding="utf-8",
    )
    ok = [r for r in records if not r.failed]
    print(f"trials: {len(records)} ({len(records) - len(ok)} failed)")
    print(f"best: delta1={best.delta1!r} delta2={best.delta2!r} alpha={best.alpha!r}")
    return EXIT_OK


def cmd_stability(cfg):
    qs = _parse_float_list(cfg["q_list"], "q_list")
    if len(qs) < 2:
        raise InputError("stability needs at least 2 q values in q_list")
    out = _outdir(cfg)
    families = []
    lines = ["q,n_selected,selected_indices"]
    for q in qs:
        penalty = "l1" if q >= 1.0 else "lq"
        _, model, _ = _fit_once(cfg, q=q, penalty=penalty)
        sel = set(model.selection.selected_union)
        families.append(sel)
        lines.append(
            f"{q!r},{len(sel)},{' '.join(str(i) for i in sorted(sel))}"
        )
    (out / "stability.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    mat_lines = ["q_i,q_j,jsi"]
    for i in range(len(qs)):
        for j in range(i + 1, len(qs)):
            mat_lines.append(f"{qs[i]!r},{qs[j]!r},{jaccard(families[i], families[j])!r}")
    (out / "jsi_matrix.csv").write_text("\n".join(mat_lines) + "\n", encoding="utf-8")

    avg = avg_jaccard(families)
    (out / "stability.txt").write_text(f"avg_jsi = {avg:.4f}\n", encoding="utf-8")
    print(f"avg JSI over q={qs}: {avg:.4f}")
    return EXIT_OK


def _svg_curve(ys, title, path, marker_x=None):
    """Minimal static SVG line plot; marker_x (1-based) drops an elbow dot.

    The marker coordinate is also recorded in the SVG <metadata> element.
    """
    width, height, pad = 640, 400, 40
    n = len(ys)
    lo, hi = min(ys), max(ys)
    span = (hi - lo) or 1.0
    px = lambda i: pad + (width - 2 * pad) * (i / max(n - 1, 1))
    py = lambda v: height - pad - (height - 2 * pad) * ((v - lo) / span)
    points = " ".join(f"{px(i):.2f},{py(v):.2f}" for i, v in enumerate(ys))
    meta = "" if marker_x is None else f"elbow_x={marker_x}"
    marker = ""
    if marker_x is not None:
        mi = marker_x - 1
        marker = (
            f'<circle cx="{px(mi):.2f}" cy="{py(ys[mi]):.2f}" r="5" '
            'fill="crimson"/>'
        )
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
        f"<metadata>{meta}</metadata>"
        f'<rect width="{width}" height="{height}" fill="white"/>'
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>'
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" '
        f'points="{points}"/>'
        f"{marker}</svg>\n"
    )
    path.write_text(svg, encoding="utf-8")


def _svg_bars(xs, ys, title, path):
    width, height, pad = 640, 400, 40
    hi = max(ys) or 1
    n = len(ys)
    bw = (width - 2 * pad) / max(n, 1)
    bars = []
    for i, (x, y) in enumerate(zip(xs, ys)):
        bh = (height - 2 * pad) * (y / hi)
        bars.append(
            f'<rect x="{pad + i * bw + 2:.2f}" y="{height - pad - bh:.2f}" '
            f'width="{bw - 4:.2f}" height="{bh:.2f}" fill="steelblue"/>'
            f'<text x="{pad + i * bw + bw / 2:.2f}" y="{height - pad + 16:.2f}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="11">{x}</text>'
        )
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
        "<metadata></metadata>"
        f'<rect width="{width}" height="{height}" fill="white"/>'
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>'
        f'{"".join(bars)}</svg>\n'
    )
    path.write_text(svg, encoding="utf-8")


def cmd_plot(cfg):
    out = _outdir(cfg)
    model_path = out / "model.txt"
    if not model_path.exists():
        raise ArtifactError(f"missing fit artifact {model_path}; run 'fit' first")
    model = classify.load_model(model_path)

    for plane, mags, elbow in (
        ("plane0", model.selection.sorted_magnitudes_1, model.selection.elbow_1),
        ("plane1", model.selection.sorted_magnitudes_2, model.selection.elbow_2),
    ):
        ys = list(map(float, mags))
        _svg_curve(ys, f"sorted weight magnitudes ({plane})",
                   out / f"weights_{plane}.svg", marker_x=elbow.x)
        csv_lines = ["rank,magnitude"]
        csv_lines += [f"{k + 1},{v!r}" for k, v in enumerate(ys)]
        (out / f"weights_{plane}.csv").write_text(
            "\n".join(csv_lines) + "\n", encoding="utf-8"
        )

    for plane in ("plane0", "plane1"):
        trace_path = out / f"trace_{plane}.csv"
        if not trace_path.exists():
            raise ArtifactError(f"missing fit artifact {trace_path}; run 'fit' first")
        rows = trace_path.read_text(encoding="utf-8").strip().splitlines()[1:]
        ys = [float(r.split(",")[1]) for r in rows]
        _svg_curve(ys, f"objective history ({plane})", out / f"objective_{plane}.svg")
        csv_lines = ["iteration,objective"]
        csv_lines += [f"{k},{v!r}" for k, v in enumerate(ys)]
        (out / f"objective_{plane}.csv").write_text(
            "\n".join(csv_lines) + "\n", encoding="utf-8"
        )

    stability_path = out / "stability.csv"
    if stability_path.exists():
        rows = stability_path.read_text(encoding="utf-8").strip().splitlines()[1:]
        qs = [r.split(",")[0] for r in rows]
        counts = [int(r.split(",")[1]) for r in rows]
        _svg_bars(qs, counts, "features selected vs q", out / "features_vs_q.svg")
        csv_lines = ["q,n_selected"]
        csv_lines += [f"{q},{c}" for q, c in zip(qs, counts)]
        (out / "features_vs_q.csv").write_text(
            "\n".join(csv_lines) + "\n", encoding="utf-8"
        )
    else:
        print("note: no stability.csv found; skipping features-vs-q plot")
    print(f"plots written to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sparse-gsvp",
        description="Sparse ratio-objective solver with feature selection "
        "and two-plane proximal classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("split", cmd_split),
        ("tune", cmd_tune),
        ("fit", cmd_fit),
        ("stability", cmd_stability),
        ("plot", cmd_plot),
    ):
        p = sub.add_parser(name)
        p.set_defaults(func=fn)
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--dataset", help="CSV dataset path")
        p.add_argument("--label-column", dest="label_column")
        p.add_argument("--positive-label", dest="positive_label")
        p.add_argument("--seed", type=int)
        p.add_argument("--q", type=float)
        p.add_argument("--epsilon", type=float)
        p.add_argument("--alpha", type=float)
        p.add_argument("--delta1", type=float)
        p.add_argument("--delta2", type=float)
        p.add_argument("--maxiter", type=int)
        p.add_argument("--penalty", choices=["l1", "lq"])
        p.add_argument("--no-standardize", action="store_true")
        p.add_argument("--row-normalize", dest="row_normalize",
                       action="store_true")
        p.add_argument("--init", choices=["ones-unit-norm", "seeded-gaussian"])
        p.add_argument("--out", help="output directory")
        if name == "stability":
            p.add_argument("--q-list", dest="q_list",
                           help="comma-separated q values")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(cfg)
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARTIFACT
    except (InputError, ShapeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (
        DegenerateDenominatorError,
        DivergenceError,
        EmptyModelError,
        ExhaustedGridError,
    ) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
