"""Tour of the command-line surface on a small synthetic dataset.

Drives the installed `sparse-gsvp` entry point programmatically through
split -> fit -> stability -> plot and lists the artifacts each command
leaves behind.  Everything is deterministic: rerunning produces the same
bytes.

Run:  python3 demos/05_cli_tour.py
"""

import tempfile
from pathlib import Path

import numpy as np

from sparse_gsvp import cli
from sparse_gsvp.datasets import make_gaussian_clouds

workdir = Path(tempfile.mkdtemp())
csv_path = workdir / "clouds.csv"
out = workdir / "out"

ds = make_gaussian_clouds(n_per_class=30, separation=8.0, n_features=4, seed=0)
labels = np.where(ds.y == 1, "pos", "neg")
with open(csv_path, "w", encoding="utf-8") as fh:
    fh.write(",".join(ds.feature_names + ["label"]) + "\n")
    for row, lab in zip(ds.X, labels):
        fh.write(",".join(repr(float(v)) for v in row) + f",{lab}\n")

base = ["--dataset", str(csv_path), "--label-column", "label",
        "--positive-label", "pos", "--out", str(out),
        "--alpha", "0.01", "--delta1", "0.001", "--delta2", "0.001"]

for command, extra in (("split", []),
                       ("fit", []),
                       ("stability", ["--q-list", "0.1,0.5,0.9"]),
                       ("plot", [])):
    print(f"\n$ sparse-gsvp {command} ...")
    rc = cli.main([command] + base + extra)
    print(f"(exit status {rc})")

print("\nartifacts:")
for path in sorted(out.iterdir()):
    print(f"  {path.name}  ({path.stat().st_size} bytes)")
