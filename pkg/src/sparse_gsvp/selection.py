"""Feature selection from sparse weight vectors.

Sorts each weight vector by magnitude, finds the elbow of the descending
curve (maximum distance to the chord joining its endpoints, both axes
min-max normalized), and keeps the features ranked before the elbow.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CurveTooShortError, DegenerateCurveError, ShapeError

# Max normalized chord distance below which the curve counts as linear.
_DEGENERATE_DISTANCE = 1e-12


@dataclass(frozen=True)
class ElbowPoint:
    """Elbow of a sorted-magnitude curve: 1-based rank x and magnitude y."""

    x: int
    y: float


@dataclass
class SelectionResult:
    """Sorted curves, elbows, and the selected/exclusive/common index sets."""

    sorted_magnitudes_1: np.ndarray
    sorted_magnitudes_2: np.ndarray
    rank_indices_1: np.ndarray
    rank_indices_2: np.ndarray
    elbow_1: ElbowPoint
    elbow_2: ElbowPoint
    selected_1: list
    selected_2: list
    selected_union: list
    exclusive_1: list
    exclusive_2: list
    common: list


@dataclass
class MaskedHyperplanePair:
    """Weight vectors with non-selected entries zeroed, plus biases."""

    w1: np.ndarray
    w2: np.ndarray
    b1: float
    b2: float


def sort_by_magnitude(w):
    """Return (descending |w| values, permutation of feature indices).

    The sort is stable: equal magnitudes keep their original feature order.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise ShapeError("sort_by_magnitude expects a nonempty 1-D vector")
    mags = np.abs(w)
    perm = np.argsort(-mags, kind="stable")
    return mags[perm], perm


def find_elbow(curve):
    """Elbow of a nonincreasing curve: the point of maximum perpendicular
    distance to the chord from the first to the last point, after min-max
    normalizing both axes to [0, 1].  Ties resolve to the smallest rank.

    Raises CurveTooShortError for fewer than 3 points and
    DegenerateCurveError when the curve is exactly linear (all distances 0).
    """
    y = np.asarray(curve, dtype=np.float64)
    if y.ndim != 1:
        raise ShapeError("find_elbow expects a 1-D curve")
    n = y.size
    if n < 3:
        raise CurveTooShortError(f"need at least 3 points, got {n}")
    if np.any(np.diff(y) > 1e-12 * max(1.0, float(np.abs(y).max()))):
        raise ValueError("curve must be nonincreasing")

    span = y[0] - y[-1]
    if span <= 0.0:
        # Flat curve: every point lies on the chord.
        raise DegenerateCurveError("curve is constant; no elbow")
    xs = np.arange(n, dtype=np.float64) / (n - 1)
    ys = (y - y[-1]) / span
    # Chord runs from (0, 1) to (1, 0); |x + y - 1| / sqrt(2) is the distance.
    dist = np.abs(xs + ys - 1.0) / np.sqrt(2.0)
    best = int(np.argmax(dist))  # argmax returns the first (smallest rank) max
    if dist[best] < _DEGENERATE_DISTANCE:
        raise DegenerateCurveError("curve is linear; all chord distances are zero")
    return ElbowPoint(x=best + 1, y=float(y[best]))


def _ordered_unique(indices):
    seen = set()
    out = []
    for i in indices:
        if i not in seen:
            seen.add(i)
            out.append(int(i))
    return out


def select_features(w1, w2, on_degenerate="raise"):
    """Run magnitude sorting and elbow detection on both weight vectors and
    build the selected sets plus their exclusive/common partition.

    on_degenerate: "raise" propagates DegenerateCurveError; "keep-all" falls
    back to selecting every feature on the degenerate side (with a warning).
    """
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    if w1.shape != w2.shape:
        raise ShapeError(f"weight vectors differ in length: {w1.shape} vs {w2.shape}")
    if w1.size < 3:
        raise ShapeError("need at least 3 features to select from")

    mags1, perm1 = sort_by_magnitude(w1)
    mags2, perm2 = sort_by_magnitude(w2)

    elbows = []
    for side, mags in ((1, mags1), (2, mags2)):
        try:
            elbows.append(find_elbow(mags))
        except DegenerateCurveError:
            if on_degenerate != "keep-all":
                raise
            warnings.warn(
                f"weight curve {side} is linear; keeping all features for that side",
                stacklevel=2,
            )
            elbows.append(ElbowPoint(x=mags.size, y=float(mags[-1])))
    elbow1, elbow2 = elbows

    selected_1 = [int(i) for i in perm1[: elbow1.x]]
    selected_2 = [int(i) for i in perm2[: elbow2.x]]
    union = _ordered_unique(selected_1 + selected_2)
    set1, set2 = set(selected_1), set(selected_2)
    return SelectionResult(
        sorted_magnitudes_1=mags1,
        sorted_magnitudes_2=mags2,
        rank_indices_1=perm1,
        rank_indices_2=perm2,
        elbow_1=elbow1,
        elbow_2=elbow2,
        selected_1=selected_1,
        selected_2=selected_2,
        selected_union=union,
        exclusive_1=[i for i in union if i in set1 and i not in set2],
        exclusive_2=[i for i in union if i in set2 and i not in set1],
        common=[i for i in union if i in set1 and i in set2],
    )


def apply_mask(w1, w2, b1, b2, sel):
    """Zero the non-selected entries of each weight vector; biases pass through."""
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    masked1 = np.zeros_like(w1)
    masked2 = np.zeros_like(w2)
    idx1 = np.array(sel.selected_1, dtype=int)
    idx2 = np.array(sel.selected_2, dtype=int)
    if idx1.size:
        masked1[idx1] = w1[idx1]
    if idx2.size:
        masked2[idx2] = w2[idx2]
    return MaskedHyperplanePair(w1=masked1, w2=masked2, b1=float(b1), b2=float(b2))
