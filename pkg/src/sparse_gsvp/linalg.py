"""Dense matrix/vector kernels used by the solver and classifier.

Matrices are plain 2-D float64 numpy arrays in row-major (C) order, vectors
are 1-D float64 arrays.  Nothing here ever forms an m x m Gram matrix: the
solver needs only products of the form A @ z and A.T @ u.
"""

import numpy as np

from .errors import ShapeError


def as_matrix(a):
    """Validate and return `a` as a 2-D float64 array with finite entries."""
    m = np.ascontiguousarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.size == 0:
        raise ShapeError("empty matrix")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix contains NaN or Inf entries")
    return m


def as_vector(v):
    """Validate and return `v` as a 1-D float64 array of positive length."""
    w = np.ascontiguousarray(v, dtype=np.float64)
    if w.ndim != 1:
        raise ShapeError(f"expected a 1-D vector, got ndim={w.ndim}")
    if w.size == 0:
        raise ShapeError("empty vector")
    return w


def matvec(A, z):
    """Return A @ z with an explicit shape check."""
    A = np.asarray(A, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if A.ndim != 2 or z.ndim != 1 or A.shape[1] != z.shape[0]:
        raise ShapeError(
            f"matvec shape mismatch: A is {A.shape}, z has length {z.shape}"
        )
    return A @ z


def matvec_transposed(A, u):
    """Return A.T @ u without materializing A.T or any Gram matrix."""
    A = np.asarray(A, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    if A.ndim != 2 or u.ndim != 1 or A.shape[0] != u.shape[0]:
        raise ShapeError(
            f"matvec_transposed shape mismatch: A is {A.shape}, u has length {u.shape}"
        )
    return A.T @ u


def augment_with_ones(C):
    """Append a column of ones to C (bias column for the class matrices)."""
    C = as_matrix(C)
    ones = np.ones((C.shape[0], 1), dtype=np.float64)
    return np.ascontiguousarray(np.hstack([C, ones]))
