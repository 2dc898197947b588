"""Small dense linear algebra.

Matrices and vectors are plain float64 ``numpy`` arrays; :func:`as_matrix` and
:func:`as_vector` are the validating constructors used at package boundaries.
Problem sizes here are tiny (a few dozen rows), so the factorizations are
written out directly with fixed pivot thresholds instead of going through
LAPACK, which would hide the singularity decision behind its own tolerances.
"""
from __future__ import annotations

import numpy as np

from .errors import NotPositiveDefinite, SingularMatrix

SINGULAR_PIVOT_RTOL = 1e-12
SPD_PIVOT_RTOL = 1e-12
SYMMETRY_RTOL = 1e-10


def as_matrix(data, rows: int | None = None, cols: int | None = None, name: str = "matrix") -> np.ndarray:
    """Return ``data`` as a finite 2-D float64 array, checking the shape if given."""
    M = np.array(data, dtype=float, copy=True)
    if M.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {M.shape}")
    if rows is not None and M.shape[0] != rows:
        raise ValueError(f"{name} must have {rows} rows, got {M.shape[0]}")
    if cols is not None and M.shape[1] != cols:
        raise ValueError(f"{name} must have {cols} columns, got {M.shape[1]}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    M.setflags(write=False)
    return M


def as_vector(data, size: int | None = None, name: str = "vector") -> np.ndarray:
    v = np.atleast_1d(np.array(data, dtype=float, copy=True))
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {v.shape}")
    if size is not None and v.shape[0] != size:
        raise ValueError(f"{name} must have length {size}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    v.setflags(write=False)
    return v


def solve_linear(M, rhs) -> np.ndarray:
    """Solve ``M x = rhs`` by LU with partial pivoting.

    Raises
    ------
    SingularMatrix
        If some column has no remaining pivot larger than ``1e-12`` times the
        largest magnitude of that column in the original matrix.
    """
    A = np.array(M, dtype=float)
    b = np.array(rhs, dtype=float).reshape(-1)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError(f"solve_linear needs a square matrix, got shape {A.shape}")
    if b.shape[0] != n:
        raise ValueError(f"rhs has length {b.shape[0]}, expected {n}")
    col_scale = np.abs(A).max(axis=0) if n else np.zeros(0)

    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if abs(A[p, k]) <= SINGULAR_PIVOT_RTOL * col_scale[k]:
            raise SingularMatrix(f"no usable pivot in column {k}")
        if p != k:
            A[[k, p]] = A[[p, k]]
            b[[k, p]] = b[[p, k]]
        factors = A[k + 1:, k] / A[k, k]
        A[k + 1:, k:] -= np.outer(factors, A[k, k:])
        b[k + 1:] -= factors * b[k]

    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - A[k, k + 1:] @ x[k + 1:]) / A[k, k]
    return x


def cholesky_spd(M) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == M`` for symmetric positive definite ``M``."""
    A = np.asarray(M, dtype=float)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError(f"cholesky_spd needs a square matrix, got shape {A.shape}")
    scale = np.abs(A).max() if n else 0.0
    if np.abs(A - A.T).max(initial=0.0) > SYMMETRY_RTOL * max(scale, 1.0):
        raise ValueError("matrix is not symmetric")
    trace_scale = abs(np.trace(A)) / n if n else 0.0

    L = np.zeros_like(A)
    for j in range(n):
        d = A[j, j] - L[j, :j] @ L[j, :j]
        if d <= SPD_PIVOT_RTOL * trace_scale or d <= 0.0:
            raise NotPositiveDefinite(f"non-positive pivot {d:.3g} at index {j}")
        L[j, j] = np.sqrt(d)
        L[j + 1:, j] = (A[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


def cholesky_solve(L, rhs) -> np.ndarray:
    """Solve ``(L L^T) x = rhs`` given the Cholesky factor ``L``; ``rhs`` may be 1-D or 2-D."""
    b = np.array(rhs, dtype=float)
    n = L.shape[0]
    y = np.zeros_like(b)
    for i in range(n):
        y[i] = (b[i] - L[i, :i] @ y[:i]) / L[i, i]
    x = np.zeros_like(b)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - L[i + 1:, i] @ x[i + 1:]) / L[i, i]
    return x
