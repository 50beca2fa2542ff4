"""Dense linear algebra over a binary extension field.

Matrices are 2-D numpy arrays of field symbols.  Row operations are
vectorised: each pivot step updates every other row with one table lookup.
Characteristic 2 means subtraction is XOR, the same as addition.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularMatrixError
from .gf import Field


def as_matrix(field: Field, rows) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim != 2:
        m = m.reshape(len(m), -1)
    return m.astype(field.dtype)


def row_reduce(field: Field, matrix, ncols: int | None = None):
    """Reduced row echelon form.

    Pivots are searched only in the first ``ncols`` columns (default: all),
    taking the first nonzero entry at or below the current pivot row.  Row
    operations still span the full width, so augmented columns follow along.

    Returns ``(R, pivot_cols, pivot_rows)`` where ``pivot_rows[i]`` is the
    original row index that supplied pivot ``i``.
    """
    R = np.array(matrix, dtype=field.dtype, copy=True)
    nrows, width = R.shape
    if ncols is None:
        ncols = width
    order = list(range(nrows))
    pivot_cols: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, col])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
            order[r], order[p] = order[p], order[r]
        pivot = int(R[r, col])
        if pivot != 1:
            R[r] = field.scale(field.inv(pivot), R[r])
        factors = R[:, col].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            R[hit] ^= field.mul_array(factors[hit, None], R[r][None, :])
        pivot_cols.append(col)
        r += 1
    return R, pivot_cols, order[: len(pivot_cols)]


def rank(field: Field, matrix) -> int:
    m = np.asarray(matrix)
    if m.size == 0:
        return 0
    return len(row_reduce(field, m)[1])


def inverse(field: Field, matrix) -> np.ndarray:
    A = np.asarray(matrix, dtype=field.dtype)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"inverse needs a square matrix, got {A.shape}")
    aug = np.concatenate([A, np.eye(n, dtype=field.dtype)], axis=1)
    R, pivots, _ = row_reduce(field, aug, ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix of size {n} has rank {len(pivots)}")
    return R[:, n:]


def matmul(field: Field, A, B) -> np.ndarray:
    """Matrix product ``A @ B`` over the field."""
    A = np.asarray(A, dtype=field.dtype)
    B = np.asarray(B, dtype=field.dtype)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=field.dtype)
    for j in range(A.shape[1]):
        col = A[:, j]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        out[nz] ^= field.mul_array(col[nz, None], B[j][None, :])
    return out


def solve(field: Field, A, B) -> np.ndarray:
    """Solve ``A X = B`` for a square nonsingular ``A``."""
    A = np.asarray(A, dtype=field.dtype)
    B = np.asarray(B, dtype=field.dtype)
    vector = B.ndim == 1
    if vector:
        B = B[:, None]
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"solve needs a square matrix, got {A.shape}")
    R, pivots, _ = row_reduce(field, np.concatenate([A, B], axis=1), ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix of size {n} has rank {len(pivots)}")
    X = R[:, n:]
    return X[:, 0] if vector else X


def left_inverse(field: Field, A) -> tuple[list[int], np.ndarray]:
    """For a tall ``A`` of full column rank, pick independent rows and invert them.

    Returns ``(rows, M)`` with ``M @ A[rows] == I``.  Any solution ``x`` of a
    consistent system ``A x = b`` is then ``M @ b[rows]``.
    """
    A = np.asarray(A, dtype=field.dtype)
    nrows, ncols = A.shape
    # Row-reducing A^T picks pivot columns of A^T, i.e. independent rows of A.
    _, pivots, _ = row_reduce(field, A.T)
    if len(pivots) < ncols:
        raise SingularMatrixError(
            f"{nrows}x{ncols} matrix has column rank {len(pivots)}"
        )
    return pivots, inverse(field, A[pivots])
