"""Row reduction over a GaloisField, single-matrix and batched."""

from __future__ import annotations

import numpy as np

from .gf import GaloisField


def rref(field: GaloisField, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    nrows, ncols = M.shape
    row = 0
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(M[row:, col])
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            M[[row, piv]] = M[[piv, row]]
        M[row] = field.mul(M[row], field.inv(M[row, col]))
        factors = M[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            M[hit] = field.sub(M[hit], field.mul(factors[hit, None], M[row][None, :]))
        pivots.append(col)
        row += 1
    return M[:row], pivots


def rank(field: GaloisField, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return batch_rank(field, M[None])[0].item()


def batch_rank(field: GaloisField, Ms) -> np.ndarray:
    """Ranks of a stack of matrices with shape (B, r, c)."""
    M = np.array(Ms, dtype=np.int64, copy=True)
    B, r, c = M.shape
    rk = np.zeros(B, dtype=np.int64)
    if r == 0 or c == 0:
        return rk
    rows = np.arange(r)
    for col in range(c):
        cand = (M[:, :, col] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        piv = cand[b].argmax(axis=1)
        top = rk[b]
        prow = M[b, piv].copy()
        M[b, piv] = M[b, top]
        prow = field.mul(prow, field.inv(prow[:, col])[:, None])
        M[b, top] = prow
        f = np.where(rows[None, :] > top[:, None], M[b, :, col], 0)
        M[b] = field.sub(M[b], field.mul(f[:, :, None], prow[:, None, :]))
        rk[b] += 1
        if (rk == r).all():
            break
    return rk
