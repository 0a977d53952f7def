"""Gaussian elimination over Z_p."""

from __future__ import annotations

import numpy as np


def rref_mod_p(A: np.ndarray, p: int, col_order=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``A`` over Z_p and the pivot columns.

    ``col_order`` permutes the order in which columns are tried as pivots;
    the row space (hence the kernel) does not depend on it.
    """
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    order = list(range(cols)) if col_order is None else list(col_order)
    pivots = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        others = np.nonzero(M[:, c])[0]
        others = others[others != r]
        if len(others):
            M[others] = (M[others] - np.outer(M[others, c], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullspace_mod_p(A: np.ndarray, p: int, col_order=None) -> np.ndarray:
    """Basis of ``{v : A v = 0}`` over Z_p as the rows of a ``k x n`` matrix."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref_mod_p(A, p, col_order)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-R[row, fc]) % p
    return basis


def rank_mod_p(A: np.ndarray, p: int) -> int:
    return len(rref_mod_p(A, p)[1])


def solve_mod_p(A: np.ndarray, b: np.ndarray, p: int):
    """One solution ``x`` of ``A x = b`` over Z_p, or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    n = A.shape[1]
    R, pivots = rref_mod_p(np.hstack([A, b]), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = R[row, n]
    return x
