"""
Dense Gauss-Jordan elimination over GF(q).

Circulant solves on the attack path go through `solve_mod`, several right-hand
sides per elimination; `rank_mod` is the independent check on the gcd test in
`circulant`.
"""

from typing import List, Tuple

import numpy as np

from twisted_dpd.exceptions import SingularCirculantError
from twisted_dpd.finite_field import inv_residue


def _work_dtype(q: int):
    # Row updates multiply two residues.
    return np.int64 if q < 2**31 else object


def rref_mod(aug: np.ndarray, q: int) -> Tuple[np.ndarray, List[int]]:
    """RREF over GF(q). Returns (reduced matrix, pivot columns)."""
    A = np.array(aug, dtype=_work_dtype(q)) % q
    m, n = A.shape
    piv_cols: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nonzero = np.flatnonzero(A[r:, c])
        if nonzero.size == 0:
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * inv_residue(int(A[r, c]), q)) % q

        factors = A[:, c].copy()
        factors[r] = 0
        A = (A - np.outer(factors, A[r])) % q
        piv_cols.append(c)
        r += 1
    return A, piv_cols


def rank_mod(A: np.ndarray, q: int) -> int:
    _, piv_cols = rref_mod(A, q)
    return len(piv_cols)


def solve_mod(A: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """
    Unique X with A X = B for square A.

    `b` is a vector or an (n, k) matrix of right-hand sides; the result has the
    same shape. Raises SingularCirculantError when A is singular mod q.
    """
    n = A.shape[0]
    rhs = np.asarray(b)
    R, piv_cols = rref_mod(np.concatenate([np.asarray(A), rhs.reshape(n, -1)], axis=1), q)
    if piv_cols[:n] != list(range(n)):
        raise SingularCirculantError(f"Matrix is singular over GF({q})")
    return R[:, n:].reshape(rhs.shape)
