"""
Circulant matrices over F_q.

M_c has first column c and entry (i, j) = c[(i - j) mod n]. Products and
inverses go through the ring F_q[x]/(x^n - 1): M_c is invertible exactly when
gcd(c(x), x^n - 1) = 1, and the inverse polynomial is the first column of the
inverse matrix. Solves eliminate on the expanded matrix, all right-hand sides
at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from loguru import logger

from twisted_dpd.exceptions import DivisionByZeroError, InvalidParametersError, SingularCirculantError
from twisted_dpd.finite_field import field_params, random_vector, residue_dtype
from twisted_dpd.linalg import rank_mod, solve_mod
from twisted_dpd.polynomials import (
    Polynomial,
    factor_profile_xn_minus_1,
    poly_gcd,
    poly_invert_mod,
    radical_xn_minus_1,
    x_n_minus_1,
)


@lru_cache(maxsize=128)
def shift_index(n: int) -> np.ndarray:
    """idx[i, j] = (i - j) mod n."""
    rows = np.arange(n).reshape(-1, 1)
    cols = np.arange(n).reshape(1, -1)
    idx = (rows - cols) % n
    idx.flags.writeable = False
    return idx


def as_vector(values, q: int, n: int | None = None) -> np.ndarray:
    """Copy `values` into a read-only residue vector of length n."""
    size = len(values) if n is None else n
    vec = np.array([int(v) % q for v in values], dtype=residue_dtype(q, size))
    if n is not None and len(vec) != n:
        raise InvalidParametersError(f"Expected {n} coefficients, got {len(vec)}")
    vec.flags.writeable = False
    return vec


def cyclic_convolve(x: np.ndarray, y: np.ndarray, q: int) -> np.ndarray:
    """out[l] = sum over i + j = l (mod n) of x[i] * y[j]."""
    if len(x) != len(y):
        raise InvalidParametersError(f"Length mismatch: {len(x)} vs {len(y)}")
    return (x[shift_index(len(x))] @ y) % q


def reverse_indices(x: np.ndarray) -> np.ndarray:
    """out[i] = x[-i mod n]."""
    return np.roll(x[::-1], 1)


@dataclass(frozen=True, eq=False)
class Circulant:
    col: np.ndarray
    q: int

    def __post_init__(self):
        object.__setattr__(self, "col", as_vector(self.col, self.q))

    @classmethod
    def identity(cls, n: int, q: int) -> "Circulant":
        col = np.zeros(n, dtype=np.int64)
        col[0] = 1
        return cls(col, q)

    @property
    def n(self) -> int:
        return len(self.col)

    def polynomial(self) -> Polynomial:
        return Polynomial.from_coeffs(self.col.tolist(), self.q)

    def __eq__(self, other):
        if not isinstance(other, Circulant):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.col, other.col)

    __hash__ = None

    def __repr__(self):
        return f"Circulant({self.col.tolist()}, q={self.q})"


def expand(C: Circulant) -> np.ndarray:
    return C.col[shift_index(C.n)].copy()


def circ_matvec(C: Circulant, x) -> np.ndarray:
    vec = as_vector(x, C.q)
    if len(vec) != C.n:
        raise InvalidParametersError(f"Dimension mismatch: matrix is {C.n}x{C.n}, vector has {len(vec)}")
    return cyclic_convolve(C.col, vec, C.q)


def circ_mul(A: Circulant, B: Circulant) -> Circulant:
    if A.q != B.q or A.n != B.n:
        raise InvalidParametersError("Circulants must share n and q")
    return Circulant(circ_matvec(A, B.col), A.q)


def z_vector(b, c, q: int) -> np.ndarray:
    """z_l(b, c) = sum over i + j = l (mod n) of b[i] * c[j], i.e. M_c b."""
    b_vec, c_vec = as_vector(b, q), as_vector(c, q)
    if len(b_vec) != len(c_vec):
        raise InvalidParametersError(f"Length mismatch: {len(b_vec)} vs {len(c_vec)}")
    return cyclic_convolve(c_vec, b_vec, q)


def circ_is_invertible(C: Circulant) -> bool:
    # Coprime to x^n - 1 iff coprime to its radical.
    return poly_gcd(C.polynomial(), radical_xn_minus_1(C.n, C.q)).is_one()


def circ_is_invertible_by_elimination(C: Circulant) -> bool:
    return rank_mod(expand(C), C.q) == C.n


def circ_inverse(C: Circulant) -> Circulant:
    try:
        inverse = poly_invert_mod(C.polynomial(), x_n_minus_1(C.n, C.q))
    except DivisionByZeroError as e:
        raise SingularCirculantError(f"Circulant is singular over F_{C.q}") from e
    return Circulant(inverse.padded(C.n), C.q)


def circ_solve_many(C: Circulant, vectors: Sequence) -> list[np.ndarray]:
    """The unique a with M_c a = w for each w, from one elimination on M_c."""
    cols = [as_vector(w, C.q, C.n) for w in vectors]
    try:
        solutions = solve_mod(expand(C), np.stack(cols, axis=1), C.q)
    except SingularCirculantError as e:
        raise SingularCirculantError(f"Circulant is singular over F_{C.q}") from e
    return [as_vector(solutions[:, k], C.q) for k in range(len(cols))]


def circ_solve(C: Circulant, w) -> np.ndarray:
    """The unique a with M_c a = w."""
    return circ_solve_many(C, [w])[0]


def count_invertible(n: int, q: int) -> int:
    """prod over irreducible factors f_i^a_i of x^n - 1 of q^(d_i a_i) - q^(d_i (a_i - 1))."""
    count = 1
    for d, a in factor_profile_xn_minus_1(n, q).entries:
        count *= q ** (d * a) - q ** (d * (a - 1))
    return count


def prob_invertible(n: int, q: int) -> Fraction:
    return Fraction(count_invertible(n, q), q**n)


def random_reversible_vector(q: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform vector with b[i] = b[n - i]: draws indices 0..n//2 and mirrors."""
    free = random_vector(q, n // 2 + 1, rng)
    vec = np.zeros(n, dtype=residue_dtype(q, n))
    vec[: n // 2 + 1] = free
    for i in range(1, n // 2 + 1):
        vec[n - i] = vec[i]
    return vec


def estimate_prob_invertible(n: int, q: int, trials: int, seed: int, reversible: bool = False) -> Fraction:
    """Monte Carlo invertibility rate; trial i draws from default_rng([seed, i])."""
    field_params(q)
    if trials < 1:
        raise InvalidParametersError(f"trials must be at least 1, got {trials}")

    hits = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        col = random_reversible_vector(q, n, rng) if reversible else random_vector(q, n, rng)
        if circ_is_invertible(Circulant(col, q)):
            hits += 1

    logger.debug("Invertible circulants (n={}, q={}, reversible={}): {}/{}", n, q, reversible, hits, trials)
    return Fraction(hits, trials)
