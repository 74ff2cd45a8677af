"""
Univariate polynomials over F_q.

Coefficients are stored lowest degree first. The arithmetic itself is
delegated to sympy's galoistools, which works highest degree first over ZZ
with an explicit modulus, so every call converts at the boundary.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from loguru import logger
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_ddf_zassenhaus,
    gf_gcd,
    gf_gcdex,
    gf_mul,
    gf_rem,
    gf_sub,
)

from twisted_dpd.exceptions import DivisionByZeroError, InvalidParametersError, ModulusMismatchError
from twisted_dpd.finite_field import field_params


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise InvalidParametersError("Polynomial coefficients must not have trailing zeros")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], q: int) -> "Polynomial":
        """Reduce mod q and strip trailing zeros."""
        reduced = [int(c) % q for c in coeffs]
        while reduced and reduced[-1] == 0:
            reduced.pop()
        return cls(tuple(reduced), q)

    @classmethod
    def zero(cls, q: int) -> "Polynomial":
        return cls((), q)

    @classmethod
    def one(cls, q: int) -> "Polynomial":
        return cls((1,), q)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def padded(self, n: int) -> list[int]:
        if len(self.coeffs) > n:
            raise InvalidParametersError(f"Degree {self.degree} does not fit in {n} coefficients")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)}, q={self.q})"


def _to_gf(f: Polynomial) -> list:
    return [ZZ(c) for c in reversed(f.coeffs)]


def _from_gf(coeffs: Sequence, q: int) -> Polynomial:
    return Polynomial.from_coeffs((int(c) for c in reversed(coeffs)), q)


def _check_modulus(f: Polynomial, g: Polynomial) -> int:
    if f.q != g.q:
        raise ModulusMismatchError(f"Cannot combine polynomials over F_{f.q} and F_{g.q}")
    return f.q


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    q = _check_modulus(f, g)
    return _from_gf(gf_add(_to_gf(f), _to_gf(g), q, ZZ), q)


def poly_sub(f: Polynomial, g: Polynomial) -> Polynomial:
    q = _check_modulus(f, g)
    return _from_gf(gf_sub(_to_gf(f), _to_gf(g), q, ZZ), q)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    q = _check_modulus(f, g)
    return _from_gf(gf_mul(_to_gf(f), _to_gf(g), q, ZZ), q)


def poly_rem(f: Polynomial, g: Polynomial) -> Polynomial:
    q = _check_modulus(f, g)
    if g.is_zero:
        raise DivisionByZeroError("Polynomial remainder by the zero polynomial")
    return _from_gf(gf_rem(_to_gf(f), _to_gf(g), q, ZZ), q)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd by Euclid's algorithm."""
    q = _check_modulus(f, g)
    if f.is_zero and g.is_zero:
        raise DivisionByZeroError("gcd(0, 0) is undefined")
    return _from_gf(gf_gcd(_to_gf(f), _to_gf(g), q, ZZ), q)


def poly_invert_mod(f: Polynomial, modulus: Polynomial) -> Polynomial:
    """Inverse of f in F_q[x]/(modulus) via the extended Euclidean algorithm."""
    q = _check_modulus(f, modulus)
    if f.is_zero:
        raise DivisionByZeroError("The zero polynomial has no inverse")
    s, _, h = gf_gcdex(_to_gf(f), _to_gf(modulus), q, ZZ)
    if _from_gf(h, q) != Polynomial.one(q):
        raise DivisionByZeroError(f"{f} is not a unit modulo {modulus}")
    return poly_rem(_from_gf(s, q), modulus)


def x_n_minus_1(n: int, q: int) -> Polynomial:
    if n < 1:
        raise InvalidParametersError(f"n must be positive, got {n}")
    return Polynomial.from_coeffs([q - 1] + [0] * (n - 1) + [1], q)


def split_characteristic(n: int, q: int) -> tuple[int, int]:
    """Write n = q^k * core with q not dividing core; returns (core, q^k)."""
    if n < 1:
        raise InvalidParametersError(f"n must be positive, got {n}")
    core, multiplicity = n, 1
    while core % q == 0:
        core //= q
        multiplicity *= q
    return core, multiplicity


def radical_xn_minus_1(n: int, q: int) -> Polynomial:
    """x^core - 1: square-free, with the same irreducible factors as x^n - 1."""
    core, _ = split_characteristic(n, q)
    return x_n_minus_1(core, q)


@dataclass(frozen=True)
class FactorProfile:
    """Degrees and multiplicities of the irreducible factors of x^n - 1 over F_q.

    `entries` holds one (degree, multiplicity) pair per irreducible factor, so
    a degree appears as many times as there are factors of that degree.
    """

    n: int
    q: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        total = sum(d * a for d, a in self.entries)
        if total != self.n:
            raise InvalidParametersError(f"Factor degrees sum to {total}, expected {self.n}")

    @property
    def factor_count(self) -> int:
        return len(self.entries)

    def counts(self) -> Counter:
        return Counter(self.entries)

    def describe(self) -> str:
        return " ".join(f"(d={d}, a={a})x{k}" for (d, a), k in sorted(self.counts().items()))


def factor_profile_xn_minus_1(n: int, q: int) -> FactorProfile:
    """Distinct-degree factorization of x^n - 1 = (x^n' - 1)^(q^k), gcd(n', q) = 1."""
    field_params(q)
    core, multiplicity = split_characteristic(n, q)
    square_free = x_n_minus_1(core, q)
    entries: list[tuple[int, int]] = []
    for product, degree in gf_ddf_zassenhaus(_to_gf(square_free), q, ZZ):
        factor_count = (len(product) - 1) // degree
        entries.extend([(degree, multiplicity)] * factor_count)

    logger.debug("x^{}-1 over F_{}: n'={}, multiplicity={}, entries={}", n, q, core, multiplicity, entries)
    return FactorProfile(n=n, q=q, entries=tuple(sorted(entries)))
