"""
Arithmetic in the prime field F_q and quadratic-residue classification.

Only prime q is supported; FieldParams is the place to grow q = p^m later.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import isprime

from twisted_dpd.exceptions import DivisionByZeroError, InvalidParametersError, ModulusMismatchError


class FieldParams(BaseModel):
    """Public description of F_q."""

    q: int = Field(..., gt=2, description="Odd prime modulus")

    model_config = ConfigDict(frozen=True)

    @field_validator("q")
    @classmethod
    def validate_prime(cls, v: int) -> int:
        if not isprime(v):
            raise ValueError(f"q={v} is not prime")
        return v

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value % self.q, self.q)


def field_params(q: int) -> FieldParams:
    """Build FieldParams, reporting a bad modulus as InvalidParametersError."""
    try:
        return FieldParams(q=q)
    except ValueError as e:
        raise InvalidParametersError(f"Invalid field modulus {q}: {e}") from e


@dataclass(frozen=True, slots=True)
class FieldElement:
    value: int
    q: int

    def __post_init__(self):
        if not 0 <= self.value < self.q:
            raise InvalidParametersError(f"{self.value} not in field range [0, {self.q})")

    def __repr__(self):
        return f"F_{self.q}({self.value})"

    def __int__(self):
        return self.value

    def __add__(self, other: FieldElement) -> FieldElement:
        return add(self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return sub(self, other)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return mul(self, other)

    def __neg__(self) -> FieldElement:
        return neg(self)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return mul(self, inv(other))

    def __pow__(self, e: int) -> FieldElement:
        return power(self, e)


def _check_modulus(x: FieldElement, y: FieldElement) -> int:
    if x.q != y.q:
        raise ModulusMismatchError(f"Cannot combine elements of F_{x.q} and F_{y.q}")
    return x.q


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    q = _check_modulus(x, y)
    return FieldElement((x.value + y.value) % q, q)


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    q = _check_modulus(x, y)
    return FieldElement((x.value - y.value) % q, q)


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    q = _check_modulus(x, y)
    return FieldElement((x.value * y.value) % q, q)


def neg(x: FieldElement) -> FieldElement:
    return FieldElement((-x.value) % x.q, x.q)


def power(x: FieldElement, e: int) -> FieldElement:
    """x**e by square-and-multiply; 0**0 is 1."""
    if e < 0:
        raise ValueError("Exponent must be nonnegative")
    return FieldElement(pow(x.value, e, x.q), x.q)


def inv_residue(value: int, q: int) -> int:
    """Inverse of a residue as pow(x, q-2), the form used on raw vector entries."""
    value %= q
    if value == 0:
        raise DivisionByZeroError(f"0 has no inverse in F_{q}")
    return pow(value, q - 2, q)


def inv(x: FieldElement) -> FieldElement:
    return FieldElement(inv_residue(x.value, x.q), x.q)


def is_square(lam: FieldElement) -> bool:
    """Euler's criterion: lam^((q-1)/2) == 1."""
    if lam.value == 0:
        raise DivisionByZeroError("Quadratic character of 0 is undefined")
    return pow(lam.value, (lam.q - 1) // 2, lam.q) == 1


def sample_nonsquare(field: FieldParams, rng: np.random.Generator) -> FieldElement:
    """Uniform non-square; half of F_q* qualifies so rejection ends quickly."""
    while True:
        candidate = field.element(int(rng.integers(1, field.q)))
        if not is_square(candidate):
            return candidate


def residue_dtype(q: int, n: int):
    """int64 when a length-n dot product of residues cannot overflow, else object."""
    if n * (q - 1) ** 2 < 2**62:
        return np.int64
    return object


def random_vector(q: int, n: int, rng: np.random.Generator) -> np.ndarray:
    dtype = residue_dtype(q, n)
    if dtype is np.int64:
        return rng.integers(0, q, size=n, dtype=np.int64)
    return np.array([int(rng.integers(0, q)) for _ in range(n)], dtype=object)
