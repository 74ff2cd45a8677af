"""
The twisted group algebra F_q^alpha D_2n with alpha = alpha_lambda.

An element sum a_i x^i + sum b_i x^i y is held as two dense length-n vectors
(avec, bvec). With alpha_lambda the twisted product has the closed form

    avec[k] = sum_{i+j=k} a_i c_j + lambda * sum_{i-j=k} b_i d_j
    bvec[k] = sum_{i+j=k} a_i d_j +          sum_{i-j=k} b_i c_j

for (a, b) * (c, d), all indices mod n. `alg_mul_oracle` recomputes the same
product term by term from the group law and the cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from twisted_dpd.circulant import as_vector, cyclic_convolve, random_reversible_vector, reverse_indices
from twisted_dpd.config import load_settings
from twisted_dpd.exceptions import (
    InvalidParametersError,
    ParameterMismatchError,
    SizeGuardError,
    SupportError,
)
from twisted_dpd.finite_field import (
    FieldElement,
    FieldParams,
    field_params,
    inv_residue,
    is_square,
    random_vector,
    residue_dtype,
)

Scalar = Union[int, FieldElement]


class AlgebraParams(BaseModel):
    """Platform parameters: F_q, the rotation order n, and the cocycle parameter lambda."""

    field: FieldParams
    n: int = Field(..., ge=1)
    lam: int = Field(..., ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_platform(self) -> "AlgebraParams":
        q = self.field.q
        if (2 * self.n) % q != 0:
            raise ValueError(f"q={q} must divide 2n={2 * self.n}")
        if self.lam >= q:
            raise ValueError(f"lambda={self.lam} must be a residue in [1, {q})")
        if is_square(self.field.element(self.lam)):
            raise ValueError(f"lambda={self.lam} is a square in F_{q}")
        return self

    @classmethod
    def build(cls, n: int, q: int, lam: int) -> "AlgebraParams":
        try:
            return cls(field=field_params(q), n=n, lam=lam)
        except ValueError as e:
            raise InvalidParametersError(f"Invalid platform parameters (n={n}, q={q}, lambda={lam}): {e}") from e

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def lam_element(self) -> FieldElement:
        return self.field.element(self.lam)

    @property
    def lam_inverse(self) -> int:
        return inv_residue(self.lam, self.q)

    def header(self) -> str:
        return f"q={self.q} n={self.n} lambda={self.lam}"


@dataclass(frozen=True, slots=True)
class GroupElement:
    """x^i when refl is False, x^i y when refl is True."""

    i: int
    refl: bool
    n: int

    def __post_init__(self):
        if not 0 <= self.i < self.n:
            raise InvalidParametersError(f"Rotation exponent {self.i} outside [0, {self.n})")

    def __repr__(self):
        return f"x^{self.i}{'y' if self.refl else ''}"


def all_group_elements(n: int) -> Iterator[GroupElement]:
    for refl, i in product((False, True), range(n)):
        yield GroupElement(i, refl, n)


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """Product in D_2n using y x = x^-1 y."""
    if g.n != h.n:
        raise ParameterMismatchError(f"Cannot multiply elements of D_{2 * g.n} and D_{2 * h.n}")
    i = g.i - h.i if g.refl else g.i + h.i
    return GroupElement(i % g.n, g.refl != h.refl, g.n)


def group_inverse(g: GroupElement) -> GroupElement:
    if g.refl:
        return g
    return GroupElement((-g.i) % g.n, False, g.n)


def cocycle(g: GroupElement, h: GroupElement, params: AlgebraParams) -> FieldElement:
    """alpha_lambda: lambda on a pair of reflections, 1 otherwise."""
    if g.refl and h.refl:
        return params.lam_element
    return params.field.element(1)


CocycleFn = Callable[[GroupElement, GroupElement], int]


def verify_cocycle(
    params: AlgebraParams,
    cocycle_fn: Optional[CocycleFn] = None,
    max_order: Optional[int] = None,
) -> bool:
    """
    Exhaustively check that a map D_2n x D_2n -> F_q* is a normalized 2-cocycle
    and satisfies both commutativity conditions for the protocol.

    Args:
        params: Platform parameters.
        cocycle_fn: Map to check, returning residues; defaults to alpha_lambda.
        max_order: Largest 2n to enumerate; defaults to settings.cocycle_max_order.

    Returns:
        True if every identity holds.
    """
    n, q = params.n, params.q
    limit = max_order if max_order is not None else load_settings().cocycle_max_order
    if 2 * n > limit:
        raise SizeGuardError(f"2n={2 * n} exceeds the exhaustive-check limit {limit}")

    fn: CocycleFn = cocycle_fn or (lambda g, h: cocycle(g, h, params).value)
    group = list(all_group_elements(n))
    table = {(g, h): fn(g, h) % q for g in group for h in group}

    if any(value == 0 for value in table.values()):
        logger.debug("Cocycle takes the value 0")
        return False

    identity = GroupElement(0, False, n)
    if table[identity, identity] != 1:
        logger.debug("Cocycle is not normalized: alpha(1, 1) = {}", table[identity, identity])
        return False

    for g, h, k in product(group, repeat=3):
        lhs = table[g, group_mul(h, k)] * table[h, k]
        rhs = table[group_mul(g, h), k] * table[g, h]
        if (lhs - rhs) % q:
            logger.debug("Cocycle identity fails at g={}, h={}, k={}", g, h, k)
            return False

    def rot(i: int) -> GroupElement:
        return GroupElement(i % n, False, n)

    def ref(i: int) -> GroupElement:
        return GroupElement(i % n, True, n)

    for i, j in product(range(n), repeat=2):
        # Rotations commute: alpha(x^i, x^(j-i)) = alpha(x^(j-i), x^i).
        if table[rot(i), rot(j - i)] != table[rot(j - i), rot(i)]:
            logger.debug("Rotation commutativity condition fails at i={}, j={}", i, j)
            return False
        # Reversible elements satisfy a b^ = b a^.
        lhs = table[ref(i - j), ref(i - j)] * table[ref(i), ref(i - j)]
        rhs = table[ref(-i), ref(-i)] * table[ref(j - i), ref(-i)]
        if (lhs - rhs) % q:
            logger.debug("Adjunct symmetry condition fails at i={}, j={}", i, j)
            return False

    return True


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """sum avec[i] x^i + sum bvec[i] x^i y."""

    params: AlgebraParams
    avec: np.ndarray
    bvec: np.ndarray

    def __post_init__(self):
        n, q = self.params.n, self.params.q
        object.__setattr__(self, "avec", as_vector(self.avec, q, n))
        object.__setattr__(self, "bvec", as_vector(self.bvec, q, n))

    @classmethod
    def from_tuple(cls, params: AlgebraParams, values: Sequence[int]) -> "AlgebraElement":
        n = params.n
        if len(values) != 2 * n:
            raise InvalidParametersError(f"Expected a {2 * n}-tuple, got {len(values)} values")
        return cls(params, values[:n], values[n:])

    @classmethod
    def zero(cls, params: AlgebraParams) -> "AlgebraElement":
        zeros = np.zeros(params.n, dtype=np.int64)
        return cls(params, zeros, zeros)

    @classmethod
    def basis(cls, params: AlgebraParams, g: GroupElement) -> "AlgebraElement":
        if g.n != params.n:
            raise ParameterMismatchError(f"{g} is not an element of D_{2 * params.n}")
        avec = np.zeros(params.n, dtype=np.int64)
        bvec = np.zeros(params.n, dtype=np.int64)
        (bvec if g.refl else avec)[g.i] = 1
        return cls(params, avec, bvec)

    @classmethod
    def one(cls, params: AlgebraParams) -> "AlgebraElement":
        return cls.basis(params, GroupElement(0, False, params.n))

    @classmethod
    def y(cls, params: AlgebraParams) -> "AlgebraElement":
        return cls.basis(params, GroupElement(0, True, params.n))

    @classmethod
    def rotation(cls, params: AlgebraParams, i: int) -> "AlgebraElement":
        return cls.basis(params, GroupElement(i % params.n, False, params.n))

    @classmethod
    def random(cls, params: AlgebraParams, rng: np.random.Generator) -> "AlgebraElement":
        return cls(params, random_vector(params.q, params.n, rng), random_vector(params.q, params.n, rng))

    def coefficient(self, g: GroupElement) -> int:
        return int((self.bvec if g.refl else self.avec)[g.i])

    def terms(self) -> Iterator[tuple[GroupElement, int]]:
        for g in all_group_elements(self.params.n):
            value = self.coefficient(g)
            if value:
                yield g, value

    def to_tuple(self) -> list[int]:
        return [int(v) for v in self.avec] + [int(v) for v in self.bvec]

    @property
    def is_zero(self) -> bool:
        return not self.avec.any() and not self.bvec.any()

    @property
    def in_rotation_part(self) -> bool:
        return not self.bvec.any()

    @property
    def in_reflection_part(self) -> bool:
        return not self.avec.any()

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.params == other.params
            and np.array_equal(self.avec, other.avec)
            and np.array_equal(self.bvec, other.bvec)
        )

    __hash__ = None

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return alg_add(self, other)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return alg_add(self, scalar_mul(-1, other))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return alg_mul(self, other)

    def __repr__(self):
        return f"AlgebraElement({self.params.header()}, {self.to_tuple()})"


def _check_params(*elements: AlgebraElement) -> AlgebraParams:
    params = elements[0].params
    for element in elements[1:]:
        if element.params is not params and element.params != params:
            raise ParameterMismatchError(f"Elements over {params.header()} and {element.params.header()}")
    return params


def _scalar_value(scalar: Scalar, q: int) -> int:
    if isinstance(scalar, FieldElement):
        if scalar.q != q:
            raise ParameterMismatchError(f"Scalar from F_{scalar.q} applied over F_{q}")
        return scalar.value
    return int(scalar) % q


def alg_add(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    params = _check_params(u, v)
    q = params.q
    return AlgebraElement(params, (u.avec + v.avec) % q, (u.bvec + v.bvec) % q)


def scalar_mul(scalar: Scalar, u: AlgebraElement) -> AlgebraElement:
    q = u.params.q
    value = _scalar_value(scalar, q)
    return AlgebraElement(u.params, (u.avec * value) % q, (u.bvec * value) % q)


def _correlate(x: np.ndarray, y: np.ndarray, q: int) -> np.ndarray:
    """out[k] = sum over i - j = k (mod n) of x[i] * y[j]."""
    return cyclic_convolve(x, reverse_indices(y), q)


def alg_mul(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    params = _check_params(u, v)
    q = params.q
    a, b, c, d = u.avec, u.bvec, v.avec, v.bvec
    avec = (cyclic_convolve(a, c, q) + params.lam * _correlate(b, d, q)) % q
    bvec = (cyclic_convolve(a, d, q) + _correlate(b, c, q)) % q
    return AlgebraElement(params, avec, bvec)


def alg_mul_oracle(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """sum over all basis pairs (g, h) of u_g v_h alpha(g, h) gh, one term at a time."""
    params = _check_params(u, v)
    n, q = params.n, params.q
    avec = [0] * n
    bvec = [0] * n
    for g in all_group_elements(n):
        for h in all_group_elements(n):
            term = u.coefficient(g) * v.coefficient(h) * cocycle(g, h, params).value
            gh = group_mul(g, h)
            target = bvec if gh.refl else avec
            target[gh.i] = (target[gh.i] + term) % q
    return AlgebraElement(params, avec, bvec)


def adjunct(u: AlgebraElement) -> AlgebraElement:
    """sum u_g alpha(g, g^-1) g^-1: rotations reversed, reflections scaled by lambda."""
    params = u.params
    return AlgebraElement(params, reverse_indices(u.avec), (u.bvec * params.lam) % params.q)


def adjunct_oracle(u: AlgebraElement) -> AlgebraElement:
    """Adjunct applied basis element by basis element."""
    params = u.params
    result = AlgebraElement.zero(params)
    for g, coefficient in u.terms():
        g_inv = group_inverse(g)
        weight = coefficient * cocycle(g, g_inv, params).value
        result = alg_add(result, scalar_mul(weight, AlgebraElement.basis(params, g_inv)))
    return result


def psi(u: AlgebraElement) -> AlgebraElement:
    """sum b_i x^i y -> sum b_i x^i."""
    if not u.in_reflection_part:
        raise SupportError("psi is defined on the C_n y part only")
    return AlgebraElement(u.params, u.bvec, np.zeros(u.params.n, dtype=np.int64))


def psi_inv(u: AlgebraElement) -> AlgebraElement:
    """sum a_i x^i -> sum a_i x^i y."""
    if not u.in_rotation_part:
        raise SupportError("psi^-1 is defined on the C_n part only")
    return AlgebraElement(u.params, np.zeros(u.params.n, dtype=np.int64), u.avec)


def is_reversible(u: AlgebraElement) -> bool:
    """Membership in Gamma: no rotation part, b_0 free, b_i = b_(n-i) for i >= 1."""
    return u.in_reflection_part and np.array_equal(u.bvec, reverse_indices(u.bvec))


def sample_reversible(params: AlgebraParams, rng: np.random.Generator) -> AlgebraElement:
    """Uniform over Gamma, zero included."""
    zeros = np.zeros(params.n, dtype=residue_dtype(params.q, params.n))
    return AlgebraElement(params, zeros, random_reversible_vector(params.q, params.n, rng))


def _require_star_operand(p: AlgebraElement) -> AlgebraElement:
    if not p.in_rotation_part:
        raise SupportError("star operands must lie in psi(Gamma)")
    t = psi_inv(p)
    if not is_reversible(t):
        raise SupportError("star operands must lie in psi(Gamma)")
    return t


def star(pt: AlgebraElement, pt_prime: AlgebraElement) -> AlgebraElement:
    """psi(t) * psi(t') := t t'^ on psi(Gamma)."""
    _check_params(pt, pt_prime)
    t = _require_star_operand(pt)
    t_prime = _require_star_operand(pt_prime)
    return alg_mul(t, adjunct(t_prime))


def star_identity(params: AlgebraParams) -> AlgebraElement:
    """lambda^-2 * 1, since star(p, p') = lambda^2 p p' inside F_q C_n."""
    return scalar_mul(params.lam_inverse**2, AlgebraElement.one(params))


def act(s: AlgebraElement, t: AlgebraElement, h: AlgebraElement) -> AlgebraElement:
    """(s, psi(t)) . h = s h t."""
    _check_params(s, t, h)
    if not s.in_rotation_part:
        raise SupportError("s must lie in F_q^alpha C_n")
    if not is_reversible(t):
        raise SupportError("t must lie in the reversible subspace")
    return alg_mul(alg_mul(s, h), t)


def compose_action(
    s: AlgebraElement, t: AlgebraElement, s_prime: AlgebraElement, t_prime: AlgebraElement
) -> tuple[AlgebraElement, AlgebraElement]:
    """
    Left and right multipliers of two successive actions.

    act(s, t, act(s', t', h)) = (s s') h (t' t), and for reversible t, t'
    the right factor t' t lies in F_q^alpha C_n and equals
    lambda^-1 * star(psi(t), psi(t')).
    """
    params = _check_params(s, t, s_prime, t_prime)
    left = alg_mul(s, s_prime)
    right = scalar_mul(params.lam_inverse, star(psi(t), psi(t_prime)))
    return left, right


def sum_elements(params: AlgebraParams, elements: Iterable[AlgebraElement]) -> AlgebraElement:
    total = AlgebraElement.zero(params)
    for element in elements:
        total = alg_add(total, element)
    return total
