"""
Two-party key exchange over F_q^alpha D_2n.

Each party holds a secret pair (s, t) with s in F_q^alpha C_n and t reversible,
publishes pk = s h t, and derives K = s pk_peer t^. Both sides arrive at
s_A s_B h t_B t_A^ = s_B s_A h t_A t_B^.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from loguru import logger

from twisted_dpd.exceptions import InvalidParametersError, ParameterMismatchError, SupportError
from twisted_dpd.finite_field import field_params, random_vector, sample_nonsquare
from twisted_dpd.twisted_algebra import (
    AlgebraElement,
    AlgebraParams,
    act,
    adjunct,
    alg_mul,
    is_reversible,
    sample_reversible,
)

Seed = Union[int, Sequence[int], np.random.Generator]


@dataclass(frozen=True)
class PublicParams:
    algebra: AlgebraParams
    h: AlgebraElement

    def __post_init__(self):
        if self.h.params != self.algebra:
            raise ParameterMismatchError(f"h is over {self.h.params.header()}, expected {self.algebra.header()}")
        if not self.h.avec.any() or not self.h.bvec.any():
            raise InvalidParametersError("Both halves of the public element h must be nonzero")

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def q(self) -> int:
        return self.algebra.q

    @property
    def lam(self) -> int:
        return self.algebra.lam


@dataclass(frozen=True)
class SecretKey:
    """Secret pair (s, t): s in F_q^alpha C_n, t in the reversible subspace."""

    s: AlgebraElement
    t: AlgebraElement

    def __post_init__(self):
        if self.s.params != self.t.params:
            raise ParameterMismatchError("s and t are over different platforms")
        if not self.s.in_rotation_part:
            raise SupportError("s must lie in F_q^alpha C_n")
        if not is_reversible(self.t):
            raise SupportError("t must lie in the reversible subspace")

    @property
    def params(self) -> AlgebraParams:
        return self.s.params

    def __eq__(self, other):
        if not isinstance(other, SecretKey):
            return NotImplemented
        return self.s == other.s and self.t == other.t

    __hash__ = None


@dataclass(frozen=True)
class PublicKey:
    pk: AlgebraElement


@dataclass(frozen=True)
class SharedKey:
    k: AlgebraElement


def _draw_nonzero(q: int, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        vec = random_vector(q, n, rng)
        if vec.any():
            return vec


def gen_params(
    n: int,
    q: int,
    seed: Seed,
    *,
    lam: Optional[int] = None,
    h: Optional[Union[AlgebraElement, Sequence[int]]] = None,
) -> PublicParams:
    """
    Generate public parameters for the exchange.

    Args:
        n: Rotation order, at least 2.
        q: Odd prime dividing 2n.
        seed: Seed or generator; equal seeds give equal parameters.
        lam: Force the cocycle parameter instead of sampling a non-square.
        h: Force the public element (an AlgebraElement or a 2n-tuple).

    Returns:
        PublicParams with lambda a non-square and both halves of h nonzero.
    """
    field = field_params(q)
    if n < 2:
        raise InvalidParametersError(f"n must be at least 2, got {n}")
    if (2 * n) % q != 0:
        raise InvalidParametersError(f"q={q} must divide 2n={2 * n}")

    rng = np.random.default_rng(seed)
    if lam is None:
        lam = sample_nonsquare(field, rng).value
    algebra = AlgebraParams.build(n, q, lam)

    if h is None:
        h_element = AlgebraElement(algebra, _draw_nonzero(q, n, rng), _draw_nonzero(q, n, rng))
    elif isinstance(h, AlgebraElement):
        h_element = AlgebraElement(algebra, h.avec, h.bvec)
    else:
        h_element = AlgebraElement.from_tuple(algebra, h)

    logger.debug("Generated public parameters {}", algebra.header())
    return PublicParams(algebra=algebra, h=h_element)


def keygen(params: PublicParams, rng: np.random.Generator) -> SecretKey:
    """Uniform secret pair; an all-zero s or t is redrawn."""
    algebra = params.algebra
    zeros = np.zeros(algebra.n, dtype=np.int64)
    s = AlgebraElement(algebra, _draw_nonzero(algebra.q, algebra.n, rng), zeros)
    while True:
        t = sample_reversible(algebra, rng)
        if not t.is_zero:
            return SecretKey(s=s, t=t)


def _check_key(sk: SecretKey, params: PublicParams) -> None:
    if sk.params != params.algebra:
        raise ParameterMismatchError(
            f"Secret key is over {sk.params.header()}, parameters are {params.algebra.header()}"
        )


def compute_pk(sk: SecretKey, params: PublicParams) -> PublicKey:
    _check_key(sk, params)
    return PublicKey(pk=act(sk.s, sk.t, params.h))


def derive_key(sk: SecretKey, peer_pk: PublicKey, params: PublicParams) -> SharedKey:
    _check_key(sk, params)
    if peer_pk.pk.params != params.algebra:
        raise ParameterMismatchError(
            f"Peer key is over {peer_pk.pk.params.header()}, parameters are {params.algebra.header()}"
        )
    return SharedKey(k=alg_mul(alg_mul(sk.s, peer_pk.pk), adjunct(sk.t)))


@dataclass(frozen=True)
class Session:
    """Both sides of one honest exchange."""

    sk_a: SecretKey
    sk_b: SecretKey
    pk_a: PublicKey
    pk_b: PublicKey
    k_a: SharedKey
    k_b: SharedKey

    @property
    def keys_match(self) -> bool:
        return self.k_a.k == self.k_b.k


def run_session(params: PublicParams, rng: np.random.Generator) -> Session:
    sk_a = keygen(params, rng)
    sk_b = keygen(params, rng)
    pk_a = compute_pk(sk_a, params)
    pk_b = compute_pk(sk_b, params)
    return Session(
        sk_a=sk_a,
        sk_b=sk_b,
        pk_a=pk_a,
        pk_b=pk_b,
        k_a=derive_key(sk_a, pk_b, params),
        k_b=derive_key(sk_b, pk_a, params),
    )
