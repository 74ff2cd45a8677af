"""
Statistical acceptance runs over the proposed platforms.

These draw 10^3 to 10^5 samples each; deselect them with:
    pytest -m "not slow"
"""

import math

import numpy as np
import pytest

from constants import PROPOSED_PLATFORMS, SMALL_PLATFORMS
from twisted_dpd.attack import (
    DPDInstance,
    attack_success_rate,
    dpd_attack,
    extract_vectors,
    non_injectivity_witness,
    theoretical_success_rate,
    verify_solution,
)
from twisted_dpd.circulant import (
    Circulant,
    circ_is_invertible,
    circ_is_invertible_by_elimination,
    circ_matvec,
    estimate_prob_invertible,
)
from twisted_dpd.finite_field import random_vector
from twisted_dpd.protocol import compute_pk, gen_params, keygen, run_session
from twisted_dpd.twisted_algebra import AlgebraElement, AlgebraParams, alg_mul, alg_mul_oracle

pytestmark = pytest.mark.slow


def _within_sigmas(rate: float, p: float, trials: int, sigmas: float = 4.0) -> bool:
    return abs(rate - p) <= sigmas * math.sqrt(p * (1 - p) / trials)


def _attackable_params(n: int, q: int, rng: np.random.Generator):
    while True:
        params = gen_params(n, q, rng)
        if circ_is_invertible(Circulant(params.h.avec, q)) and circ_is_invertible(Circulant(params.h.bvec, q)):
            return params


@pytest.mark.parametrize("n,q,lam", PROPOSED_PLATFORMS)
def test_shared_keys_agree(n, q, lam):
    """Every honest session over fresh parameters derives one shared key."""
    for trial in range(1000):
        rng = np.random.default_rng([n, trial])
        session = run_session(gen_params(n, q, rng), rng)
        assert session.keys_match, f"trial {trial}"


def test_attack_rate_19():
    """10^4 trials at q = n = 19 land near (18/19)^2 = 0.8975."""
    report = attack_success_rate(19, 19, 10_000, seed=2024)

    assert report.theoretical == "324/361"
    assert _within_sigmas(report.rate, float(theoretical_success_rate(19)), report.trials)
    assert report.rate > 0.88
    assert report.ci_low <= report.rate <= report.ci_high
    assert report.successes + report.singular_c + report.singular_d + report.inconsistent == report.trials
    assert report.inconsistent == 0


def test_attack_rate_41():
    """10^4 trials at q = n = 41 land near (40/41)^2 = 0.9518."""
    report = attack_success_rate(41, 41, 10_000, seed=2024)

    assert _within_sigmas(report.rate, float(theoretical_success_rate(41)), report.trials)


def test_conditioned_attack_always_succeeds():
    """With M_c and M_d invertible, every legitimate public key is broken."""
    report = attack_success_rate(19, 19, 1000, seed=7, conditioned=True)

    assert report.successes == report.trials
    assert report.singular_c == report.singular_d == 0
    assert report.mean_b_samples < 1.2


@pytest.mark.parametrize("n,q,lam", SMALL_PLATFORMS + [(19, 19, 18)])
def test_closed_form_product_matches_oracle(n, q, lam):
    """The convolution form of the product agrees with the term-by-term sum."""
    params = AlgebraParams.build(n, q, lam)
    rng = np.random.default_rng(q * n)
    draws = 1000 if n < 19 else 100

    for _ in range(draws):
        u = AlgebraElement.random(params, rng)
        v = AlgebraElement.random(params, rng)
        assert alg_mul(u, v) == alg_mul_oracle(u, v)


@pytest.mark.parametrize("n,q,lam", PROPOSED_PLATFORMS)
def test_product_is_associative(n, q, lam):
    params = AlgebraParams.build(n, q, lam)
    rng = np.random.default_rng(lam)

    for _ in range(1000):
        x, y, z = (AlgebraElement.random(params, rng) for _ in range(3))
        assert alg_mul(alg_mul(x, y), z) == alg_mul(x, alg_mul(y, z))


@pytest.mark.parametrize("n,q,lam", PROPOSED_PLATFORMS)
def test_public_key_reduces_to_circulants(n, q, lam):
    """w = M_c M_b a and v = lambda M_d M_b a for every honest public key."""
    rng = np.random.default_rng(n + 1)

    for _ in range(200):
        params = gen_params(n, q, rng)
        sk = keygen(params, rng)
        c, d, v, w = extract_vectors(DPDInstance(params=params, gamma=compute_pk(sk, params).pk))
        a, b = sk.s.avec, sk.t.bvec
        u = circ_matvec(Circulant(b, q), a)

        assert np.array_equal(w, circ_matvec(Circulant(c, q), u))
        assert np.array_equal(v, (params.lam * circ_matvec(Circulant(d, q), u)) % q)


@pytest.mark.parametrize("n,q,trials", [(19, 19, 10_000), (6, 3, 2000), (10, 5, 2000)])
def test_gcd_and_elimination_agree(n, q, trials):
    """Invertibility through gcd(c(x), x^n - 1) matches the rank of the expanded matrix."""
    rng = np.random.default_rng(trials)

    for _ in range(trials):
        C = Circulant(random_vector(q, n, rng), q)
        assert circ_is_invertible(C) == circ_is_invertible_by_elimination(C)


def test_reversible_invertibility_rate():
    """Reversible columns at q = n = 19 are invertible about 18/19 of the time."""
    estimate = estimate_prob_invertible(19, 19, 100_000, seed=11, reversible=True)

    assert abs(float(estimate) - 18 / 19) < 0.02


def test_bench_is_deterministic():
    """Equal seeds reproduce the whole report."""
    first = attack_success_rate(23, 23, 200, seed=99)
    second = attack_success_rate(23, 23, 200, seed=99)

    assert first.model_dump() == second.model_dump()


@pytest.mark.parametrize("n,q,lam", PROPOSED_PLATFORMS)
def test_recovered_keys_verify(n, q, lam):
    """Whenever M_c and M_d are invertible the recovered key reproduces the public key."""
    rng = np.random.default_rng(lam)
    params = _attackable_params(n, q, rng)

    for _ in range(100):
        inst = DPDInstance(params=params, gamma=compute_pk(keygen(params, rng), params).pk)
        assert verify_solution(inst, dpd_attack(inst, rng))


def test_public_key_map_is_not_injective():
    """Distinct secret keys share a public key on an attackable instance."""
    rng = np.random.default_rng(5)
    params = _attackable_params(19, 19, rng)

    sk_1, sk_2, gamma = non_injectivity_witness(params, rng)

    assert sk_1 != sk_2
    assert compute_pk(sk_1, params).pk == gamma
    assert compute_pk(sk_2, params).pk == gamma
