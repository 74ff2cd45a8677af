"""
Recovering a working secret key from (h, gamma) through circulant algebra.

With h = sum c_i x^i + sum d_i x^i y and gamma = s h t = sum v_i x^i + sum w_i x^i y,
a secret pair s = sum a_i x^i, t = sum b_i x^i y with t reversible satisfies

    w = M_c M_b a        v = lambda M_d M_b a

so once M_c and M_d are invertible any reversible b with M_b invertible gives
a = M_b^-1 M_c^-1 w. The recovered pair need not equal the original one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from loguru import logger
from scipy.stats import binomtest

from twisted_dpd.checks import CheckResult
from twisted_dpd.circulant import (
    Circulant,
    as_vector,
    circ_is_invertible,
    circ_solve,
    circ_solve_many,
    random_reversible_vector,
)
from twisted_dpd.config import load_settings
from twisted_dpd.exceptions import (
    AttackFailed,
    InconsistentPublicKeyError,
    ParameterMismatchError,
    ResamplingExhaustedError,
    SingularCirculantError,
)
from twisted_dpd.finite_field import FieldElement, inv_residue
from twisted_dpd.metrics import AttackMetrics
from twisted_dpd.protocol import PublicParams, SecretKey, compute_pk, gen_params, keygen
from twisted_dpd.responses import SearchSpaceSizes, SuccessRateReport
from twisted_dpd.twisted_algebra import AlgebraElement, act, is_reversible


@dataclass(frozen=True)
class DPDInstance:
    params: PublicParams
    gamma: AlgebraElement

    def __post_init__(self):
        if self.gamma.params != self.params.algebra:
            raise ParameterMismatchError(
                f"gamma is over {self.gamma.params.header()}, parameters are {self.params.algebra.header()}"
            )


@dataclass(frozen=True)
class DPDSolution:
    """Candidate (s~, t~); `a_from_w` and `a_from_v` are the two solve paths for a."""

    s_tilde: AlgebraElement
    t_tilde: AlgebraElement
    b_samples: int = 0
    a_from_w: Optional[np.ndarray] = None
    a_from_v: Optional[np.ndarray] = None

    def as_secret_key(self) -> SecretKey:
        return SecretKey(s=self.s_tilde, t=self.t_tilde)


def extract_vectors(inst: DPDInstance) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(c, d, v, w) read off h and gamma."""
    h, gamma = inst.params.h, inst.gamma
    return h.avec, h.bvec, gamma.avec, gamma.bvec


def _solve_or_fail(col: np.ndarray, q: int, vectors: list, name: str) -> list[np.ndarray]:
    try:
        return circ_solve_many(Circulant(col, q), vectors)
    except SingularCirculantError as e:
        logger.debug("M_{} is singular, attack fails", name)
        raise AttackFailed(name) from e


def _solve_both_sides(c, d, v, w, lam: FieldElement) -> tuple[np.ndarray, np.ndarray]:
    q = lam.q
    from_w = circ_solve(Circulant(c, q), w)
    from_v = (circ_solve(Circulant(d, q), v) * inv_residue(lam.value, q)) % q
    return from_w, from_v


def consistency_check(c, d, v, w, lam: Union[FieldElement, int], q: Optional[int] = None) -> bool:
    """
    lambda^-1 M_d^-1 v == M_c^-1 w, which every legitimate public key satisfies.

    Raises SingularCirculantError when M_c or M_d is singular.
    """
    if not isinstance(lam, FieldElement):
        if q is None:
            raise ValueError("q is required when lambda is given as an int")
        lam = FieldElement(int(lam) % q, q)
    from_w, from_v = _solve_both_sides(c, d, v, w, lam)
    return bool(np.array_equal(from_w, from_v))


def dpd_attack(
    inst: DPDInstance,
    rng: np.random.Generator,
    b_sample_cap: Optional[int] = None,
) -> DPDSolution:
    """
    Find some (s~, t~) with s~ h t~ = gamma.

    Args:
        inst: Public element and observed public key.
        rng: Source of the reversible b draws.
        b_sample_cap: Draws allowed before giving up; defaults to settings.b_sample_cap.

    Returns:
        DPDSolution whose product reproduces gamma.

    Raises:
        AttackFailed: M_c or M_d is singular.
        InconsistentPublicKeyError: gamma cannot be of the form s h t.
        ResamplingExhaustedError: no invertible M_b within the cap.
    """
    algebra = inst.params.algebra
    q, n = algebra.q, algebra.n
    cap = b_sample_cap if b_sample_cap is not None else load_settings().b_sample_cap
    c, d, v, w = extract_vectors(inst)

    # u = M_b a, computed once through each half of gamma.
    (u_from_w,) = _solve_or_fail(c, q, [w], "c")
    (d_solution,) = _solve_or_fail(d, q, [v], "d")
    u_from_v = (d_solution * algebra.lam_inverse) % q
    if not np.array_equal(u_from_w, u_from_v):
        raise InconsistentPublicKeyError("lambda^-1 M_d^-1 v != M_c^-1 w: gamma is not a legitimate public key")

    for draw in range(1, cap + 1):
        b = random_reversible_vector(q, n, rng)
        try:
            a_from_w, a_from_v = circ_solve_many(Circulant(b, q), [u_from_w, u_from_v])
        except SingularCirculantError:
            logger.debug("Draw {}: M_b singular, resampling", draw)
            continue
        if not np.array_equal(a_from_w, a_from_v):
            raise InconsistentPublicKeyError("The two solve paths for a disagree")

        zeros = np.zeros(n, dtype=np.int64)
        logger.debug("Recovered a key after {} b draw(s)", draw)
        return DPDSolution(
            s_tilde=AlgebraElement(algebra, a_from_w, zeros),
            t_tilde=AlgebraElement(algebra, zeros, b),
            b_samples=draw,
            a_from_w=as_vector(a_from_w, q),
            a_from_v=as_vector(a_from_v, q),
        )

    raise ResamplingExhaustedError(f"No invertible M_b in {cap} reversible draws at q={q}, n={n}")


def verify_solution_report(inst: DPDInstance, sol: DPDSolution) -> CheckResult:
    algebra = inst.params.algebra
    if sol.s_tilde.params != algebra or sol.t_tilde.params != algebra:
        return CheckResult.fail(f"Solution is not over {algebra.header()}")

    results = [
        CheckResult.ok("s~ lies in F_q^alpha C_n")
        if sol.s_tilde.in_rotation_part
        else CheckResult.fail("s~ has a nonzero C_n y part"),
        CheckResult.ok("t~ is reversible") if is_reversible(sol.t_tilde) else CheckResult.fail("t~ is not reversible"),
    ]
    result = CheckResult.combine(results)
    if not result.passed:
        return result

    if act(sol.s_tilde, sol.t_tilde, inst.params.h) == inst.gamma:
        result.messages.append("s~ h t~ = gamma")
    else:
        result.passed = False
        result.messages.append("s~ h t~ != gamma")
    return result


def verify_solution(inst: DPDInstance, sol: DPDSolution) -> bool:
    return verify_solution_report(inst, sol).passed


def theoretical_success_rate(q: int) -> Fraction:
    """(1 - 1/q)^2: each of M_c, M_d is invertible with probability 1 - 1/q."""
    return (1 - Fraction(1, q)) ** 2


def _conditioned_params(n: int, q: int, rng: np.random.Generator) -> PublicParams:
    while True:
        params = gen_params(n, q, rng)
        if circ_is_invertible(Circulant(params.h.avec, q)) and circ_is_invertible(Circulant(params.h.bvec, q)):
            return params


def attack_success_rate(
    n: int,
    q: int,
    trials: int,
    seed: int,
    conditioned: bool = False,
    metrics: Optional[AttackMetrics] = None,
) -> SuccessRateReport:
    """
    Run `trials` independent gen_params -> keygen -> compute_pk -> dpd_attack
    -> verify_solution pipelines. Trial i draws from default_rng([seed, i]).

    With `conditioned`, h is redrawn until M_c and M_d are invertible, so every
    trial should succeed.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    metrics = metrics if metrics is not None else AttackMetrics()
    cap = load_settings().b_sample_cap

    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        started = time.perf_counter()
        params = _conditioned_params(n, q, rng) if conditioned else gen_params(n, q, rng)
        sk = keygen(params, rng)
        inst = DPDInstance(params=params, gamma=compute_pk(sk, params).pk)
        try:
            sol = dpd_attack(inst, rng, b_sample_cap=cap)
        except AttackFailed as e:
            metrics.record_run("singular", time.perf_counter() - started, singular=e.singular)
            continue
        except InconsistentPublicKeyError:
            metrics.record_run("inconsistent", time.perf_counter() - started)
            continue

        outcome = "success" if verify_solution(inst, sol) else "unverified"
        metrics.record_run(outcome, time.perf_counter() - started, b_samples=sol.b_samples)

    successes = metrics.successes
    interval = binomtest(successes, trials).proportion_ci(confidence_level=0.95, method="wilson")
    theory = Fraction(1) if conditioned else theoretical_success_rate(q)
    logger.info("Attack success at n={}, q={}: {}/{} (predicted {})", n, q, successes, trials, theory)

    return SuccessRateReport(
        n=n,
        q=q,
        seed=seed,
        trials=trials,
        conditioned=conditioned,
        successes=successes,
        rate=successes / trials,
        theoretical=str(theory),
        theoretical_value=float(theory),
        ci_low=float(interval.low),
        ci_high=float(interval.high),
        mean_b_samples=metrics.mean_b_samples,
        max_b_samples=metrics.b_samples_max,
        singular_c=metrics.singular_by_matrix["c"],
        singular_d=metrics.singular_by_matrix["d"],
        inconsistent=metrics.outcomes["inconsistent"],
    )


def non_injectivity_witness(
    params: PublicParams,
    rng: np.random.Generator,
    sk: Optional[SecretKey] = None,
) -> tuple[SecretKey, SecretKey, AlgebraElement]:
    """
    Two different secret keys with the same public key.

    Raises AttackFailed when h has a singular M_c or M_d.
    """
    sk_1 = sk if sk is not None else keygen(params, rng)
    gamma = compute_pk(sk_1, params).pk
    inst = DPDInstance(params=params, gamma=gamma)

    for attempt in range(1, load_settings().b_sample_cap + 1):
        sk_2 = dpd_attack(inst, rng).as_secret_key()
        if sk_2 != sk_1:
            logger.debug("Distinct key with the same public key after {} attack(s)", attempt)
            return sk_1, sk_2, gamma

    raise ResamplingExhaustedError("Every recovered key coincided with the original")


def search_space_sizes(n: int, q: int) -> SearchSpaceSizes:
    """Brute force only needs to enumerate s: for each s the reversible t is determined linearly."""
    return SearchSpaceSizes(rotation_part=q**n, key_space=q**n * q ** (n // 2 + 1))
