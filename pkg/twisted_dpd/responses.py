from typing import List, Literal, Optional

from pydantic import BaseModel, Field


class AttackTranscript(BaseModel):
    q: int = Field(..., description="Field modulus")
    n: int = Field(..., description="Rotation order")
    lam: int = Field(..., description="Cocycle parameter")
    seed: int = Field(..., description="Seed of the b sampling stream")
    verdict: Literal["SUCCESS", "FAIL"] = Field(..., description="Attack outcome")
    singular: Optional[str] = Field(None, description="Which of M_c, M_d was singular on FAIL")
    b_samples: Optional[int] = Field(None, description="Reversible b vectors drawn")
    s_tilde: Optional[List[int]] = Field(None, description="Recovered s as a 2n-tuple")
    t_tilde: Optional[List[int]] = Field(None, description="Recovered t as a 2n-tuple")
    verified: Optional[bool] = Field(None, description="Whether s~ h t~ reproduced the public key")


class ExchangeTranscript(BaseModel):
    q: int = Field(..., description="Field modulus")
    n: int = Field(..., description="Rotation order")
    lam: int = Field(..., description="Cocycle parameter")
    seed: int = Field(..., description="Seed of the key generation stream")
    pk_a: List[int] = Field(..., description="Alice's public key")
    pk_b: List[int] = Field(..., description="Bob's public key")
    k_a: List[int] = Field(..., description="Key derived by Alice")
    k_b: List[int] = Field(..., description="Key derived by Bob")
    verdict: Literal["MATCH", "MISMATCH"] = Field(..., description="Whether K_A = K_B")


class SearchSpaceSizes(BaseModel):
    rotation_part: int = Field(..., description="|F_q^alpha C_n| = q^n")
    key_space: int = Field(..., description="|F_q^alpha C_n x Gamma| = q^n * q^(n//2 + 1)")


class SuccessRateReport(BaseModel):
    n: int = Field(..., description="Rotation order")
    q: int = Field(..., description="Field modulus")
    seed: int = Field(..., description="Base seed of the per-trial streams")
    trials: int = Field(..., description="Number of full pipelines run")
    conditioned: bool = Field(False, description="Whether h was resampled until M_c and M_d were invertible")
    successes: int = Field(..., description="Verified recoveries")
    rate: float = Field(..., description="successes / trials")
    theoretical: str = Field(..., description="Predicted success probability as an exact fraction")
    theoretical_value: float = Field(..., description="Predicted success probability")
    ci_low: float = Field(..., description="Lower end of the 95% Wilson interval")
    ci_high: float = Field(..., description="Upper end of the 95% Wilson interval")
    mean_b_samples: float = Field(..., description="Mean reversible b draws per successful run")
    max_b_samples: int = Field(..., description="Most reversible b draws in one run")
    singular_c: int = Field(0, description="Runs stopped by a singular M_c")
    singular_d: int = Field(0, description="Runs stopped by a singular M_d")
    inconsistent: int = Field(0, description="Runs rejected by the consistency check")


class CirculantStatsReport(BaseModel):
    n: int = Field(..., description="Matrix size")
    q: int = Field(..., description="Field modulus")
    seed: int = Field(..., description="Base seed of the per-trial streams")
    trials: int = Field(..., description="Monte Carlo samples per estimate")
    count: int = Field(..., description="Number of invertible circulants")
    exact: str = Field(..., description="Exact invertibility probability as a fraction")
    exact_value: float = Field(..., description="Exact invertibility probability")
    estimate: float = Field(..., description="Monte Carlo rate over uniform columns")
    reversible_estimate: float = Field(..., description="Monte Carlo rate over reversible columns")
    factor_profile: str = Field(..., description="Degrees and multiplicities of the factors of x^n - 1")


class ExampleReport(BaseModel):
    name: str = Field(..., description="Fixture name")
    q: int = Field(..., description="Field modulus")
    n: int = Field(..., description="Rotation order")
    lam: int = Field(..., description="Cocycle parameter")
    passed: bool = Field(..., description="Whether every check passed")
    messages: List[str] = Field(default_factory=list, description="Check details")
