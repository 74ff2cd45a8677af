"""
Command-line front end.

Exit status: 0 on success, 2 when the attack hits a singular M_c or M_d,
1 on usage, I/O and parse errors and on a failed check.
"""

import sys
import time
from pathlib import Path
from typing import NoReturn, Optional

import click
import numpy as np
import typer
from loguru import logger
from pydantic import BaseModel, ValidationError

from twisted_dpd.attack import (
    DPDInstance,
    attack_success_rate,
    dpd_attack,
    search_space_sizes,
    verify_solution,
)
from twisted_dpd.circulant import count_invertible, estimate_prob_invertible, prob_invertible
from twisted_dpd.config import RunConfig, load_settings
from twisted_dpd.exceptions import AttackFailed, TwistedDPDException
from twisted_dpd.metrics import AttackMetrics
from twisted_dpd.polynomials import factor_profile_xn_minus_1
from twisted_dpd.protocol import PublicKey, compute_pk, derive_key, gen_params, keygen
from twisted_dpd.responses import AttackTranscript, CirculantStatsReport, ExchangeTranscript
from twisted_dpd.serialization import (
    params_to_text,
    public_key_to_text,
    read_params,
    read_public_key,
    read_secret_key,
    secret_key_to_text,
)
from twisted_dpd.twisted_algebra import AlgebraElement, alg_add
from twisted_dpd.worked_examples import verify_examples

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ATTACK_FAIL = 2

app = typer.Typer(no_args_is_help=True)


@app.callback()
def configure(debug: bool = typer.Option(False, "--debug", help="Log every step to stderr")):
    settings = load_settings(debug=True) if debug else load_settings()
    logger.remove()
    logger.add(sys.stderr, level=settings.effective_log_level)


def _fail(message: str, code: int = EXIT_ERROR) -> NoReturn:
    logger.error(message)
    sys.exit(code)


def _resolve(**fields) -> RunConfig:
    try:
        config = RunConfig(**fields)
    except ValidationError as e:
        _fail(f"Invalid arguments:\n{e}")
    typer.echo(f"# {config.describe()}", err=True)
    return config


def _emit(text: str, out: Optional[Path]):
    if out is None:
        typer.echo(text, nl=False)
    else:
        try:
            out.write_text(text)
        except OSError as e:
            _fail(f"Cannot write {out}: {e}")
        logger.info("Wrote {}", out)


def _render_table(report: BaseModel) -> str:
    lines = []
    for key, value in report.model_dump().items():
        shown = f"{value:.6f}" if isinstance(value, float) else str(value)
        lines.append(f"{key:<20}{shown}")
    return "\n".join(lines) + "\n"


def cmd_params(
    n: int = typer.Option(..., "--n", help="Rotation order n"),
    q: int = typer.Option(..., "--q", help="Odd prime q dividing 2n"),
    lam: Optional[int] = typer.Option(None, "--lambda", help="Force a non-square cocycle parameter"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for lambda and h"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the parameters here instead of stdout"),
):
    config = _resolve(subcommand="params", n=n, q=q, lam=lam, seed=seed, output_path=out)
    try:
        params = gen_params(n, q, config.seed, lam=lam)
    except TwistedDPDException as e:
        _fail(f"Cannot generate parameters: {e}")
    _emit(params_to_text(params), config.output_path)


def cmd_keygen(
    params_path: Path = typer.Option(..., "--in", help="Public parameters file"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the secret pair"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the secret key here instead of stdout"),
):
    config = _resolve(subcommand="keygen", seed=seed, input_path=params_path, output_path=out)
    try:
        params = read_params(config.input_path)
    except TwistedDPDException as e:
        _fail(f"Cannot read parameters: {e}")
    sk = keygen(params, np.random.default_rng(config.seed))
    _emit(secret_key_to_text(sk), config.output_path)


def cmd_pk(
    params_path: Path = typer.Option(..., "--in", help="Public parameters file"),
    key_path: Path = typer.Option(..., "--key", help="Secret key file"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the public key here instead of stdout"),
):
    config = _resolve(subcommand="pk", input_path=params_path, output_path=out)
    try:
        params = read_params(config.input_path)
        pk = compute_pk(read_secret_key(key_path), params)
    except TwistedDPDException as e:
        _fail(f"Cannot compute public key: {e}")
    _emit(public_key_to_text(pk), config.output_path)


def cmd_exchange(
    params_path: Path = typer.Option(..., "--in", help="Public parameters file"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for both secret pairs"),
    corrupt_pk: bool = typer.Option(False, "--corrupt-pk", hidden=True),
):
    config = _resolve(subcommand="exchange", seed=seed, input_path=params_path)
    try:
        params = read_params(config.input_path)
    except TwistedDPDException as e:
        _fail(f"Cannot read parameters: {e}")

    rng = np.random.default_rng(config.seed)
    sk_a, sk_b = keygen(params, rng), keygen(params, rng)
    pk_a, pk_b = compute_pk(sk_a, params), compute_pk(sk_b, params)
    received_b = pk_b
    if corrupt_pk:
        received_b = PublicKey(pk=alg_add(pk_b.pk, AlgebraElement.one(params.algebra)))
    k_a = derive_key(sk_a, received_b, params)
    k_b = derive_key(sk_b, pk_a, params)

    match = k_a.k == k_b.k
    transcript = ExchangeTranscript(
        q=params.q,
        n=params.n,
        lam=params.lam,
        seed=config.seed,
        pk_a=pk_a.pk.to_tuple(),
        pk_b=pk_b.pk.to_tuple(),
        k_a=k_a.k.to_tuple(),
        k_b=k_b.k.to_tuple(),
        verdict="MATCH" if match else "MISMATCH",
    )
    typer.echo(transcript.model_dump_json(indent=2))
    if not match:
        _fail("Shared keys differ")


def cmd_attack(
    params_path: Path = typer.Option(..., "--in", help="Public parameters file"),
    pk_path: Path = typer.Option(..., "--pk", help="Observed public key file"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the reversible b draws"),
):
    config = _resolve(subcommand="attack", seed=seed, input_path=params_path)
    try:
        params = read_params(config.input_path)
        inst = DPDInstance(params=params, gamma=read_public_key(pk_path).pk)
    except TwistedDPDException as e:
        _fail(f"Cannot read attack inputs: {e}")

    header = dict(q=params.q, n=params.n, lam=params.lam, seed=config.seed)
    try:
        sol = dpd_attack(inst, np.random.default_rng(config.seed))
    except AttackFailed as e:
        typer.echo(AttackTranscript(**header, verdict="FAIL", singular=e.singular).model_dump_json(indent=2))
        _fail(f"Attack failed: {e}", code=EXIT_ATTACK_FAIL)
    except TwistedDPDException as e:
        _fail(f"Attack aborted: {e}")

    verified = verify_solution(inst, sol)
    transcript = AttackTranscript(
        **header,
        verdict="SUCCESS",
        b_samples=sol.b_samples,
        s_tilde=sol.s_tilde.to_tuple(),
        t_tilde=sol.t_tilde.to_tuple(),
        verified=verified,
    )
    typer.echo(transcript.model_dump_json(indent=2))
    if not verified:
        _fail("Recovered key does not reproduce the public key")


def cmd_bench(
    n: int = typer.Option(19, "--n", help="Rotation order n"),
    q: int = typer.Option(19, "--q", help="Odd prime q dividing 2n"),
    trials: int = typer.Option(1000, "--trials", help="Full pipelines to run"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Base seed of the per-trial streams"),
    conditioned: bool = typer.Option(False, "--conditioned", help="Redraw h until M_c and M_d are invertible"),
):
    config = _resolve(subcommand="bench", n=n, q=q, seed=seed, trials=trials)
    started = time.perf_counter()
    metrics = AttackMetrics()
    try:
        report = attack_success_rate(n, q, trials, config.seed, conditioned=conditioned, metrics=metrics)
    except TwistedDPDException as e:
        _fail(f"Benchmark aborted: {e}")

    typer.echo(_render_table(report), nl=False)
    typer.echo(_render_table(search_space_sizes(n, q)), nl=False)
    typer.echo(f"# {metrics.timing_summary()}", err=True)
    typer.echo(f"# wall time {time.perf_counter() - started:.2f}s", err=True)


def cmd_circulant_stats(
    n: int = typer.Option(19, "--n", help="Matrix size n"),
    q: int = typer.Option(19, "--q", help="Prime modulus q"),
    trials: int = typer.Option(10000, "--trials", help="Monte Carlo samples per estimate"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Base seed of the per-trial streams"),
):
    config = _resolve(subcommand="circulant-stats", n=n, q=q, seed=seed, trials=trials)
    try:
        exact = prob_invertible(n, q)
        report = CirculantStatsReport(
            n=n,
            q=q,
            seed=config.seed,
            trials=trials,
            count=count_invertible(n, q),
            exact=str(exact),
            exact_value=float(exact),
            estimate=float(estimate_prob_invertible(n, q, trials, config.seed)),
            reversible_estimate=float(estimate_prob_invertible(n, q, trials, config.seed, reversible=True)),
            factor_profile=factor_profile_xn_minus_1(n, q).describe(),
        )
    except TwistedDPDException as e:
        _fail(f"Cannot compute circulant statistics: {e}")
    typer.echo(_render_table(report), nl=False)


def cmd_verify_examples():
    _resolve(subcommand="verify-examples")
    try:
        reports = verify_examples()
    except TwistedDPDException as e:
        _fail(f"Cannot load worked examples: {e}")

    for report in reports:
        verdict = "PASS" if report.passed else "FAIL"
        typer.echo(f"{report.name} q={report.q} n={report.n} lambda={report.lam} {verdict}")
        for message in report.messages:
            typer.echo(f"  {message}")
    if not all(report.passed for report in reports):
        _fail("At least one worked example failed")


app.command(name="params", help="Generate public parameters.")(cmd_params)
app.command(name="keygen", help="Generate a secret key pair (s, t).")(cmd_keygen)
app.command(name="pk", help="Compute the public key s h t.")(cmd_pk)
app.command(name="exchange", help="Run one honest key exchange and compare the shared keys.")(cmd_exchange)
app.command(name="attack", help="Recover a working secret key from a public key.")(cmd_attack)
app.command(name="bench", help="Measure the attack success rate.")(cmd_bench)
app.command(name="circulant-stats", help="Report circulant invertibility statistics.")(cmd_circulant_stats)
app.command(name="verify-examples", help="Check the bundled worked examples.")(cmd_verify_examples)
app.command(name="verify-paper-examples", hidden=True, help="Alias of verify-examples.")(cmd_verify_examples)


def main():
    try:
        code = app(standalone_mode=False)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_ERROR)
    except click.exceptions.Abort:
        sys.exit(EXIT_ERROR)
    sys.exit(code if isinstance(code, int) else EXIT_OK)


if __name__ == "__main__":
    main()
