"""
Bundled worked examples: public element h, an original secret pair (s, t) and
a second pair (s~, t~) recovered from the same public key.

The public key itself is not stored; it is recomputed as s h t.
"""

from dataclasses import dataclass
from importlib import resources
from typing import List

from loguru import logger

from twisted_dpd.attack import DPDInstance, DPDSolution, verify_solution_report
from twisted_dpd.checks import CheckResult
from twisted_dpd.exceptions import ParseError
from twisted_dpd.protocol import PublicParams
from twisted_dpd.responses import ExampleReport
from twisted_dpd.serialization import parse_labelled
from twisted_dpd.twisted_algebra import AlgebraElement, act, is_reversible

EXAMPLE_NAMES = ("example1", "example2", "example3")
REQUIRED_LABELS = ("h", "s", "t", "s_tilde", "t_tilde")


@dataclass(frozen=True)
class WorkedExample:
    name: str
    params: PublicParams
    s: AlgebraElement
    t: AlgebraElement
    s_tilde: AlgebraElement
    t_tilde: AlgebraElement

    @property
    def gamma(self) -> AlgebraElement:
        return act(self.s, self.t, self.params.h)


def load_example(name: str) -> WorkedExample:
    if name not in EXAMPLE_NAMES:
        raise ParseError(f"Unknown example {name!r}; expected one of {', '.join(EXAMPLE_NAMES)}")
    text = resources.files("twisted_dpd").joinpath("fixtures").joinpath(f"{name}.txt").read_text()
    algebra, entries = parse_labelled(text)

    missing = [label for label in REQUIRED_LABELS if label not in entries]
    if missing:
        raise ParseError(f"Fixture {name} is missing {', '.join(missing)}")

    elements = {label: AlgebraElement.from_tuple(algebra, entries[label]) for label in REQUIRED_LABELS}
    return WorkedExample(
        name=name,
        params=PublicParams(algebra=algebra, h=elements["h"]),
        s=elements["s"],
        t=elements["t"],
        s_tilde=elements["s_tilde"],
        t_tilde=elements["t_tilde"],
    )


def load_examples() -> List[WorkedExample]:
    return [load_example(name) for name in EXAMPLE_NAMES]


def verify_example(example: WorkedExample) -> ExampleReport:
    """Check that (s, t) is a valid secret pair and that s~ h t~ = s h t."""
    algebra = example.params.algebra
    original = CheckResult.combine(
        [
            CheckResult.ok("s lies in F_q^alpha C_n")
            if example.s.in_rotation_part
            else CheckResult.fail("s has a nonzero C_n y part"),
            CheckResult.ok("t is reversible") if is_reversible(example.t) else CheckResult.fail("t is not reversible"),
        ]
    )
    result = original
    if original.passed:
        inst = DPDInstance(params=example.params, gamma=example.gamma)
        result = CheckResult.combine(
            [original, verify_solution_report(inst, DPDSolution(example.s_tilde, example.t_tilde))]
        )

    logger.debug("{}: {}", example.name, "; ".join(result.messages))
    return ExampleReport(
        name=example.name,
        q=algebra.q,
        n=algebra.n,
        lam=algebra.lam,
        passed=result.passed,
        messages=result.messages,
    )


def verify_examples() -> List[ExampleReport]:
    return [verify_example(example) for example in load_examples()]
