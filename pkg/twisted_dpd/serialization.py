"""
Plain-text codec for parameters, keys and worked-example fixtures.

Every file starts with a header line "q=<q> n=<n> lambda=<lambda>" followed by
decimal, comma-separated 2n-tuples (rotation coefficients first), one per line:

    params       header, h
    secret key   header, s, t
    public key   header, pk

Fixtures use labelled lines instead ("h=...", "s=...", ...).
"""

import re
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from twisted_dpd.exceptions import ParseError
from twisted_dpd.protocol import PublicKey, PublicParams, SecretKey
from twisted_dpd.twisted_algebra import AlgebraElement, AlgebraParams

HEADER_PATTERN = re.compile(r"^q=(\d+)\s+n=(\d+)\s+lambda=(\d+)$")
LABEL_PATTERN = re.compile(r"^([a-z_]+)=(.*)$")


def format_tuple(values: Sequence[int]) -> str:
    return ",".join(str(int(v)) for v in values)


def parse_tuple(text: str, expected_len: Optional[int] = None, q: Optional[int] = None) -> List[int]:
    """Parse "v0,v1,...". Values must be residues when q is given."""
    text = text.strip()
    if not text:
        raise ParseError("Empty tuple")
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError as e:
        raise ParseError(f"Tuple entries must be decimal integers: {e}") from e

    if expected_len is not None and len(values) != expected_len:
        raise ParseError(f"Expected {expected_len} entries, got {len(values)}")
    if q is not None and any(not 0 <= v < q for v in values):
        raise ParseError(f"Tuple entries must lie in [0, {q})")
    return values


def parse_header(line: str) -> Tuple[int, int, int]:
    """Returns (q, n, lambda)."""
    match = HEADER_PATTERN.match(line.strip())
    if not match:
        raise ParseError(f"Malformed header {line.strip()!r}, expected 'q=<q> n=<n> lambda=<lambda>'")
    q, n, lam = (int(group) for group in match.groups())
    return q, n, lam


def _split_lines(text: str) -> List[str]:
    return [line for line in (raw.strip() for raw in text.splitlines()) if line]


def _read_body(text: str, rows: int) -> Tuple[AlgebraParams, List[List[int]]]:
    lines = _split_lines(text)
    if len(lines) != rows + 1:
        raise ParseError(f"Expected a header and {rows} tuple line(s), got {len(lines)} line(s)")
    q, n, lam = parse_header(lines[0])
    algebra = AlgebraParams.build(n, q, lam)
    return algebra, [parse_tuple(line, 2 * n, q) for line in lines[1:]]


def _write(path: Path, lines: Sequence[str]) -> None:
    path.write_text("\n".join(lines) + "\n")
    logger.debug("Wrote {}", path)


def _read(path: Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e}") from e


def params_to_text(params: PublicParams) -> str:
    return "\n".join([params.algebra.header(), format_tuple(params.h.to_tuple())]) + "\n"


def params_from_text(text: str) -> PublicParams:
    algebra, (h,) = _read_body(text, 1)
    return PublicParams(algebra=algebra, h=AlgebraElement.from_tuple(algebra, h))


def secret_key_to_text(sk: SecretKey) -> str:
    return "\n".join([sk.params.header(), format_tuple(sk.s.to_tuple()), format_tuple(sk.t.to_tuple())]) + "\n"


def secret_key_from_text(text: str) -> SecretKey:
    algebra, (s, t) = _read_body(text, 2)
    return SecretKey(s=AlgebraElement.from_tuple(algebra, s), t=AlgebraElement.from_tuple(algebra, t))


def public_key_to_text(pk: PublicKey) -> str:
    return "\n".join([pk.pk.params.header(), format_tuple(pk.pk.to_tuple())]) + "\n"


def public_key_from_text(text: str) -> PublicKey:
    algebra, (pk,) = _read_body(text, 1)
    return PublicKey(pk=AlgebraElement.from_tuple(algebra, pk))


def write_params(path: Path, params: PublicParams) -> None:
    _write(Path(path), params_to_text(params).splitlines())


def read_params(path: Path) -> PublicParams:
    return params_from_text(_read(path))


def write_secret_key(path: Path, sk: SecretKey) -> None:
    _write(Path(path), secret_key_to_text(sk).splitlines())


def read_secret_key(path: Path) -> SecretKey:
    return secret_key_from_text(_read(path))


def write_public_key(path: Path, pk: PublicKey) -> None:
    _write(Path(path), public_key_to_text(pk).splitlines())


def read_public_key(path: Path) -> PublicKey:
    return public_key_from_text(_read(path))


def parse_labelled(text: str) -> Tuple[AlgebraParams, Dict[str, List[int]]]:
    """Header followed by "label=v0,v1,..." lines."""
    lines = _split_lines(text)
    if not lines:
        raise ParseError("Empty fixture")
    q, n, lam = parse_header(lines[0])
    algebra = AlgebraParams.build(n, q, lam)

    entries: Dict[str, List[int]] = {}
    for line in lines[1:]:
        match = LABEL_PATTERN.match(line)
        if not match:
            raise ParseError(f"Malformed fixture line {line[:40]!r}")
        label, body = match.groups()
        if label in entries:
            raise ParseError(f"Duplicate label {label!r}")
        entries[label] = parse_tuple(body, 2 * n, q)
    return algebra, entries
