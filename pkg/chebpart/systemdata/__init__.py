import pathlib
from fractions import Fraction

import yaml

from chebpart.const import ChebKind, TraceTag
from chebpart.lib.arith import parse_rational

datadir = pathlib.Path(__file__).parent


def _load(name: str) -> dict:
    with open(datadir / f'{name}.yml') as f:
        return yaml.safe_load(f)


def chebyshev_table() -> dict[ChebKind, dict[int, str]]:
    """The reference rows C_0..C_13 and U_1..U_14."""
    return {ChebKind(kind): {int(n): text for n, text in rows.items()} for kind, rows in _load('chebyshev_table').items()}


def trace_panel() -> dict[Fraction, TraceTag]:
    return {parse_rational(q): TraceTag(tag) for q, tag in _load('panels')['traces'].items()}


def params_panel() -> list[tuple[int, int]]:
    return [(p['T'], p['Q']) for p in _load('panels')['params']]


def suite_limits() -> dict[str, int]:
    return _load('panels')['limits']
