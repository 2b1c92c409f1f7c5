from typing import Any

from pydantic import BaseModel

SCHEMA_VERSION = 1

Rational = str
"""Canonical rational string: 'a/b', or 'a' for integers."""


class OutputEnvelope(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: str
    parameters: dict[str, Any]
    result: Any
    timing: float
    """Wall-clock seconds."""

    cache_hit: bool = False


class PrimeClassModel(BaseModel):
    p: int
    cls: str
    xi: int | None
    cell_path: list[str]
    """Cells of p in the tables k = 1, 2, ... while p stays in R_(k-1)."""


class ClassifyModel(BaseModel):
    q: Rational
    primes: list[PrimeClassModel]


class DensityRowModel(BaseModel):
    cls: str
    count: int
    empirical: float
    theoretical: Rational
    deviation: float
    flagged: bool


class CellCensusModel(BaseModel):
    max_depth: int
    admissible: int
    cells: dict[int, dict[str, int]]
    omega_plus: dict[int, int]
    omega_minus: dict[int, int]
    r_counts: dict[int, int]
    coincide: dict[int, bool]
    violations: int | None
    predicted: dict[int, dict[str, Rational]] | None


class DensityModel(BaseModel):
    q: Rational
    limit: int
    tolerance: float
    admissible: int
    excluded: int
    rows: list[DensityRowModel]
    dyadic_ratios: dict[int, float]
    passed: bool
    cells: CellCensusModel | None


class TraceModel(BaseModel):
    q: Rational
    tag: str
    classification: str
    profile: list[Rational] | None
    dyadic_from: int | None
    relations: list[str]


class LucasPrimeModel(BaseModel):
    p: int
    classifier: str
    direct: str


class LucasModel(BaseModel):
    T: int
    Q: int
    D: int
    q: Rational
    simple_value: tuple[int, int]
    twin: tuple[int, int]
    tag: str
    squares: list[str]
    primes: list[LucasPrimeModel]


class OrbitPointModel(BaseModel):
    n: int
    q: Rational
    w: Rational | None
    numerator: int
    exponent: int
    factors: list[tuple[int, int]]
    cofactor: int


class OrbitModel(BaseModel):
    map: str
    degree: int
    start: Rational
    points: list[OrbitPointModel]
    bound_violations: list[tuple[int, int]]
    gcd_violations: list[tuple[int, int, int]]
    distinct_primes: int
    prime_count: int
    classes: dict[str, int] | None
    passed: bool


class SuiteModel(BaseModel):
    suite: str
    limit: int
    instances: int
    violations: list[dict[str, Any]]
    passed: bool
