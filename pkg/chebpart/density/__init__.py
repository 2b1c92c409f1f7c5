import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from chebpart.config import config
from chebpart.const import Cell, TraceTag
from chebpart.density.cache import ClassificationCache, decode_class
from chebpart.density.census import cell_segment, classify_segment, run_segments
from chebpart.lib.arith import RationalTrace, canonical
from chebpart.lib.exceptions import EmptyCensus, TrivialTrace
from chebpart.partition import DENOMINATOR_DIVISOR, PartitionClass, cell_containments
from chebpart.traceclass import DensityProfile, classify_trace, is_primitive, theoretical_densities

logger = logging.getLogger(__name__)


@dataclass
class PartitionCensus:
    q: RationalTrace
    limit: int
    counts: dict[PartitionClass, int]
    """Odd primes per class, denominator divisors excluded."""

    excluded: int
    total_odd_primes: int
    cache_hit: bool = False

    @property
    def admissible(self) -> int:
        return self.total_odd_primes - self.excluded

    def count(self, index: int) -> int:
        return self.counts.get(PartitionClass.pi(index), 0)

    def fraction(self, index: int) -> Fraction:
        return Fraction(self.count(index), self.admissible)

    @property
    def max_index(self) -> int:
        return max((cls.index for cls in self.counts), default=0)


def _resolve_cache(use_cache: bool | None) -> ClassificationCache | None:
    if use_cache is None:
        use_cache = config.CACHE.ENABLED
    return ClassificationCache(config.CACHE.DIR) if use_cache else None


def empirical_partition(q: RationalTrace, limit: int, threads: int = None,
                        use_cache: bool = None) -> PartitionCensus:
    """Classify every odd prime <= limit.

    Stored classifications are reused: a cached census at or above `limit`
    is filtered, a shorter one is extended from its limit.
    """
    if limit < 3:
        raise ValueError(f'census limit {limit} < 3')
    q = Fraction(q)
    cache = _resolve_cache(use_cache)
    cached = cache.load(q) if cache else None

    if cached and cached.limit >= limit:
        records = [r for r in cached.records if r[0] <= limit]
        cache_hit = True
    else:
        start, records = (cached.limit + 1, cached.records) if cached else (3, [])
        records = records + run_segments(
            classify_segment, start, limit + 1, q.numerator, q.denominator, threads=threads,
        )
        cache_hit = False
        if cache:
            cache.store(q, limit, records)

    tally = Counter(decode_class(tag, s) for _, tag, s in records)
    excluded = tally.pop(DENOMINATOR_DIVISOR, 0)
    census = PartitionCensus(q, limit, dict(tally), excluded, len(records), cache_hit)
    if not census.admissible:
        raise EmptyCensus(f'no odd prime up to {limit} is admissible for {canonical(q)}')
    logger.info(f'census of {canonical(q)} up to {limit}: {census.admissible} admissible primes')
    return census


@dataclass(frozen=True)
class DensityRow:
    cls: PartitionClass
    count: int
    empirical: Fraction
    theoretical: Fraction
    deviation: Fraction
    flagged: bool


@dataclass
class DensityReport:
    q: RationalTrace
    limit: int
    tolerance: float
    profile: DensityProfile
    census: PartitionCensus
    rows: list[DensityRow]

    @property
    def passed(self) -> bool:
        return not any(row.flagged for row in self.rows)

    @property
    def ratios(self) -> dict[int, Fraction]:
        """count(Π_(s+1)) / count(Π_s) for every s >= 2 with count(Π_s) > 0."""
        return {
            s: Fraction(self.census.count(s + 1), self.census.count(s))
            for s in range(2, self.census.max_index)
            if self.census.count(s)
        }

    def dyadic_ratios(self, n: int = 3) -> dict[int, Fraction]:
        """The ratios for the first `n` indices where the profile is dyadic."""
        start = self.profile.dyadic_from
        return {s: r for s, r in self.ratios.items() if start <= s < start + n}


def compare(q: RationalTrace, limit: int, tolerance: float = None, threads: int = None,
            use_cache: bool = None) -> DensityReport:
    """Empirical class fractions against the exact profile, flagging every
    class whose absolute deviation exceeds `tolerance`.

    :raises TrivialTrace: for q in {0, ±1, ±2}
    :raises EmptyCensus: if no odd prime up to `limit` is admissible
    """
    tolerance = config.LIMITS.TOLERANCE if tolerance is None else tolerance
    profile = theoretical_densities(q)
    census = empirical_partition(q, limit, threads, use_cache)

    rows = []
    for s in range(max(census.max_index, profile.dyadic_from + 2) + 1):
        empirical = census.fraction(s)
        deviation = abs(empirical - profile.d(s))
        rows += [DensityRow(
            PartitionClass.pi(s), census.count(s), empirical, profile.d(s), deviation, deviation > tolerance,
        )]
    return DensityReport(Fraction(q), limit, tolerance, profile, census, rows)


GAMMA_RANGE = range(1, 5)


@dataclass
class CellCensus:
    q0: RationalTrace
    limit: int
    max_depth: int
    admissible: int
    excluded: int
    cells: dict[int, dict[Cell, int]] = field(default_factory=dict)
    """Cell sizes of the k-th table, k = 1..max_depth."""

    omega_plus: dict[int, int] = field(default_factory=dict)
    """|Ω_k^+ ∩ R_(k-1)|"""

    omega_minus: dict[int, int] = field(default_factory=dict)
    r_counts: dict[int, int] = field(default_factory=dict)
    """|R_k|, k = 0..max_depth"""

    r_gamma: dict[tuple[int, int], int] = field(default_factory=dict)
    """(k, s) -> |R_k ∩ Γ_(k-1+s)|"""

    r1z1_gamma: dict[int, int] = field(default_factory=dict)
    """s -> |(R_1 ∪ Z_1) ∩ Γ_s|"""

    coincide: dict[int, bool] = field(default_factory=dict)
    """k -> Ω_k^+ ∩ R_(k-1) = Ω_k^- ∩ R_(k-1) = R_k as prime sets"""

    violations: int | None = None
    """Cell-table containment failures; None when q0 is not primitive."""

    def fraction(self, count: int) -> Fraction:
        return Fraction(count, self.admissible)


def cell_census(q0: RationalTrace, limit: int, max_depth: int = 2, threads: int = None) -> CellCensus:
    """Tally the cell tables of q0 over the odd primes <= limit not dividing
    the denominator of q0 or q0^2 - 4."""
    q0 = Fraction(q0)
    if q0 in (2, -2):
        raise TrivialTrace(f'every prime divides {canonical(q0)}^2 - 4')
    if limit < 3:
        raise ValueError(f'census limit {limit} < 3')

    records = run_segments(
        cell_segment, 3, limit + 1, q0.numerator, q0.denominator, max_depth, threads=threads,
    )
    kept = [r for r in records if not r.excluded]
    census = CellCensus(q0, limit, max_depth, len(kept), len(records) - len(kept))
    if not census.admissible:
        raise EmptyCensus(f'no odd prime up to {limit} is admissible for the cell tables of {canonical(q0)}')
    primitive = is_primitive(q0)
    violations = 0

    for k in range(1, max_depth + 1):
        census.cells[k] = dict.fromkeys(Cell, 0)
        census.omega_plus[k] = census.omega_minus[k] = 0
        for s in GAMMA_RANGE:
            census.r_gamma[k, s] = 0
    census.r_counts = dict.fromkeys(range(max_depth + 1), 0)
    census.r1z1_gamma = dict.fromkeys(GAMMA_RANGE, 0)

    for r in kept:
        both = min(r.depth_plus, r.depth_minus)
        for k in range(max_depth + 1):
            if both >= k:
                census.r_counts[k] += 1
        for k in range(1, min(both + 1, max_depth) + 1):
            plus, minus = r.depth_plus >= k, r.depth_minus >= k
            census.omega_plus[k] += plus
            census.omega_minus[k] += minus
            cell = (Cell.BOTH_R if plus and minus else Cell.OMEGA_PLUS_ONLY if plus
                    else Cell.OMEGA_MINUS_ONLY if minus else Cell.NEITHER_Z)
            census.cells[k][cell] += 1
            if both >= k:
                for s in GAMMA_RANGE:
                    census.r_gamma[k, s] += r.gamma >= k - 1 + s
        if (r.depth_plus >= 1) == (r.depth_minus >= 1):
            for s in GAMMA_RANGE:
                census.r1z1_gamma[s] += r.gamma >= s
        if primitive:
            cls = decode_class(r.tag, r.s)
            checks = cell_containments(cls, r.depth_plus, r.depth_minus, r.p_hat_val2, max_depth)
            violations += sum(not ok for ok in checks.values())

    census.coincide = {
        k: census.cells[k][Cell.OMEGA_PLUS_ONLY] == census.cells[k][Cell.OMEGA_MINUS_ONLY] == 0
        for k in range(1, max_depth + 1)
    }
    census.violations = violations if primitive else None
    if violations:
        logger.warning(f'{violations} cell-table containment failures for {canonical(q0)} up to {limit}')
    return census


@dataclass(frozen=True)
class CellPrediction:
    omega: Fraction
    """|Ω_k^± ∩ R_(k-1)|"""

    r: Fraction
    """|R_k|"""

    r_gamma: dict[int, Fraction]
    """s -> |R_k ∩ Γ_(k-1+s)|"""

    r1z1_gamma: dict[int, Fraction]
    """s -> |(R_1 ∪ Z_1) ∩ Γ_s|"""


def predicted_cell_densities(q0: RationalTrace, k: int) -> CellPrediction:
    """Predicted cell densities of the k-th table for generic and case A, B, C traces."""
    if k < 1:
        raise ValueError(f'table depth {k} < 1')
    tag = classify_trace(q0).tag
    half = Fraction(1, 2)
    omega, r = half ** (2 * k - 1), half ** (2 * k)
    r_gamma = {s: half ** (2 * k + s) for s in GAMMA_RANGE}
    r1z1_gamma = {s: half ** (s + 1) for s in GAMMA_RANGE}

    match tag:
        case TraceTag.GENERIC:
            pass
        case TraceTag.CASE_A | TraceTag.CASE_B:
            if k == 2:
                omega, r = half ** 3, half ** 3
            elif k >= 3:
                omega, r = half ** (2 * k - 2), half ** (2 * k - 1)
            r_gamma = {s: 2 * v for s, v in r_gamma.items()}
            if tag == TraceTag.CASE_B:
                r1z1_gamma = {s: half ** s for s in GAMMA_RANGE}
        case TraceTag.CASE_C:
            if k == 1:
                omega, r = half, half
            else:
                omega, r = 2 * omega, 2 * r
            r_gamma = {s: 2 * v for s, v in r_gamma.items()}
            r1z1_gamma = {s: 2 * v for s, v in r1z1_gamma.items()}
        case _:
            raise ValueError(f'no cell prediction for {tag.value} traces')
    return CellPrediction(omega, r, r_gamma, r1z1_gamma)
