"""Orbits on the circle q² + w² = 4 and of the interval maps q -> C_m(q),
with the prime divisors of their numerators."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from chebpart.cheb import C, U, cheb_eval
from chebpart.config import config
from chebpart.const import OrbitMap
from chebpart.lib.arith import Factorization, RationalTrace, canonical, primes_up_to, trial_factor
from chebpart.lib.exceptions import IdentityViolation, InvalidIndex, NotOnCircle, TrivialStartingPoint
from chebpart.partition import classify_prime
from chebpart.traceclass import TRIVIAL_TRACES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitPoint:
    n: int
    q: RationalTrace
    w: RationalTrace | None
    numerator: int
    exponent: int
    """The denominator of q is b^exponent, b the denominator of the start."""


@dataclass
class Orbit:
    kind: OrbitMap
    degree: int
    """m of q -> C_m(q); 1 for the rotation."""

    start: RationalTrace
    points: list[OrbitPoint] = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, n: int) -> OrbitPoint:
        return self.points[n]


def _check_circle(q: RationalTrace, w: RationalTrace) -> None:
    if q * q + w * w != 4:
        raise NotOnCircle(f'{canonical(q)}² + {canonical(w)}² != 4')


def _point(n: int, q: RationalTrace, w: RationalTrace | None, b: int, exponent: int) -> OrbitPoint:
    if q.denominator != b ** exponent:
        raise IdentityViolation('orbit denominator', {'n': n, 'q': canonical(q), 'exponent': exponent})
    if w is not None and q * q + w * w != 4:
        raise IdentityViolation('circle conservation', {'n': n, 'q': canonical(q), 'w': canonical(w)})
    return OrbitPoint(n, q, w, q.numerator, exponent)


def rotation_orbit(q1: RationalTrace, w1: RationalTrace = None, steps: int = None) -> Orbit:
    """Powers of the rotation z -> z1·z/2 from z = 2: q_n = C_n(q1), w_n = w1·U_n(q1).

    Without w1 only the real parts are produced.

    :raises NotOnCircle: if q1² + w1² != 4
    """
    q1 = Fraction(q1)
    steps = config.LIMITS.ORBIT_STEPS if steps is None else steps
    if w1 is not None:
        w1 = Fraction(w1)
        _check_circle(q1, w1)
    if q1 in TRIVIAL_TRACES:
        logger.warning(f'rotation by {canonical(q1)} is periodic')

    orbit = Orbit(OrbitMap.ROTATION, 1, q1)
    b = q1.denominator
    c_prev, c = Fraction(2), q1
    u_prev, u = Fraction(0), Fraction(1)
    orbit.points += [_point(0, c_prev, None if w1 is None else Fraction(0), b, 0)]
    for n in range(1, steps + 1):
        orbit.points += [_point(n, c, None if w1 is None else w1 * u, b, n)]
        c_prev, c = c, q1 * c - c_prev
        u_prev, u = u, q1 * u - u_prev
    return orbit


def chebyshev_map_orbit(m: int, q0: RationalTrace, steps: int = None, w0: RationalTrace = None) -> Orbit:
    """Iterates of q -> C_m(q) from q0, so q_n = C_(m^n)(q0).

    A circular start (q0, w0) also carries w_n = w0·U_(m^n)(q0), obtained
    step by step from U_(m^n) = U_(m^(n-1))·U_m(C_(m^(n-1))).

    :raises TrivialStartingPoint: for q0 in {0, ±1, ±2}
    :raises NotOnCircle: if q0² + w0² != 4
    """
    if m < 2:
        raise InvalidIndex(f'map degree {m} < 2')
    q0 = Fraction(q0)
    if q0 in TRIVIAL_TRACES:
        raise TrivialStartingPoint(f'{canonical(q0)} is periodic or pre-periodic under C_{m}')
    if w0 is not None:
        w0 = Fraction(w0)
        _check_circle(q0, w0)
    steps = config.LIMITS.ORBIT_STEPS if steps is None else steps

    orbit = Orbit(OrbitMap.CHEB, m, q0)
    b = q0.denominator
    q, w = q0, w0
    for n in range(steps + 1):
        if 0 < n <= 5 and q != cheb_eval(C, m ** n, q0):
            raise IdentityViolation('iterated composition', {'m': m, 'n': n, 'q0': canonical(q0)})
        orbit.points += [_point(n, q, w, b, m ** n)]
        if w is not None:
            w *= cheb_eval(U, m, q)
        q = cheb_eval(C, m, q)
    logger.debug(f'C_{m} orbit of {canonical(q0)}: {steps} steps, {orbit[-1].numerator.bit_length()} bit numerator')
    return orbit


@dataclass(frozen=True)
class StepFactors:
    n: int
    numerator: int
    factors: Factorization
    cofactor: int
    """Unfactored part left by trial division, 1 when complete."""

    @property
    def odd_primes(self) -> list[int]:
        return [p for p, _ in self.factors if p != 2]


@dataclass
class DivisorReport:
    orbit: Orbit
    factor_bound: int
    steps: list[StepFactors]
    bound_violations: list[tuple[int, int]]
    """(n, p) with p | a_n below 2^(n+1) - 1."""

    gcd_violations: list[tuple[int, int, int]]
    """(i, j, gcd(a_i, a_j)) outside {1, 2}."""

    distinct_primes: int
    prime_count: int
    """Odd primes up to factor_bound, the ones trial division could have found."""

    classes: dict[str, int] | None = None
    """Rotation orbits: the classes of the divisors for q1."""

    @property
    def passed(self) -> bool:
        return not self.bound_violations and not self.gcd_violations

    @property
    def unfactored(self) -> list[int]:
        return [s.n for s in self.steps if s.cofactor > 1]


def orbit_divisor_report(orbit: Orbit, factor_bound: int = None) -> DivisorReport:
    """Factor every numerator up to `factor_bound` and check the divisor laws.

    For q -> C_2(q) every odd p | a_n satisfies p >= 2^(n+1) - 1; for even m
    the numerators are coprime up to 2. For the rotation the numerators of
    odd and even steps are coprime up to 2, and each divisor is classified
    for q1 (a divisor of C_n(q1) lies in some Π_s, s >= 2).
    """
    factor_bound = factor_bound or config.LIMITS.FACTOR_BOUND
    steps = []
    for point in orbit:
        if point.numerator == 0:
            steps += [StepFactors(point.n, 0, [], 0)]
            continue
        factors, cofactor = trial_factor(abs(point.numerator), factor_bound)
        steps += [StepFactors(point.n, point.numerator, factors, cofactor)]

    bound_violations = []
    if orbit.kind == OrbitMap.CHEB and orbit.degree == 2:
        for step in steps:
            bound_violations += [(step.n, p) for p in step.odd_primes if p < 2 ** (step.n + 1) - 1]

    if orbit.kind == OrbitMap.ROTATION:
        pairs = [(i, j) for i, j in combinations(steps, 2) if (i.n - j.n) % 2]
    elif orbit.degree % 2 == 0:
        pairs = list(combinations(steps, 2))
    else:
        pairs = []
    gcd_violations = [
        (i.n, j.n, g) for i, j in pairs
        if i.numerator and j.numerator and (g := gcd(i.numerator, j.numerator)) not in (1, 2)
    ]

    distinct = sorted({p for step in steps for p in step.odd_primes})
    classes = None
    if orbit.kind == OrbitMap.ROTATION:
        classes = {}
        for p in distinct:
            name = str(classify_prime(orbit.start, p))
            classes[name] = classes.get(name, 0) + 1

    report = DivisorReport(
        orbit, factor_bound, steps, bound_violations, gcd_violations,
        len(distinct), len(primes_up_to(factor_bound)) - 1, classes,
    )
    if not report.passed:
        logger.warning(f'{orbit.kind.value} orbit of {canonical(orbit.start)}: '
                       f'{len(bound_violations)} bound and {len(gcd_violations)} gcd violations')
    return report
