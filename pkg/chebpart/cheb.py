import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Callable, Iterator, Sequence

from sympy import Poly, cyclotomic_poly, divisors, symbols
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_gcd, gf_monic, gf_pow_mod, gf_quo, gf_sub

from chebpart.const import ChebKind
from chebpart.lib.arith import FpElement, RationalTrace
from chebpart.lib.exceptions import IdentityViolation, InvalidIndex, ZeroPolynomialModP
from chebpart.lib.matrix import companion, mat_pow

logger = logging.getLogger(__name__)

x = symbols('x')

C, U, V, W = ChebKind.FIRST_C, ChebKind.SECOND_U, ChebKind.THIRD_V, ChebKind.FOURTH_W


class IntPolynomial:
    """An integer polynomial in one variable, backed by a sympy ``Poly`` over ZZ.

    Coefficients are exposed constant term first.
    """

    __slots__ = ('poly',)

    def __init__(self, poly: Poly):
        self.poly = poly

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> 'IntPolynomial':
        return cls(Poly.from_list([int(c) for c in reversed(coeffs)] or [0], x, domain=ZZ))

    @classmethod
    def constant(cls, c: int) -> 'IntPolynomial':
        return cls.from_coeffs([c])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return -1 if self.poly.is_zero else int(self.poly.degree())

    def compose(self, other: 'IntPolynomial') -> 'IntPolynomial':
        """self(other(x))"""
        return IntPolynomial(self.poly.compose(other.poly))

    def __call__(self, value):
        result = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def eval_mod(self, value: int, p: int) -> int:
        result = 0
        for c in reversed(self.coeffs):
            result = (result * value + c) % p
        return result

    def __add__(self, other):
        return IntPolynomial(self.poly + _as_poly(other))

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        return IntPolynomial(self.poly - _as_poly(other))

    def __rsub__(self, other):
        return IntPolynomial(_as_poly(other) - self.poly)

    def __mul__(self, other):
        return IntPolynomial(self.poly * _as_poly(other))

    def __rmul__(self, other):
        return self * other

    def __neg__(self):
        return IntPolynomial(-self.poly)

    def __pow__(self, k: int):
        return IntPolynomial(self.poly ** k)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f'IntPolynomial({list(self.coeffs)})'

    def __str__(self):
        return render_polynomial(self.coeffs)


def _as_poly(other) -> Poly:
    if isinstance(other, IntPolynomial):
        return other.poly
    return Poly(other, x, domain=ZZ)


def render_polynomial(coeffs: Sequence[int], var: str = 'q') -> str:
    """Render as e.g. ``q^6-6q^4+9q^2-2``, highest degree first."""
    terms = []
    for n in range(len(coeffs) - 1, -1, -1):
        if not (c := coeffs[n]):
            continue
        sign = '-' if c < 0 else '+'
        mag = abs(c)
        if n == 0:
            body = str(mag)
        else:
            body = ('' if mag == 1 else str(mag)) + var + (f'^{n}' if n > 1 else '')
        terms += [(sign, body)]
    if not terms:
        return '0'
    first_sign, first_body = terms[0]
    return ('-' if first_sign == '-' else '') + first_body + ''.join(s + b for s, b in terms[1:])


X = IntPolynomial.from_coeffs([0, 1])


def check_index(kind: ChebKind, n: int) -> None:
    """:raises InvalidIndex: for n < 0, or an even or non-positive n with kinds V/W"""
    if n < 0:
        raise InvalidIndex(f'{kind.value}_{n}: negative index')
    if kind in (V, W) and (n < 1 or n % 2 == 0):
        raise InvalidIndex(f'{kind.value}_{n}: index must be odd and positive')


@lru_cache(maxsize=1024)
def cheb_coeffs(kind: ChebKind, n: int) -> IntPolynomial:
    """Exact coefficient vector of C_n, U_n, V_n or W_n."""
    check_index(kind, n)
    if kind == C:
        if n == 0:
            return IntPolynomial.constant(2)
        coeffs = [0] * (n + 1)
        for s in range(n // 2 + 1):
            coeffs[n - 2 * s] = (-1) ** s * (n * comb(n - s, s) // (n - s))
        return IntPolynomial.from_coeffs(coeffs)

    if kind == U:
        if n == 0:
            return IntPolynomial.constant(0)
        m = n - 1
        coeffs = [0] * n
        for s in range(m // 2 + 1):
            coeffs[m - 2 * s] = (-1) ** s * comb(m - s, s)
        return IntPolynomial.from_coeffs(coeffs)

    k = n // 2
    if kind == V:
        return cheb_coeffs(U, k + 1) - cheb_coeffs(U, k)
    return cheb_coeffs(U, k + 1) + cheb_coeffs(U, k)


def _matrix_eval(kind: ChebKind, n: int, q, modulus: int = None):
    if kind in (C, U):
        m = mat_pow(companion(q), n, modulus)
        # A^n = [[-U_{n-1}, U_n], [-U_n, U_{n+1}]]
        return m[1] if kind == U else m[0] + m[3]

    # second row of A^k·[[1, -1], [1, 1]] is [V_{2k+1}, W_{2k+1}]
    m = mat_pow(companion(q), n // 2, modulus)
    return m[2] + m[3] if kind == V else m[3] - m[2]


def cheb_eval(kind: ChebKind, n: int, q: RationalTrace) -> RationalTrace:
    """Exact value at a rational argument, by binary matrix exponentiation."""
    check_index(kind, n)
    return Fraction(_matrix_eval(kind, n, Fraction(q)))


def cheb_eval_mod(kind: ChebKind, n: int, q: FpElement) -> FpElement:
    """Value mod p; n may be arbitrarily large."""
    check_index(kind, n)
    p = q.modulus
    return FpElement(_matrix_eval(kind, n, q.value, p) % p, p)


@lru_cache(maxsize=256)
def chebotomic(k: int) -> IntPolynomial:
    """Ψ_k, with Ψ_k(z + 1/z) = z^(-φ(k)/2)·Φ_k(z).

    Φ_k is palindromic of degree 2m, so its coefficients c_0..c_2m give
    Ψ_k = c_m + Σ_{j=1..m} c_{m+j}·C_j.
    """
    if k < 3:
        raise InvalidIndex(f'Ψ_{k}: index must be at least 3')
    c = [int(v) for v in cyclotomic_poly(k, x, polys=True).all_coeffs()]
    m = len(c) // 2
    result = IntPolynomial.constant(c[m])
    for j in range(1, m + 1):
        result += c[m + j] * cheb_coeffs(C, j)
    return result


def reduce_mod(f: IntPolynomial, p: int) -> list:
    """Dense F_p coefficient list (highest degree first) in galoistools form."""
    return gf_from_int_poly([int(c) for c in f.poly.all_coeffs()], p)


def gf_splits(g: list, p: int) -> bool:
    """True iff the nonzero F_p polynomial `g` is a product of linear factors.

    Peels off gcd(g, x^p - x) until nothing is left, which also accounts for
    repeated roots.
    """
    _, g = gf_monic(g, p, ZZ)
    while len(g) > 1:
        xp = gf_pow_mod([ZZ(1), ZZ(0)], p, g, p, ZZ)
        h = gf_gcd(g, gf_sub(xp, [ZZ(1), ZZ(0)], p, ZZ), p, ZZ)
        if len(h) < 2:
            return False
        g = gf_quo(g, h, p, ZZ)
    return True


def splits_completely(f: IntPolynomial, p: int) -> bool:
    """:raises ZeroPolynomialModP: if every coefficient of `f` is divisible by p"""
    if not (g := reduce_mod(f, p)):
        raise ZeroPolynomialModP(f'{f} vanishes mod {p}')
    return gf_splits(g, p)


@dataclass
class IdentityRange:
    """Parameter ranges over which registered identities are checked."""

    n_max: int = 15
    k_max: int = 10
    samples: list[Fraction] = field(default_factory=list)
    t_values: list[Fraction] = field(default_factory=list)
    params: list[tuple[int, int]] = field(default_factory=list)

    @property
    def odd(self) -> range:
        return range(1, self.n_max + 1, 2)

    @property
    def ks(self) -> range:
        return range(1, self.k_max + 1)

    @property
    def circular(self) -> Iterator[tuple[Fraction, Fraction]]:
        """Rational points (q, w) on q² + w² = 4 from the t-parametrization."""
        for t in self.t_values:
            yield 2 * (1 - t * t) / (1 + t * t), 4 * t / (1 + t * t)

    @classmethod
    def sampled(cls, n_max: int = 15, k_max: int = 10, count: int = 10, seed: int = 0) -> 'IdentityRange':
        rng = random.Random(seed)
        samples = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(count)]
        t_values = []
        while len(t_values) < count:
            t = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if t not in (0, 1, -1):
                t_values += [t]
        params = []
        while len(params) < 5 * count:
            T, Q = rng.randint(-9, 9), rng.randint(-9, 9)
            if Q:
                params += [(T, Q)]
        return cls(n_max, k_max, samples, t_values, params)


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    instances: int


Checker = Callable[[IdentityRange], Iterator[tuple[dict, bool]]]

_identities: dict[str, Checker] = {}


def identity(name: str):
    """Register an identity checker: a generator of (instance, holds) pairs."""

    def decorator(checker: Checker) -> Checker:
        _identities[name] = checker
        return checker

    return decorator


def identity_names() -> list[str]:
    _load_external_identities()
    return list(_identities)


def _load_external_identities():
    from chebpart import lucas  # noqa: F401  registers the Dickson identities


def verify_identity(identity_id: str, ranges: IdentityRange = None) -> IdentityReport:
    """Check every instance of a registered identity with exact arithmetic.

    :raises IdentityViolation: on the first failing instance
    """
    _load_external_identities()
    try:
        checker = _identities[identity_id]
    except KeyError:
        raise ValueError(f'unknown identity {identity_id!r}')

    ranges = ranges or IdentityRange.sampled()
    instances = 0
    for instance, holds in checker(ranges):
        instances += 1
        if not holds:
            raise IdentityViolation(identity_id, instance)

    logger.debug(f'{identity_id}: {instances} instances hold')
    return IdentityReport(identity_id, instances)


def _ev(kind: ChebKind, n: int, q) -> Fraction:
    return cheb_eval(kind, n, q)


@identity('F1')
def _composition_c(r: IdentityRange):
    for q in r.samples:
        for k in r.ks:
            for l in r.ks:
                yield {'k': k, 'l': l, 'q': q}, _ev(C, k * l, q) == _ev(C, k, _ev(C, l, q))


@identity('F2')
def _composition_u(r: IdentityRange):
    for q in r.samples:
        for k in r.ks:
            for l in r.ks:
                yield {'k': k, 'l': l, 'q': q}, _ev(U, k * l, q) == _ev(U, k, q) * _ev(U, l, _ev(C, k, q))


@identity('F3')
def _wronskians(r: IdentityRange):
    for q in r.samples:
        for k in range(r.k_max + 1):
            yield {'k': k, 'q': q}, _ev(U, k + 1, q) * _ev(C, k, q) - _ev(C, k + 1, q) * _ev(U, k, q) == 2
        for n in r.odd:
            if n >= 3:
                lhs = _ev(W, n, q) * _ev(V, n - 2, q) - _ev(V, n, q) * _ev(W, n - 2, q)
                yield {'n': n, 'q': q}, lhs == 2


@identity('F4')
def _u_factorizations(r: IdentityRange):
    for q in r.samples:
        for n in r.odd:
            yield {'n': n, 'q': q}, _ev(U, n, q) == _ev(V, n, q) * _ev(W, n, q)
        for k in r.ks:
            yield {'k': k, 'q': q}, _ev(U, 2 * k, q) == _ev(C, k, q) * _ev(U, k, q)


@identity('F5')
def _shifted_squares(r: IdentityRange):
    for q in r.samples:
        for n in r.odd:
            yield {'n': n, 'q': q, 'sign': '-'}, _ev(C, n, q) - 2 == (q - 2) * _ev(W, n, q) ** 2
            yield {'n': n, 'q': q, 'sign': '+'}, _ev(C, n, q) + 2 == (q + 2) * _ev(V, n, q) ** 2


@identity('F6')
def _composition_vw(r: IdentityRange):
    for q in r.samples:
        for n in r.odd:
            for m in r.odd:
                cm = _ev(C, m, q)
                yield {'n': n, 'm': m, 'q': q, 'kind': 'V'}, _ev(V, n * m, q) == _ev(V, m, q) * _ev(V, n, cm)
                yield {'n': n, 'm': m, 'q': q, 'kind': 'W'}, _ev(W, n * m, q) == _ev(W, m, q) * _ev(W, n, cm)


@identity('F7')
def _twin_vw(r: IdentityRange):
    for q in r.samples:
        for n in r.odd:
            sign = (-1) ** ((n - 1) // 2)
            yield {'n': n, 'q': q}, _ev(V, n, -q) == sign * _ev(W, n, q)


@identity('F8')
def _circular_quarter_turn(r: IdentityRange):
    for q, w in r.circular:
        for n in r.odd:
            sign = (-1) ** ((n - 1) // 2)
            yield {'n': n, 'q': q, 'w': w}, w * _ev(U, n, q) == sign * _ev(C, n, w)
    # circular pairs (r, s): 2 + q = r², 2 - q = s² with r² + s² = 4
    for rr, ss in r.circular:
        for n in r.odd:
            sign = (-1) ** ((n - 1) // 2)
            yield {'n': n, 'r': rr, 's': ss}, _ev(C, n, rr) == sign * rr * _ev(U, n, ss)


@identity('F9')
def _pythagorean(r: IdentityRange):
    for q in r.samples + [t + 1 / t for t in r.t_values]:
        for k in range(r.k_max + 1):
            yield {'k': k, 'q': q}, _ev(C, k, q) ** 2 + (4 - q * q) * _ev(U, k, q) ** 2 == 4


@identity('PARITY')
def _parity(r: IdentityRange):
    for q in r.samples:
        for n in range(41):
            sign = (-1) ** n
            yield {'n': n, 'q': q, 'kind': 'C'}, _ev(C, n, -q) == sign * _ev(C, n, q)
            yield {'n': n, 'q': q, 'kind': 'U'}, _ev(U, n + 1, -q) == sign * _ev(U, n + 1, q)
            yield {'n': n, 'q': q, 'kind': 'V'}, _ev(V, 2 * n + 1, -q) == sign * _ev(W, 2 * n + 1, q)


@identity('SUBSTITUTION')
def _substitution(r: IdentityRange):
    for t in r.t_values:
        q = t + 1 / t
        for k in range(r.k_max + 1):
            yield {'kind': 'C', 'k': k, 't': t}, _ev(C, k, q) == t ** k + t ** -k
            if k >= 1:
                yield {'kind': 'U', 'k': k, 't': t}, _ev(U, k, q) == (t ** k - t ** -k) / (t - 1 / t)
        for n in r.odd:
            num_v = t ** ((n + 1) // 2) + t ** (-(n - 1) // 2)
            num_w = t ** ((n + 1) // 2) - t ** (-(n - 1) // 2)
            yield {'kind': 'V', 'n': n, 't': t}, _ev(V, n, q) == num_v / (t + 1)
            yield {'kind': 'W', 'n': n, 't': t}, _ev(W, n, q) == num_w / (t - 1)


@identity('CHEBOTOMIC')
def _chebotomic_factorizations(r: IdentityRange):
    for n in r.odd:
        proper = [d for d in divisors(n) if d > 1]
        yield {'kind': 'W', 'n': n}, cheb_coeffs(W, n) == _product(chebotomic(d) for d in proper)
        yield {'kind': 'V', 'n': n}, cheb_coeffs(V, n) == _product(chebotomic(2 * d) for d in proper)
        for l in range(4):
            expected = _product(chebotomic(2 ** (l + 2) * d) for d in divisors(n))
            yield {'kind': 'C', 'n': n, 'l': l}, cheb_coeffs(C, 2 ** l * n) == expected


@identity('U_DYADIC')
def _u_dyadic(r: IdentityRange):
    for n in range(1, 7):
        expected = _product(cheb_coeffs(C, 2 ** j) for j in range(n))
        yield {'n': n}, cheb_coeffs(U, 2 ** n) == expected


@identity('PRIME_COEFFS')
def _prime_coeffs(r: IdentityRange):
    for p in (2, 3, 5, 7, 11, 13):
        coeffs = cheb_coeffs(C, p).coeffs
        yield {'p': p}, all(c % p == 0 for c in coeffs[:-1])


@identity('MATRIX_AGREEMENT')
def _matrix_agreement(r: IdentityRange):
    for q in r.samples:
        for kind in ChebKind:
            for n in range(65):
                if kind in (V, W) and n % 2 == 0:
                    continue
                yield {'kind': kind.value, 'n': n, 'q': q}, cheb_coeffs(kind, n)(q) == _ev(kind, n, q)


def _product(polys: Iterator[IntPolynomial]) -> IntPolynomial:
    return prod(polys, start=IntPolynomial.constant(1))
