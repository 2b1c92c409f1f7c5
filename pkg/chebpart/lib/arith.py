import re
from fractions import Fraction
from functools import lru_cache
from math import isqrt, prod
from typing import Iterator, NamedTuple

import numpy as np

from chebpart.config import config
from chebpart.lib.exceptions import DenominatorDivisible, FactoringBoundExceeded, InvalidRational

RationalTrace = Fraction
"""Exact rational q = a/b in lowest terms (b >= 1, zero is 0/1)."""

Factorization = list[tuple[int, int]]
"""Ordered (prime, exponent) pairs."""

_rational_re = re.compile(r'[+-]?\d+(/\d+)?')


class FpElement(NamedTuple):
    value: int
    modulus: int

    @classmethod
    def of(cls, value: int, modulus: int) -> 'FpElement':
        return cls(value % modulus, modulus)


def parse_rational(text: str) -> RationalTrace:
    """Parse "a/b" or "a" with an optional sign; whitespace is rejected.

    :raises InvalidRational: if the text is malformed or b is zero
    """
    if not _rational_re.fullmatch(text):
        raise InvalidRational(f'cannot parse {text!r}')
    numerator, _, denominator = text.partition('/')
    if denominator and int(denominator) == 0:
        raise InvalidRational(f'zero denominator in {text!r}')
    return Fraction(int(numerator), int(denominator or 1))


def canonical(q: RationalTrace) -> str:
    return str(Fraction(q))


def simple_sieve(limit: int) -> np.ndarray:
    """Classic sieve up to `limit` (inclusive), returning primes as an int64 array."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@lru_cache(maxsize=16)
def _sieved(bound: int) -> tuple[int, ...]:
    return tuple(simple_sieve(bound).tolist())


def base_primes(bound: int) -> tuple[int, ...]:
    """All primes <= `bound` (and possibly a few more), from a cached table."""
    return _sieved(1 << max(bound, 2).bit_length())


def segment_plan(low: int, high: int, span: int) -> Iterator[tuple[int, int, int]]:
    """Yield (idx, low, high_exclusive) segments covering [low, high)."""
    idx = 0
    while low < high:
        yield idx, low, min(low + span, high)
        low += span
        idx += 1


def primes_in_range(low: int, high: int) -> list[int]:
    """Primes p with low <= p < high, by an odd-only segment sieve."""
    primes = [2] if low <= 2 < high else []
    low = max(low, 3) | 1
    if low >= high:
        return primes

    mask = np.ones((high - low + 1) // 2, dtype=bool)
    for p in base_primes(isqrt(high - 1)):
        if p == 2:
            continue
        if (p2 := p * p) >= high:
            break
        start = max(p2, -(-low // p) * p)
        if start % 2 == 0:
            start += p
        if start < high:
            mask[(start - low) // 2::p] = False

    return primes + (low + 2 * np.flatnonzero(mask)).tolist()


def primes_up_to(limit: int) -> list[int]:
    """Exactly the primes <= `limit`, ascending; empty for limit < 2."""
    primes = []
    for _, low, high in segment_plan(2, limit + 1, 2 * config.CENSUS.CHUNK_SIZE):
        primes += primes_in_range(low, high)
    return primes


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    for p in base_primes(isqrt(n)):
        if p * p > n:
            break
        if n % p == 0:
            return False
    return True


def trial_factor(n: int, bound: int = None) -> tuple[Factorization, int]:
    """Trial division of `n` up to `bound`; returns the primes found and the
    cofactor, which is 1 unless it may still be composite.

    :param n: a positive integer
    :param bound: largest trial divisor; defaults to config.LIMITS.FACTOR_BOUND
    """
    if n < 1:
        raise ValueError(f'cannot factorize {n}')
    limit = min(isqrt(n), bound or config.LIMITS.FACTOR_BOUND)
    factors = []
    for p in base_primes(limit):
        if p > limit or p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors += [(p, e)]

    if n > 1 and isqrt(n) <= limit:
        factors += [(n, 1)]
        n = 1

    return factors, n


def factorize(n: int, bound: int = None) -> Factorization:
    """Complete prime factorization of `n` by trial division.

    :raises FactoringBoundExceeded: if a cofactor could still be composite
    """
    factors, rest = trial_factor(n, bound)
    if rest > 1:
        raise FactoringBoundExceeded(f'cofactor {rest} after trial division to {bound or config.LIMITS.FACTOR_BOUND}')
    return factors


def squarefree_decomposition(n: int, bound: int = None) -> tuple[int, int]:
    """Return (a, P) with n = a·P², a squarefree and carrying the sign of n."""
    if n == 0:
        raise ValueError('zero has no squarefree decomposition')
    factors = factorize(abs(n), bound)
    a = prod(p for p, e in factors if e % 2)
    P = prod(p ** (e // 2) for p, e in factors)
    return (a if n > 0 else -a), P


def rational_mod(q: RationalTrace, p: int) -> FpElement:
    """a·b^-1 mod p for q = a/b.

    :raises DenominatorDivisible: if p divides b
    """
    if q.denominator % p == 0:
        raise DenominatorDivisible(f'{p} divides the denominator of {q}')
    return FpElement(q.numerator * pow(q.denominator, -1, p) % p, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) by Euler's criterion."""
    if (a := a % p) == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def legendre_rational(q: RationalTrace, p: int) -> int:
    """(q|p) for q = a/b, defined as the symbol of a·b.

    :raises DenominatorDivisible: if p divides b
    """
    if q.denominator % p == 0:
        raise DenominatorDivisible(f'{p} divides the denominator of {q}')
    return legendre(q.numerator * q.denominator, p)


def mod_sqrt(a: int, p: int) -> int | None:
    """A square root of `a` modulo the odd prime `p`, or None.

    Tonelli-Shanks, with the closed forms for p = 3 mod 4 and p = 5 mod 8.
    """
    if (a := a % p) == 0:
        return 0
    if legendre(a, p) != 1:
        return None

    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    if p % 8 == 5:
        x = pow(a, (p + 3) // 8, p)
        if x * x % p != a:
            x = x * pow(2, (p - 1) // 4, p) % p
        return x

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, t2i = 0, t
        while t2i != 1:
            t2i = t2i * t2i % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def sqrt_mod(a: FpElement) -> FpElement | None:
    """The smaller square root of `a`, or None for a non-residue."""
    if (x := mod_sqrt(a.value, a.modulus)) is None:
        return None
    return FpElement(min(x, a.modulus - x), a.modulus)


def two_adic_valuation(n: int) -> tuple[int, int]:
    """Return (s, odd_part) with n = 2^s·odd_part."""
    if n < 1:
        raise ValueError(f'{n} is not a positive integer')
    s = (n & -n).bit_length() - 1
    return s, n >> s


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_square_rational(q: RationalTrace) -> bool:
    return q >= 0 and is_square(q.numerator) and is_square(q.denominator)


def rational_sqrt(q: RationalTrace) -> RationalTrace | None:
    """The non-negative rational square root of `q`, if there is one."""
    if not is_square_rational(q):
        return None
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))
