"""Independent oracles: plain recurrences and exhaustive search over F_p."""
from fractions import Fraction

from chebpart.const import ChebKind


def recurrence_value(kind: ChebKind, n: int, q: Fraction) -> Fraction:
    """X_(n+1) = q·X_n - X_(n-1) from the textbook starting values; V and W
    satisfy the same recurrence in k for n = 2k + 1."""
    q = Fraction(q)
    if kind in (ChebKind.THIRD_V, ChebKind.FOURTH_W):
        x0, x1 = (Fraction(1), q - 1) if kind == ChebKind.THIRD_V else (Fraction(1), q + 1)
        for _ in range(n // 2):
            x0, x1 = x1, q * x1 - x0
        return x0
    x0, x1 = (Fraction(2), q) if kind == ChebKind.FIRST_C else (Fraction(0), Fraction(1))
    for _ in range(n):
        x0, x1 = x1, q * x1 - x0
    return x0


def residue(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


def first_zero(q: Fraction, p: int) -> int:
    """Least k >= 1 with U_k(q) = 0 mod p."""
    qv = residue(q, p)
    u_prev, u, k = 0, 1, 1
    while u:
        u_prev, u = u, (qv * u - u_prev) % p
        k += 1
    return k


def square_roots(a: int, p: int) -> set[int]:
    return {x for x in range(p) if (x * x - a) % p == 0}


def root_count(coeffs: list[int], p: int) -> int:
    """Roots in F_p of the polynomial with the given coefficients, constant term first."""
    return sum(
        1 for x in range(p)
        if sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0
    )


def has_preimage_chain(target: int, p: int, depth: int) -> bool:
    """Some a in F_p reaches `target` after `depth` applications of x -> x² - 2."""
    values = set(range(p))
    for _ in range(depth):
        values = {(x * x - 2) % p for x in values}
    return target % p in values
