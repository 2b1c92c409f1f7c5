from dataclasses import dataclass
from typing import NamedTuple

from chebpart.cheb import C, U, V, W, cheb_eval_mod
from chebpart.lib import matrix
from chebpart.lib.arith import FpElement, RationalTrace, factorize, is_odd_prime, legendre_rational, rational_mod
from chebpart.lib.exceptions import IdentityViolation, Unresolved


class Mat2Fp(NamedTuple):
    a11: int
    a12: int
    a21: int
    a22: int
    modulus: int

    @property
    def entries(self) -> matrix.Mat2:
        return self.a11, self.a12, self.a21, self.a22

    @property
    def determinant(self) -> int:
        return (self.a11 * self.a22 - self.a12 * self.a21) % self.modulus

    def is_scalar(self) -> bool:
        return self.a12 == 0 and self.a21 == 0 and self.a11 == self.a22

    @classmethod
    def scalar(cls, s: int, p: int) -> 'Mat2Fp':
        return cls(s % p, 0, 0, s % p, p)


def companion_matrix(q: FpElement) -> Mat2Fp:
    """[[0, 1], [-1, q]] mod p"""
    p = q.modulus
    return Mat2Fp(*(v % p for v in matrix.companion(q.value)), p)


def mat_pow(a: Mat2Fp, n: int) -> Mat2Fp:
    p = a.modulus
    return Mat2Fp(*(v % p for v in matrix.mat_pow(a.entries, n, p)), p)


def _power(qv: int, n: int, p: int) -> matrix.Mat2:
    return matrix.mat_pow(matrix.companion(qv), n, p)


def _is_scalar(m: matrix.Mat2) -> bool:
    return m[1] == 0 and m[2] == 0 and m[0] == m[3]


def _delta_symbol(q: RationalTrace, p: int) -> int:
    return legendre_rational(q * q - 4, p)


@dataclass(frozen=True)
class EulerCriterion:
    delta_symbol: int
    exponent: int
    scalar: int
    """The scalar A^exponent should equal: (q+2|p) or q/2 mod p."""

    verified: bool


def euler_criterion(q: RationalTrace, p: int) -> EulerCriterion:
    """Compare A^((p-(δ|p))/2) (or A^p when p | δ) with the scalar predicted
    by the Legendre symbol (q+2|p) (or by q/2)."""
    qv = rational_mod(q, p).value
    if delta := _delta_symbol(q, p):
        exponent = (p - delta) // 2
        scalar = legendre_rational(q + 2, p) % p
    else:
        exponent = p
        scalar = rational_mod(q / 2, p).value

    m = _power(qv, exponent, p)
    return EulerCriterion(delta, exponent, scalar, m == (scalar, 0, 0, scalar))


@dataclass(frozen=True)
class CongruenceReport:
    q: RationalTrace
    p: int
    lines: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.lines.values())


def congruence_suite(q: RationalTrace, p: int) -> CongruenceReport:
    """The four prime-index congruences for C_p, V_p, W_p and U_p."""
    qp = rational_mod(q, p)
    return CongruenceReport(q, p, {
        'C_p = q': cheb_eval_mod(C, p, qp).value == qp.value,
        'V_p = (q+2|p)': cheb_eval_mod(V, p, qp).value == legendre_rational(q + 2, p) % p,
        'W_p = (q-2|p)': cheb_eval_mod(W, p, qp).value == legendre_rational(q - 2, p) % p,
        'U_p = (q^2-4|p)': cheb_eval_mod(U, p, qp).value == _delta_symbol(q, p) % p,
    })


@dataclass(frozen=True)
class AppearanceIndex:
    xi: int
    sign_at_xi: int
    delta_symbol: int


def _sign(s: int, p: int, q, xi: int) -> int:
    if s == 1:
        return 1
    if s == p - 1:
        return -1
    raise IdentityViolation('A^xi = ±I', {'q': q, 'p': p, 'xi': xi, 'scalar': s})


def appearance_index(q: RationalTrace, p: int, factor_bound: int = None) -> AppearanceIndex:
    """The least ξ ≥ 1 with U_ξ(q) = 0 mod p.

    For p ∤ δ, A^((p-(δ|p))/2) is scalar, so ξ divides that order and is
    found by stripping prime factors while A^d stays scalar. For p | δ, ξ = p.

    :raises DenominatorDivisible: if p divides the denominator of q
    :raises FactoringBoundExceeded: if (p-(δ|p))/2 cannot be factored
    """
    qv = rational_mod(q, p).value
    if delta := _delta_symbol(q, p):
        xi = (p - delta) // 2
        for ell, _ in factorize(xi, factor_bound):
            while xi % ell == 0 and _is_scalar(_power(qv, xi // ell, p)):
                xi //= ell
    else:
        xi = p

    m = _power(qv, xi, p)
    if not _is_scalar(m):
        raise IdentityViolation('A^xi scalar', {'q': q, 'p': p, 'xi': xi})
    return AppearanceIndex(xi, _sign(m[3], p, q, xi), delta)


def appearance_index_scan(q: RationalTrace, p: int) -> AppearanceIndex:
    """Linear scan of U_k(q) mod p; O(p), kept as an oracle."""
    qv = rational_mod(q, p).value
    u_prev, u = 0, 1
    for k in range(1, 2 * p + 3):
        if u == 0:
            u_next = (qv * u - u_prev) % p
            return AppearanceIndex(k, _sign(u_next, p, q, k), _delta_symbol(q, p))
        u_prev, u = u, (qv * u - u_prev) % p
    raise Unresolved(f'no zero of U_k({q}) mod {p} for k <= {2 * p + 2}')


def corollary_suite(q: RationalTrace, p: int) -> dict[str, bool]:
    """Divisibility refinements of ξ(p), the congruence p = (δ|p) mod ξ(p),
    and ξ = r when p - (δ|p) = 2r with r prime.

    Only the statements whose hypotheses hold for (q, p) are reported.
    """
    ai = appearance_index(q, p)
    xi, delta = ai.xi, ai.delta_symbol
    checks = {'p = (δ|p) mod ξ': (p - delta) % xi == 0}
    if not delta:
        checks['ξ = p'] = xi == p
        return checks

    checks['2ξ | p-(δ|p)'] = (p - delta) % (2 * xi) == 0
    quotient_odd = ((p - delta) // (2 * xi)) % 2 == 1
    if legendre_rational(q + 2, p) == -1:
        checks['(q+2|p) = -1 => odd quotient'] = quotient_odd
    in_pi0 = xi % 2 == 1 and ai.sign_at_xi == 1
    if not in_pi0 and quotient_odd:
        checks['odd quotient outside Pi0 => (q+2|p) = -1'] = legendre_rational(q + 2, p) == -1
    if (p - delta) % 4 == 2:
        checks['p-(δ|p) = 2 mod 4 => ξ odd'] = xi % 2 == 1
    r = (p - delta) // 2
    if r == 2 or is_odd_prime(r):
        checks['p-(δ|p) = 2r, r prime => ξ = r'] = xi == r
    return checks

