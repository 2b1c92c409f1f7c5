import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from chebpart.cheb import C, U, V, W, IdentityRange, cheb_eval, identity
from chebpart.const import DicksonKind, TraceTag
from chebpart.lib import matrix
from chebpart.lib.arith import FpElement, RationalTrace, is_square, squarefree_decomposition, two_adic_valuation
from chebpart.lib.exceptions import ExcludedPrime, IdentityViolation, TraceClassificationError, Unresolved
from chebpart.partition import PI0, PI1, PartitionClass, classify_prime
from chebpart.traceclass import TraceClassification, classify_trace

logger = logging.getLogger(__name__)

L, K = DicksonKind.L, DicksonKind.K


@dataclass(frozen=True)
class LucasParams:
    """An integer pair (T, Q): the trace and determinant of a 2x2 integer matrix."""

    T: int
    Q: int

    def __post_init__(self):
        if self.Q == 0:
            raise ValueError('the determinant Q must be nonzero')

    @property
    def D(self) -> int:
        return self.T * self.T - 4 * self.Q

    def __str__(self):
        return f'({self.T},{self.Q})'


@dataclass(frozen=True)
class SimpleValue:
    """The representative (sign·a·P, a·R) of a similarity class, with
    q + 2 = a·P²/R, a squarefree and gcd(R, P) = gcd(R, a) = 1."""

    a: int
    P: int
    R: int
    sign: int = 1

    @property
    def params(self) -> LucasParams:
        return LucasParams(self.sign * self.a * self.P, self.a * self.R)


def _sequence(kind: DicksonKind, n: int, T: int, Q: int) -> int:
    x0, x1 = (0, 1) if kind == L else (2, T)
    if n == 0:
        return x0
    for _ in range(n - 1):
        x0, x1 = x1, T * x1 - Q * x0
    return x1


def dickson(kind: DicksonKind, n: int, params: LucasParams) -> int:
    """L_n or K_n by the recurrence X_(n+1) = T·X_n - Q·X_(n-1)."""
    if n < 0:
        raise ValueError(f'negative index {n}')
    return _sequence(kind, n, params.T, params.Q)


def _matrix_value(kind: DicksonKind, n: int, params: LucasParams, modulus: int = None) -> int:
    # A^n = [[-Q·L_(n-1), L_n], [-Q·L_n, L_(n+1)]]
    m = matrix.mat_pow(matrix.companion(params.T, params.Q), n, modulus)
    return m[1] if kind == L else matrix.trace(m)


def dickson_matrix(kind: DicksonKind, n: int, params: LucasParams) -> int:
    if n < 0:
        raise ValueError(f'negative index {n}')
    return _matrix_value(kind, n, params)


def dickson_mod(kind: DicksonKind, n: int, params: LucasParams, p: int) -> FpElement:
    if n < 0:
        raise ValueError(f'negative index {n}')
    return FpElement(_matrix_value(kind, n, params, p) % p, p)


def trace_of(params: LucasParams) -> RationalTrace:
    """q = T²/Q - 2"""
    return Fraction(params.T * params.T, params.Q) - 2


def similar(p1: LucasParams, p2: LucasParams) -> bool:
    return p1.T * p1.T * p2.Q == p2.T * p2.T * p1.Q


def simple_values(params: LucasParams, factor_bound: int = None) -> tuple[SimpleValue, SimpleValue]:
    """The two simple representatives (±a·P, a·R) of the class of (T, Q).

    The sign of q + 2 is carried by a, so R stays positive.

    :raises FactoringBoundExceeded: if the numerator of q + 2 cannot be factored
    """
    if params.T == 0:
        a, P, R = (1 if params.Q > 0 else -1), 0, 1
    else:
        q2 = Fraction(params.T * params.T, params.Q)
        a, P = squarefree_decomposition(q2.numerator, factor_bound)
        R = q2.denominator
    return SimpleValue(a, P, R, 1), SimpleValue(a, P, R, -1)


def twin_params(params: LucasParams) -> LucasParams:
    """(D, -D·Q), or (0, Q) when D = 0."""
    if (d := params.D) == 0:
        return LucasParams(0, params.Q)
    return LucasParams(d, -d * params.Q)


def square_params(params: LucasParams) -> LucasParams:
    """(T² - 2Q, Q²), whose trace is q² - 2."""
    return LucasParams(params.T * params.T - 2 * params.Q, params.Q * params.Q)


def root_params(params: LucasParams) -> tuple[LucasParams, ...]:
    """For Q = R², the pairs (2R ± T, (2R ± T)·R), whose traces ±T/R are the roots of q."""
    if not is_square(params.Q):
        return ()
    r = isqrt(params.Q)
    return tuple(
        LucasParams(u, u * r)
        for u in (2 * r + params.T, 2 * r - params.T)
        if u
    )


GENERICITY_CONDITIONS = ('Q', '-D', '-DQ', '2Q', '-2D', '-2QD')


def genericity_flags(params: LucasParams) -> dict[str, bool]:
    """Which of Q, -D, -DQ, 2Q, -2D, -2QD are squares.

    They stand for 2+q, (2+q)(2-q), 2-q, 2(2+q), 2(2+q)(2-q) and 2(2-q).
    """
    Q, D = params.Q, params.D
    values = (Q, -D, -D * Q, 2 * Q, -2 * D, -2 * Q * D)
    return {name: is_square(v) for name, v in zip(GENERICITY_CONDITIONS, values)}


def genericity_from_squares(flags: dict[str, bool]) -> TraceTag:
    """Translate the six square conditions into a trace tag; trivial traces
    are not recognizable from the flags alone."""
    if flags['Q']:
        return TraceTag.HAS_ROOT
    if flags['-DQ']:
        return TraceTag.TWIN_HAS_ROOT
    if flags['-D']:
        return TraceTag.CIRCULAR_NON_PRIMITIVE if flags['2Q'] else TraceTag.CASE_C
    if flags['-2D']:
        return TraceTag.CASE_B
    if flags['2Q'] or flags['-2QD']:
        return TraceTag.CASE_A
    return TraceTag.GENERIC


@dataclass(frozen=True)
class ParamsClassification:
    params: LucasParams
    classification: TraceClassification
    flags: dict[str, bool]

    @property
    def squares(self) -> list[str]:
        return [name for name, hit in self.flags.items() if hit]


def classify_params(params: LucasParams) -> ParamsClassification:
    """classify_trace of q = T²/Q - 2, cross-checked against the square conditions.

    :raises TraceClassificationError: if the two disagree
    """
    tc = classify_trace(trace_of(params))
    flags = genericity_flags(params)
    if tc.tag != TraceTag.TRIVIAL and (translated := genericity_from_squares(flags)) != tc.tag:
        raise TraceClassificationError(f'{params}: squares give {translated.value}, trace gives {tc.tag.value}')
    return ParamsClassification(params, tc, flags)


def _direct_class(sv: SimpleValue, p: int) -> PartitionClass:
    """The first zero mod p among L_n, K_n of the simple value: L at odd n gives
    Π_0, K at 2^(s-1)·m (m odd) gives Π_s. Divisors of a go to Π_1."""
    if sv.a % p == 0:
        return PI1
    T, Q = sv.params.T % p, sv.params.Q % p
    l_prev, l = 0, 1
    k_prev, k = 2, T
    bound = 2 * (p + 1)
    for n in range(1, bound + 1):
        if n % 2 and l == 0:
            return PI0
        if k == 0:
            return PartitionClass.pi(two_adic_valuation(n)[0] + 1)
        l_prev, l = l, (T * l - Q * l_prev) % p
        k_prev, k = k, (T * k - Q * k_prev) % p
    raise Unresolved(f'no zero of L_n, K_n{sv.params} mod {p} for n <= {bound}')


def divisor_class_routes(params: LucasParams, p: int) -> tuple[PartitionClass, PartitionClass]:
    """(classifier route, direct route) for the odd prime p.

    :raises ExcludedPrime: if p divides R of the simple value
    """
    sv, _ = simple_values(params)
    if sv.R % p == 0:
        raise ExcludedPrime(f'{p} divides R = {sv.R} for {params}')
    return classify_prime(trace_of(params), p), _direct_class(sv, p)


def divisor_class(params: LucasParams, p: int) -> PartitionClass:
    """The class of p for (T, Q), which is its class for q = T²/Q - 2.

    :raises IdentityViolation: if the two routes disagree
    """
    by_trace, direct = divisor_class_routes(params, p)
    if by_trace != direct:
        raise IdentityViolation('divisor class routes', {
            'params': str(params), 'p': p, 'classifier': str(by_trace), 'direct': str(direct),
        })
    return by_trace


def printed_form_discrepancies(params: list[LucasParams], k_max: int = 10) -> list[dict]:
    """Instances where K_(2k-1)(T,Q) = Q^k·V_(2k-1)(q), as it is usually printed,
    fails; the form with T·Q^(k-1) is the one registered as an identity."""
    found = []
    for pr in params:
        q = trace_of(pr)
        for k in range(1, k_max + 1):
            if dickson(K, 2 * k - 1, pr) != pr.Q ** k * cheb_eval(V, 2 * k - 1, q):
                found += [{'params': str(pr), 'k': k}]
    if found:
        logger.info(f'printed K_(2k-1) form fails on {len(found)} instances')
    return found


def _sample_params(r: IdentityRange) -> list[LucasParams]:
    return [LucasParams(T, Q) for T, Q in r.params]


@identity('TWIN_DICKSON')
def _twin_dickson(r: IdentityRange):
    for pr in _sample_params(r):
        D = pr.D
        for n in r.odd:
            half_up, half_down = D ** ((n + 1) // 2), D ** ((n - 1) // 2)
            instance = {'params': str(pr), 'n': n}
            yield instance | {'line': 1}, half_up * dickson(L, n, pr) == _sequence(K, n, D, -D * pr.Q)
            yield instance | {'line': 2}, half_down * dickson(K, n, pr) == pr.T * _sequence(L, n, D, -D * pr.Q)


@identity('SCALING')
def _scaling(r: IdentityRange):
    for pr in _sample_params(r)[:10]:
        for a in (-3, -2, 2, 3):
            scaled = LucasParams(a * pr.T, a * a * pr.Q)
            for n in range(1, 13):
                instance = {'params': str(pr), 'a': a, 'n': n}
                yield instance | {'kind': 'L'}, dickson(L, n, scaled) == a ** (n - 1) * dickson(L, n, pr)
                yield instance | {'kind': 'K'}, dickson(K, n, scaled) == a ** n * dickson(K, n, pr)


@identity('DICKSON_CHEBYSHEV')
def _proof_identities(r: IdentityRange):
    for pr in _sample_params(r):
        q, T, Q = trace_of(pr), pr.T, pr.Q
        for k in r.ks:
            instance = {'params': str(pr), 'k': k}
            yield instance | {'form': 'L_2k'}, dickson(L, 2 * k, pr) == T * Q ** (k - 1) * cheb_eval(U, k, q)
            yield instance | {'form': 'K_2k'}, dickson(K, 2 * k, pr) == Q ** k * cheb_eval(C, k, q)
            yield instance | {'form': 'L_2k-1'}, dickson(L, 2 * k - 1, pr) == Q ** (k - 1) * cheb_eval(W, 2 * k - 1, q)
            yield instance | {'form': 'K_2k-1'}, dickson(K, 2 * k - 1, pr) == T * Q ** (k - 1) * cheb_eval(V, 2 * k - 1, q)


@identity('DICKSON_MATRIX')
def _matrix_agreement(r: IdentityRange):
    for pr in _sample_params(r)[:20]:
        for kind in DicksonKind:
            x0, x1 = (0, 1) if kind == L else (2, pr.T)
            for n in range(1001):
                if n % 37 == 0 or n < 20:
                    yield {'params': str(pr), 'kind': kind.value, 'n': n}, x0 == dickson_matrix(kind, n, pr)
                x0, x1 = x1, pr.T * x1 - pr.Q * x0


@identity('Q1_REDUCTION')
def _unit_determinant(r: IdentityRange):
    for T in range(-5, 6):
        for n in range(21):
            yield {'T': T, 'n': n}, dickson(L, n, LucasParams(T, 1)) == cheb_eval(U, n, T)
