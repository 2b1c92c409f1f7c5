from dataclasses import dataclass
from typing import Iterable

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add_ground, gf_mul

from chebpart.cheb import C, cheb_coeffs, gf_splits, reduce_mod
from chebpart.const import Cell, ClassTag
from chebpart.lib.arith import RationalTrace, legendre, legendre_rational, mod_sqrt, rational_mod, two_adic_valuation
from chebpart.lib.exceptions import DeltaDivisor, ExcludedPrime, IdentityViolation, NotAnOddPrime, NotInParentCell, Unresolved
from chebpart.sl2 import appearance_index


@dataclass(frozen=True)
class PartitionClass:
    """The class of an odd prime in the partition of a rational trace."""

    tag: ClassTag
    s: int | None = None

    def __post_init__(self):
        if (self.tag == ClassTag.PI) != (self.s is not None) or (self.s is not None and self.s < 2):
            raise ValueError(f'invalid partition class {self.tag}, s={self.s}')

    @classmethod
    def pi(cls, index: int) -> 'PartitionClass':
        """Π_index for any index >= 0."""
        if index == 0:
            return PI0
        if index == 1:
            return PI1
        return cls(ClassTag.PI, index)

    @classmethod
    def parse(cls, text: str) -> 'PartitionClass':
        if text.startswith('Pi(') and text.endswith(')'):
            return cls(ClassTag.PI, int(text[3:-1]))
        return cls(ClassTag(text))

    @property
    def index(self) -> int | None:
        """0, 1 or s for Π_0, Π_1, Π_s; None for denominator divisors."""
        return {ClassTag.PI0: 0, ClassTag.PI1: 1, ClassTag.PI: self.s}.get(self.tag)

    def __str__(self):
        if self.tag == ClassTag.PI:
            return f'Pi({self.s})'
        return self.tag.value


PI0 = PartitionClass(ClassTag.PI0)
PI1 = PartitionClass(ClassTag.PI1)
DENOMINATOR_DIVISOR = PartitionClass(ClassTag.DENOMINATOR_DIVISOR)


def _check_odd(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise NotAnOddPrime(f'{p}')


def classify_prime(q: RationalTrace, p: int, factor_bound: int = None) -> PartitionClass:
    """Place the odd prime `p` in the partition of `q`.

    With ξ the index of appearance and A^ξ = ±I: an odd ξ puts p in Π_0 for +I
    and in Π_1 for -I; ξ = 2^(s+1)·m with m odd puts p in Π_(s+2).
    """
    _check_odd(p)
    if q.denominator % p == 0:
        return DENOMINATOR_DIVISOR
    ai = appearance_index(q, p, factor_bound)
    s, _ = two_adic_valuation(ai.xi)
    if s == 0:
        return PI0 if ai.sign_at_xi == 1 else PI1
    return PartitionClass.pi(s + 1)


def classify_prime_bruteforce(q: RationalTrace, p: int, n_max: int = None) -> PartitionClass:
    """Classify from the definitions: an odd n with W_n = 0 (Π_0) or V_n = 0 (Π_1),
    or C_(2^k·n) = 0 (Π_(k+2)), scanning indices up to `n_max` (default p + 1).

    :raises Unresolved: if no witness is found
    :raises IdentityViolation: if witnesses for two classes are found
    """
    _check_odd(p)
    n_max = n_max or p + 1
    qv = rational_mod(q, p).value
    found = set()

    c_prev, c = 2, qv
    for j in range(1, n_max + 1):
        if c == 0:
            found.add(PartitionClass.pi(two_adic_valuation(j)[0] + 2))
        c_prev, c = c, (qv * c - c_prev) % p

    # consecutive odd indices: X_(n+2) = q·X_n - X_(n-2), from W_(-1) = -1 and V_(-1) = 1
    w_prev, w = p - 1, 1
    v_prev, v = 1, 1
    for n in range(1, n_max + 1, 2):
        if w == 0:
            found.add(PI0)
        if v == 0:
            found.add(PI1)
        w_prev, w = w, (qv * w - w_prev) % p
        v_prev, v = v, (qv * v - v_prev) % p

    if len(found) > 1:
        raise IdentityViolation('partition', {'q': q, 'p': p, 'classes': sorted(map(str, found))})
    if not found:
        raise Unresolved(f'no witness for {q} mod {p} up to index {n_max}')
    return found.pop()


def _check_admissible(q0: RationalTrace, p: int) -> int:
    _check_odd(p)
    if q0.denominator % p == 0:
        raise ExcludedPrime(f'{p} divides the denominator of {q0}')
    if legendre_rational(q0 * q0 - 4, p) == 0:
        raise DeltaDivisor(f'{p} divides q^2 - 4 for q = {q0}')
    return rational_mod(q0, p).value


def preimage_depth(target: int, p: int, max_depth: int) -> int:
    """Deepest s <= max_depth such that target has an s-fold preimage under x -> x^2 - 2."""
    frontier = {target}
    for s in range(1, max_depth + 1):
        roots = set()
        for b in frontier:
            if (r := mod_sqrt(b + 2, p)) is not None:
                roots.update((r, -r % p))
        if not roots:
            return s - 1
        frontier = roots
    return max_depth


def omega_depth(q0: RationalTrace, sign: int, p: int, max_depth: int) -> int:
    """The largest s <= max_depth with p in Ω_s^sign.

    :raises ExcludedPrime: if p divides the denominator of q0 or of q0^2 - 4
    """
    qv = _check_admissible(q0, p)
    return preimage_depth(sign * qv % p, p, max_depth)


def omega_member(q0: RationalTrace, s: int, sign: int, p: int) -> bool:
    """True iff C_(2^s)(a) = sign·q0 mod p for some a in F_p."""
    return omega_depth(q0, sign, p, s) >= s


def p_hat(q0: RationalTrace, p: int) -> int:
    """(p - (δ|p))/2 for δ = q0^2 - 4."""
    _check_admissible(q0, p)
    return (p - legendre_rational(q0 * q0 - 4, p)) // 2


def gamma_level(p: int) -> int:
    """The largest s with p = ±1 mod 2^(s+2)."""
    _check_odd(p)
    s, _ = two_adic_valuation(p - 1 if p % 4 == 1 else p + 1)
    return s - 2


@dataclass(frozen=True)
class CellAssignment:
    k: int
    cell: Cell
    p_hat: int
    p_hat_val2: int


def _cell(plus: bool, minus: bool) -> Cell:
    if plus and minus:
        return Cell.BOTH_R
    if plus:
        return Cell.OMEGA_PLUS_ONLY
    if minus:
        return Cell.OMEGA_MINUS_ONLY
    return Cell.NEITHER_Z


def cell_assignment(q0: RationalTrace, p: int, k: int) -> CellAssignment:
    """The cell of p in the k-th table over R_(k-1).

    :raises NotInParentCell: if p is not in R_(k-1)
    """
    if k < 1:
        raise ValueError(f'table depth {k} < 1')
    depth_plus = omega_depth(q0, 1, p, k)
    depth_minus = omega_depth(q0, -1, p, k)
    if min(depth_plus, depth_minus) < k - 1:
        raise NotInParentCell(f'{p} is not in R_{k - 1} for {q0}')
    ph = p_hat(q0, p)
    return CellAssignment(k, _cell(depth_plus >= k, depth_minus >= k), ph, two_adic_valuation(ph)[0])


def cell_containments(cls: PartitionClass, depth_plus: int, depth_minus: int, val2: int,
                      max_depth: int) -> dict[str, bool]:
    """Check the cell tables down to `max_depth` for a primitive trace.

    A prime in R_(k-1) lands in Π_0 with 2^(k-1) || p̂ when only the plus
    preimage exists, in Π_1 likewise for the minus preimage, and in Π_(s+2)
    with 2^(k+s) || p̂ when neither exists.
    """
    checks = {}
    for k in range(1, max_depth + 1):
        if min(depth_plus, depth_minus) < k - 1:
            break
        match _cell(depth_plus >= k, depth_minus >= k):
            case Cell.OMEGA_PLUS_ONLY:
                checks[f'k={k}: OmegaPlusOnly in Pi0'] = cls == PI0 and val2 == k - 1
            case Cell.OMEGA_MINUS_ONLY:
                checks[f'k={k}: OmegaMinusOnly in Pi1'] = cls == PI1 and val2 == k - 1
            case Cell.NEITHER_Z:
                checks[f'k={k}: NeitherZ in Pi_*'] = cls.index >= 2 and val2 >= k
                checks[f'k={k}: NeitherZ with 2^(k+s) || p-hat in Pi(s+2)'] = cls.index == val2 - k + 2
            case Cell.BOTH_R:
                checks[f'k={k}: BothR has 2^k | p-hat'] = val2 >= k
    return checks


def residue_containments(q: RationalTrace, p: int, cls: PartitionClass) -> dict[str, bool]:
    """Residue-symbol containments valid for every trace q."""
    two = legendre(2, p)
    plus, minus = legendre_rational(2 + q, p), legendre_rational(2 - q, p)
    checks = {}
    if cls.index is not None and cls.index >= 3:
        checks['Pi_* minus Pi_2 in (2|p) = 1'] = two == 1
    if cls.index == 2:
        checks['Pi_2 in (2|p) = (2+q|p) = (2-q|p)'] = two == plus == minus
    if plus == 0:
        checks['(2+q|p) = 0 in Pi1'] = cls == PI1
    if minus == 0:
        checks['(2-q|p) = 0 in Pi0'] = cls == PI0
    return checks


@dataclass(frozen=True)
class TableReport:
    q0: RationalTrace
    p: int
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_tables(q0: RationalTrace, p: int, primitive: bool = None) -> TableReport:
    """Check the residue containments and, for a primitive q0 and p not dividing
    q0^2 - 4, every cell-table containment down to the depth p reaches.

    :raises ExcludedPrime: if p divides the denominator of q0
    """
    _check_odd(p)
    if q0.denominator % p == 0:
        raise ExcludedPrime(f'{p} divides the denominator of {q0}')
    if primitive is None:
        from chebpart.traceclass import is_primitive
        primitive = is_primitive(q0)

    cls = classify_prime(q0, p)
    checks = residue_containments(q0, p, cls)
    if primitive and legendre_rational(q0 * q0 - 4, p) != 0:
        val2, _ = two_adic_valuation(p_hat(q0, p))
        depth = val2 + 1
        checks |= cell_containments(
            cls, omega_depth(q0, 1, p, depth), omega_depth(q0, -1, p, depth), val2, depth,
        )
    return TableReport(q0, p, checks)


def _splits_product(p: int, *factors: list) -> bool:
    g = [ZZ(1)]
    for f in factors:
        g = gf_mul(g, f, p, ZZ)
    return bool(g) and gf_splits(g, p)


def _shifted(k: int, shift: int, p: int) -> list:
    """C_k(x) + shift over F_p."""
    return gf_add_ground(reduce_mod(cheb_coeffs(C, k), p), shift % p, p, ZZ)


@dataclass(frozen=True)
class SplittingPredicate:
    name: str
    by_splitting: bool
    by_omega: bool

    @property
    def agrees(self) -> bool:
        return self.by_splitting == self.by_omega


def splitting_predicates(q0: RationalTrace, p: int, k: int, s_values: Iterable[int] = range(1, 4)) -> list[SplittingPredicate]:
    """Membership of p in R_k, Ω_(k+1)^± ∩ R_k, R_k ∩ Γ_(k+s) and (R_1 ∪ Z_1) ∩ Γ_s,
    decided once by splitting of Chebyshev polynomial products over F_p and
    once by the preimage machinery."""
    qv = _check_admissible(q0, p)
    dp = omega_depth(q0, 1, p, k + 1)
    dm = omega_depth(q0, -1, p, k + 1)
    gamma = gamma_level(p)
    in_r = min(dp, dm) >= k

    m = 2 ** k
    r_factor = _shifted(2 * m, 2 - qv * qv, p)
    predicates = [
        SplittingPredicate(f'R_{k}', _splits_product(p, r_factor), in_r),
        SplittingPredicate(
            f'Omega_{k + 1}^+ ∩ R_{k}',
            _splits_product(p, _shifted(2 * m, -qv, p), _shifted(m, qv, p)),
            dp >= k + 1 and dm >= k,
        ),
        SplittingPredicate(
            f'Omega_{k + 1}^- ∩ R_{k}',
            _splits_product(p, _shifted(2 * m, qv, p), _shifted(m, -qv, p)),
            dm >= k + 1 and dp >= k,
        ),
    ]
    delta = (qv * qv - 4) % p
    for s in s_values:
        predicates += [
            SplittingPredicate(
                f'R_{k} ∩ Gamma_{k + s}',
                _splits_product(p, _shifted(2 ** (k + s), 0, p), r_factor),
                in_r and gamma >= k + s,
            ),
            SplittingPredicate(
                f'(R_1 ∪ Z_1) ∩ Gamma_{s}',
                _splits_product(p, [ZZ(1), ZZ(0), ZZ(delta)], _shifted(2 ** s, 0, p)),
                (dp >= 1) == (dm >= 1) and gamma >= s,
            ),
        ]
    return predicates
