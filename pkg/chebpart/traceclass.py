import logging
from dataclasses import dataclass, field
from fractions import Fraction

from chebpart.cheb import C, U, cheb_eval
from chebpart.config import config
from chebpart.const import Relation, TraceTag
from chebpart.lib.arith import RationalTrace, canonical, is_square_rational, rational_sqrt
from chebpart.lib.exceptions import IdentityViolation, NotCircular, ReductionDepthExceeded, TraceClassificationError, TrivialTrace
from chebpart.partition import DENOMINATOR_DIVISOR, PI0, PI1, PartitionClass

logger = logging.getLogger(__name__)

TRIVIAL_TRACES = frozenset(Fraction(v) for v in (0, 1, -1, 2, -2))


@dataclass(frozen=True)
class TraceClassification:
    tag: TraceTag
    root: RationalTrace | None = None
    """HasRoot: the positive square root of 2 + q; TwinHasRoot: of 2 - q."""

    associate: RationalTrace | None = None
    """CircularNonPrimitive: the circular-primitive core its reduction chain ends in."""

    depth: int | None = None
    """CircularNonPrimitive: the number of reduction steps down to the core."""

    def __str__(self):
        if self.tag in (TraceTag.HAS_ROOT, TraceTag.TWIN_HAS_ROOT):
            return f'{self.tag.value}({canonical(self.root)})'
        if self.tag == TraceTag.CIRCULAR_NON_PRIMITIVE:
            return f'{self.tag.value}({canonical(self.associate)}, {self.depth})'
        return self.tag.value


@dataclass(frozen=True)
class DensityProfile:
    """Exact densities d_0, d_1, d_2, ... of the classes of a partition.

    ``head`` holds d_2 .. d_(dyadic_from); beyond that every density is
    half the previous one, so the tail after the head sums to head[-1].
    """

    d0: Fraction
    d1: Fraction
    head: tuple[Fraction, ...]
    dyadic_from: int
    excluded: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if len(self.head) != self.dyadic_from - 1:
            raise ValueError(f'head of length {len(self.head)} does not end at d_{self.dyadic_from}')
        values = (self.d0, self.d1, *self.head)
        if self.total != 1 or not all(0 <= v <= 1 for v in values):
            raise IdentityViolation('density profile', {'profile': [str(v) for v in values], 'total': str(self.total)})

    @property
    def total(self) -> Fraction:
        return self.d0 + self.d1 + sum(self.head) + self.head[-1] + self.excluded

    def d(self, s: int) -> Fraction:
        if s == 0:
            return self.d0
        if s == 1:
            return self.d1
        if s <= self.dyadic_from:
            return self.head[s - 2]
        return self.head[-1] / 2 ** (s - self.dyadic_from)

    def swapped(self) -> 'DensityProfile':
        """The profile of the twin partition."""
        return DensityProfile(self.d1, self.d0, self.head, self.dyadic_from)

    def squared(self) -> 'DensityProfile':
        """Given the profile of a root r, the profile of r^2 - 2."""
        dyadic_from = max(2, self.dyadic_from - 1)
        head = tuple(self.d(s + 1) for s in range(2, dyadic_from + 1))
        return DensityProfile(self.d0 + self.d1, self.d(2), head, dyadic_from)

    def values(self, upto: int) -> list[Fraction]:
        return [self.d(s) for s in range(upto + 1)]


def _f(*values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


GENERIC_PROFILE = DensityProfile(*_f('1/3', '1/3'), _f('1/6'), 2)
CASE_A_PROFILE = DensityProfile(*_f('7/24', '7/24'), _f('1/3', '1/24'), 3)
CASE_B_PROFILE = DensityProfile(*_f('7/24', '7/24'), _f('1/12', '1/6'), 3)
CASE_C_PROFILE = DensityProfile(*_f('1/6', '1/6'), _f('1/3'), 2)


def circular_non_primitive_profile(depth: int) -> DensityProfile:
    """Profile of w_k, k = depth: |Π_0| = |Π_1| = (1/3)/2^(k+1), |Π_2| = 1 - (1/3)/2^(k-1)."""
    outer = Fraction(1, 3) / 2 ** (depth + 1)
    return DensityProfile(outer, outer, (1 - Fraction(1, 3) / 2 ** (depth - 1), outer), 3)


def twin(q: RationalTrace) -> RationalTrace:
    return -q


def square(q: RationalTrace) -> RationalTrace:
    return q * q - 2


def roots(q: RationalTrace) -> set[RationalTrace]:
    """The rational r with r^2 - 2 = q."""
    if (r := rational_sqrt(2 + q)) is None:
        return set()
    return {r, -r}


def is_circular(q: RationalTrace) -> bool:
    return is_square_rational(4 - q * q)


def associate(q: RationalTrace) -> RationalTrace:
    """The non-negative w with q^2 + w^2 = 4.

    :raises NotCircular: if 4 - q^2 is not a rational square
    """
    if (w := rational_sqrt(4 - q * q)) is None:
        raise NotCircular(f'4 - ({q})^2 is not a rational square')
    return w


def is_primitive(q: RationalTrace) -> bool:
    return not is_square_rational(2 + q) and not is_square_rational(2 - q)


def is_circular_primitive(q: RationalTrace) -> bool:
    return is_primitive(q) and is_circular(q) and not is_square_rational(2 * (2 + q))


def classify_trace(q: RationalTrace) -> TraceClassification:
    """Tag q as Trivial, HasRoot, TwinHasRoot, or (primitive q) one of
    CircularNonPrimitive, CaseC, CaseB, CaseA, Generic.

    :raises TraceClassificationError: if two case predicates hold at once
    :raises ReductionDepthExceeded: if a circular reduction chain does not end
    """
    q = Fraction(q)
    if q in TRIVIAL_TRACES:
        return TraceClassification(TraceTag.TRIVIAL)
    if (r := rational_sqrt(2 + q)) is not None:
        return TraceClassification(TraceTag.HAS_ROOT, root=r)
    if (r := rational_sqrt(2 - q)) is not None:
        return TraceClassification(TraceTag.TWIN_HAS_ROOT, root=r)

    a, b = 2 + q, 2 - q
    circular = is_square_rational(a * b)
    cases = {
        TraceTag.CIRCULAR_NON_PRIMITIVE: circular and is_square_rational(2 * a),
        TraceTag.CASE_C: circular and not is_square_rational(2 * a),
        TraceTag.CASE_B: is_square_rational(2 * a * b),
        TraceTag.CASE_A: not circular and (is_square_rational(2 * a) or is_square_rational(2 * b)),
    }
    matched = [tag for tag, hit in cases.items() if hit]
    if len(matched) > 1:
        raise TraceClassificationError(f'{q} satisfies {", ".join(t.value for t in matched)}')
    if not matched:
        return TraceClassification(TraceTag.GENERIC)
    if (tag := matched[0]) == TraceTag.CIRCULAR_NON_PRIMITIVE:
        core, depth = circular_core(q)
        return TraceClassification(tag, associate=core, depth=depth)
    return TraceClassification(tag)


def circular_core(w: RationalTrace, max_depth: int = None) -> tuple[RationalTrace, int]:
    """Walk a circular non-primitive w back to a circular-primitive q0 with
    w = w_k(q0); returns (q0, k).

    The associate of w is non-primitive; its square roots are the previous
    point of the chain and its associate.
    """
    max_depth = max_depth or config.LIMITS.CHAIN_DEPTH
    x = associate(w)
    for depth in range(1, max_depth + 1):
        candidates = [r for r in (rational_sqrt(2 + x), rational_sqrt(2 - x)) if r is not None]
        for r in candidates:
            if is_circular_primitive(r):
                logger.debug(f'{w} reduces to the circular-primitive core {r} in {depth} steps')
                return r, depth
        if not (non_primitive := [r for r in candidates if not is_primitive(r)]):
            raise TraceClassificationError(f'{w}: reduction chain broke at {x}')
        x = non_primitive[0]
    raise ReductionDepthExceeded(f'{w}: no circular-primitive core within {max_depth} steps')


def theoretical_densities(q: RationalTrace) -> DensityProfile:
    """Exact density profile of the partition of q.

    :raises TrivialTrace: for q in {0, ±1, ±2}
    :raises ReductionDepthExceeded: if a root chain exceeds the configured depth
    """
    q = Fraction(q)
    chain = []
    seen = set()
    while True:
        if q in seen or len(chain) > config.LIMITS.CHAIN_DEPTH:
            raise ReductionDepthExceeded(f'root chain {[canonical(v) for v in chain]}')
        seen.add(q)
        tc = classify_trace(q)
        match tc.tag:
            case TraceTag.TRIVIAL:
                if chain:
                    break
                raise TrivialTrace(f'q = {canonical(q)}')
            case TraceTag.HAS_ROOT:
                chain += [(tc.tag, q)]
                q = tc.root
            case TraceTag.TWIN_HAS_ROOT:
                chain += [(tc.tag, q)]
                q = tc.root
            case _:
                break

    profile = {
        TraceTag.GENERIC: GENERIC_PROFILE,
        TraceTag.CASE_A: CASE_A_PROFILE,
        TraceTag.CASE_B: CASE_B_PROFILE,
        TraceTag.CASE_C: CASE_C_PROFILE,
    }.get(tc.tag)
    if tc.tag == TraceTag.CIRCULAR_NON_PRIMITIVE:
        profile = circular_non_primitive_profile(tc.depth)
    if profile is None:
        raise ReductionDepthExceeded(f'root chain {[canonical(v) for _, v in chain]} ends in a trivial trace')

    # q = r^2 - 2 squares the partition of r; for TwinHasRoot it is -q = r^2 - 2
    for tag, _ in reversed(chain):
        profile = profile.squared()
        if tag == TraceTag.TWIN_HAS_ROOT:
            profile = profile.swapped()
    return profile


def transfer(kind: Relation, cls: PartitionClass, k: int = 1) -> frozenset[PartitionClass]:
    """The classes a prime of class `cls` for q can take for the related trace.

    Twin: q -> -q; square: q -> C_(2^k)(q); odd power: q -> C_n(q), n odd;
    associate: q -> w with q^2 + w^2 = 4.
    """
    if cls == DENOMINATOR_DIVISOR:
        return frozenset({cls})
    index = cls.index
    match kind:
        case Relation.TWIN:
            return frozenset({PartitionClass.pi(1 - index) if index < 2 else cls})
        case Relation.SQUARE:
            if index <= k:
                return frozenset({PI0})
            return frozenset({PartitionClass.pi(index - k)})
        case Relation.ODD_POWER:
            return frozenset({cls})
        case Relation.ASSOCIATE:
            if index < 2:
                return frozenset({PartitionClass.pi(2)})
            if index == 2:
                return frozenset({PI0, PI1})
            return frozenset({cls})
    raise ValueError(f'unknown relation {kind}')


@dataclass(frozen=True)
class PartitionRelation:
    kind: Relation
    source: RationalTrace
    image: RationalTrace
    k: int
    statements: tuple[str, ...]

    def transfer(self, cls: PartitionClass) -> frozenset[PartitionClass]:
        return transfer(self.kind, cls, self.k)


def relate_partitions(q: RationalTrace, odd_powers: tuple[int, ...] = (3, 5)) -> list[PartitionRelation]:
    """Set equalities between the partition of q and those of its twin,
    its square and C_4(q), its odd powers and, for circular q, its associate."""
    q = Fraction(q)
    s = canonical
    relations = [
        PartitionRelation(Relation.TWIN, q, -q, 1, (
            f'Π_0({s(-q)}) = Π_1({s(q)})',
            f'Π_1({s(-q)}) = Π_0({s(q)})',
            f'Π_s({s(-q)}) = Π_s({s(q)}), s ≥ 2',
        )),
        PartitionRelation(Relation.SQUARE, q, q2 := square(q), 1, (
            f'Π_0({s(q2)}) = Π_0({s(q)}) ∪ Π_1({s(q)})',
            f'Π_1({s(q2)}) = Π_2({s(q)})',
            f'Π_s({s(q2)}) = Π_(s+1)({s(q)}), s ≥ 2',
        )),
        PartitionRelation(Relation.SQUARE, q, q4 := square(q2), 2, (
            f'Π_1({s(q4)}) = Π_3({s(q)}) = Π_0({s(-q4)})',
        )),
    ]
    for n in odd_powers:
        qn = cheb_eval(C, n, q)
        relations += [PartitionRelation(Relation.ODD_POWER, q, qn, n, (
            f'ρ(C_{n}({s(q)})) = ρ({s(qn)}) coincides with ρ({s(q)})',
        ))]
    if is_circular(q):
        w = associate(q)
        relations += [PartitionRelation(Relation.ASSOCIATE, q, w, 1, (
            f'Π_2({s(w)}) = Π_0({s(q)}) ∪ Π_1({s(q)})',
            f'Π_2({s(q)}) = Π_0({s(w)}) ∪ Π_1({s(w)})',
            f'Π_s({s(q)}) = Π_s({s(w)}), s ≥ 3',
        ))]
    return relations


def wk_point(q0: RationalTrace, k: int) -> tuple[RationalTrace, RationalTrace]:
    """(C_(2^k)(q0), w0·U_(2^k)(q0)) for the associate w0 of q0."""
    w0 = associate(q0)
    return cheb_eval(C, 2 ** k, q0), w0 * cheb_eval(U, 2 ** k, q0)
