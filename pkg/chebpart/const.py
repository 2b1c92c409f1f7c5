from enum import Enum


class ChebKind(str, Enum):
    FIRST_C = 'C'
    SECOND_U = 'U'
    THIRD_V = 'V'
    FOURTH_W = 'W'


class ClassTag(str, Enum):
    PI0 = 'Pi0'
    PI1 = 'Pi1'
    PI = 'Pi'
    DENOMINATOR_DIVISOR = 'DenominatorDivisor'


class Cell(str, Enum):
    OMEGA_PLUS_ONLY = 'OmegaPlusOnly'
    OMEGA_MINUS_ONLY = 'OmegaMinusOnly'
    BOTH_R = 'BothR'
    NEITHER_Z = 'NeitherZ'


class TraceTag(str, Enum):
    TRIVIAL = 'Trivial'
    GENERIC = 'Generic'
    CASE_A = 'CaseA'
    CASE_B = 'CaseB'
    CASE_C = 'CaseC'
    HAS_ROOT = 'HasRoot'
    TWIN_HAS_ROOT = 'TwinHasRoot'
    CIRCULAR_NON_PRIMITIVE = 'CircularNonPrimitive'


class DicksonKind(str, Enum):
    L = 'L'
    K = 'K'


class Relation(str, Enum):
    TWIN = 'twin'
    SQUARE = 'square'
    ODD_POWER = 'odd_power'
    ASSOCIATE = 'associate'


class OrbitMap(str, Enum):
    ROTATION = 'rotation'
    CHEB = 'cheb'


class Suite(str, Enum):
    IDENTITIES = 'identities'
    CONGRUENCES = 'congruences'
    TABLES = 'tables'
    LUCAS = 'lucas'
    SPLITTING = 'splitting'
