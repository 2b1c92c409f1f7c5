class ChebpartError(Exception):
    # code and description are echoed in CLI error output; exit_code is the process status
    error_code = 'unknown_error'
    error_description = "An unknown error occurred."
    exit_code = 1

    def __init__(self, detail: str = None) -> None:
        self.detail = detail
        super().__init__(detail or self.error_description)


class InvalidRational(ChebpartError):
    error_code = 'invalid_rational'
    error_description = "The value is not a rational number of the form a/b or a."
    exit_code = 2


class NotAnOddPrime(ChebpartError):
    error_code = 'not_an_odd_prime'
    error_description = "The modulus must be an odd prime."
    exit_code = 2


class DenominatorDivisible(ChebpartError):
    error_code = 'denominator_divisible'
    error_description = "The prime divides the denominator of the rational argument."
    exit_code = 2


class InvalidIndex(ChebpartError):
    error_code = 'invalid_index'
    error_description = "The polynomial index is out of range for this kind."
    exit_code = 2


class ZeroPolynomialModP(ChebpartError):
    error_code = 'zero_polynomial_mod_p'
    error_description = "The polynomial vanishes identically modulo the prime."
    exit_code = 2


class ExcludedPrime(ChebpartError):
    error_code = 'excluded_prime'
    error_description = "The prime is excluded from the cell machinery for this trace."
    exit_code = 2


class DeltaDivisor(ExcludedPrime):
    error_code = 'delta_divisor'
    error_description = "The prime divides q^2 - 4, so p-hat is undefined."


class NotInParentCell(ChebpartError):
    error_code = 'not_in_parent_cell'
    error_description = "The prime does not belong to the parent set R_(k-1)."
    exit_code = 2


class TrivialTrace(ChebpartError):
    error_code = 'trivial_trace'
    error_description = "Trivial traces 0, +-1, +-2 have no density profile."
    exit_code = 2


class TrivialStartingPoint(ChebpartError):
    error_code = 'trivial_starting_point'
    error_description = "The starting point is periodic or pre-periodic."
    exit_code = 2


class NotCircular(ChebpartError):
    error_code = 'not_circular'
    error_description = "4 - q^2 is not a rational square."
    exit_code = 2


class NotOnCircle(ChebpartError):
    error_code = 'not_on_circle'
    error_description = "The point does not satisfy q^2 + w^2 = 4."
    exit_code = 2


class EmptyCensus(ChebpartError):
    error_code = 'empty_census'
    error_description = "No odd prime up to the limit is admissible for this trace; raise the limit."
    exit_code = 2


class FactoringBoundExceeded(ChebpartError):
    error_code = 'factoring_bound_exceeded'
    error_description = "Trial division up to the configured bound did not complete the factorization."
    exit_code = 3


class ReductionDepthExceeded(ChebpartError):
    error_code = 'reduction_depth_exceeded'
    error_description = "A reduction chain exceeded the configured depth."
    exit_code = 3


class Unresolved(ChebpartError):
    error_code = 'unresolved'
    error_description = "No witness found within the scan bound; raise the bound."
    exit_code = 3


class IdentityViolation(ChebpartError):
    error_code = 'identity_violation'
    error_description = "An identity failed under exact arithmetic."
    exit_code = 4

    def __init__(self, identity: str, instance: dict) -> None:
        self.identity = identity
        self.instance = instance
        super().__init__(f'{identity} violated at {instance}')


class TraceClassificationError(ChebpartError):
    error_code = 'trace_classification_error'
    error_description = "The trace satisfies more than one case predicate."
    exit_code = 4
