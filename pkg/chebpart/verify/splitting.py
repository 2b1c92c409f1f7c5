from chebpart.cheb import C, cheb_coeffs, splits_completely
from chebpart.const import Suite, TraceTag
from chebpart.lib.arith import legendre_rational
from chebpart.partition import gamma_level, splitting_predicates
from chebpart.verify import VerificationSuite

DEPTHS = (1, 2)
GAMMA_LEVELS = range(1, 5)


class SplittingSuite(VerificationSuite):
    """Γ_s as the primes over which C_(2^s) splits, and the R_k, Ω and Γ
    memberships decided by splitting of Chebyshev products."""

    suite = Suite.SPLITTING

    def exec(self):
        primes = self.primes()
        for p in primes:
            level = gamma_level(p)
            for s in GAMMA_LEVELS:
                self.check('Gamma_s splitting', {'p': p, 's': s},
                           splits_completely(cheb_coeffs(C, 2 ** s), p) == (level >= s))

        for q0 in self.traces(TraceTag.TRIVIAL, TraceTag.HAS_ROOT, TraceTag.TWIN_HAS_ROOT):
            for p in primes:
                if q0.denominator % p == 0 or legendre_rational(q0 * q0 - 4, p) == 0:
                    continue
                for k in DEPTHS:
                    for predicate in splitting_predicates(q0, p, k):
                        self.check(predicate.name, self.instance(q0, p, k=k), predicate.agrees)
