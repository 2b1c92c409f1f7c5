from chebpart.const import Suite
from chebpart.sl2 import congruence_suite, corollary_suite, euler_criterion
from chebpart.verify import VerificationSuite


class CongruencesSuite(VerificationSuite):
    """The Euler criterion in SL(2, F_p), the prime-index congruences and the
    divisibility refinements of the index of appearance, over the trace panel."""

    suite = Suite.CONGRUENCES

    def exec(self):
        primes = self.primes()
        for q in self.traces():
            for p in primes:
                if q.denominator % p == 0:
                    continue
                instance = self.instance(q, p)
                self.check('Euler criterion', instance, euler_criterion(q, p).verified)
                for line, holds in congruence_suite(q, p).lines.items():
                    self.check(line, instance, holds)
                for statement, holds in corollary_suite(q, p).items():
                    self.check(statement, instance, holds)
