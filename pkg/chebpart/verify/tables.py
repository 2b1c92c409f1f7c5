import logging

from chebpart.const import Suite
from chebpart.partition import classify_prime, classify_prime_bruteforce, verify_tables
from chebpart.traceclass import TRIVIAL_TRACES, is_primitive, relate_partitions
from chebpart.verify import VerificationSuite

logger = logging.getLogger(__name__)

ORACLE_LIMIT = 2000


class TablesSuite(VerificationSuite):
    """Exactly one class per prime (against the definitional scan), the
    residue and cell-table containments, and the class transfers between
    related partitions."""

    suite = Suite.TABLES

    def exec(self):
        primes = self.primes()
        for q in self.traces():
            primitive = q not in TRIVIAL_TRACES and is_primitive(q)
            relations = relate_partitions(q)
            logger.debug(f'{q}: {sum(len(r.statements) for r in relations)} relation statements')
            for p in primes:
                if q.denominator % p == 0:
                    continue
                cls = classify_prime(q, p)
                if p < ORACLE_LIMIT:
                    self.check('definitional class', self.instance(q, p), classify_prime_bruteforce(q, p) == cls)
                for name, holds in verify_tables(q, p, primitive).checks.items():
                    self.check(name, self.instance(q, p), holds)
                for relation in relations:
                    if relation.image.denominator % p == 0:
                        continue
                    image_cls = classify_prime(relation.image, p)
                    self.check(
                        f'{relation.kind.value} transfer',
                        self.instance(q, p, image=str(relation.image), k=relation.k),
                        image_cls in relation.transfer(cls),
                    )
