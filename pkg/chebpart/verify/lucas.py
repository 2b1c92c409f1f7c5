import logging

from chebpart.const import Suite, TraceTag
from chebpart.lib.exceptions import ExcludedPrime
from chebpart.lucas import (
    LucasParams,
    classify_params,
    divisor_class_routes,
    printed_form_discrepancies,
    similar,
    trace_of,
    twin_params,
)
from chebpart.systemdata import params_panel
from chebpart.verify import VerificationSuite

logger = logging.getLogger(__name__)

# square conditions that single out the twin pair (1,-2), (3,2)
TWIN_PAIR_SQUARES = {
    LucasParams(1, -2): (['-2QD'], TraceTag.CASE_A),
    LucasParams(3, 2): (['2Q'], TraceTag.CASE_A),
    LucasParams(2, 3): (['-2D'], TraceTag.CASE_B),
}


class LucasSuite(VerificationSuite):
    """Both routes to the class of a prime divisor of L_n, K_n agree over the
    parameter panel, and the square conditions match the trace tags."""

    suite = Suite.LUCAS

    def exec(self):
        panel = [LucasParams(T, Q) for T, Q in params_panel()]
        primes = self.primes()
        for params in panel:
            for p in primes:
                try:
                    by_trace, direct = divisor_class_routes(params, p)
                except ExcludedPrime:
                    continue
                self.check('divisor class routes', {'params': str(params), 'p': p}, by_trace == direct)

            pc = classify_params(params)
            if expected := TWIN_PAIR_SQUARES.get(params):
                squares, tag = expected
                self.check('square conditions', {'params': str(params)},
                           pc.squares == squares and pc.classification.tag == tag)

            twin = twin_params(params)
            self.check('twin trace', {'params': str(params), 'twin': str(twin)},
                       trace_of(twin) == -trace_of(params))

        self.check('twin pair', {'params': '(3,2)'}, similar(twin_params(LucasParams(3, 2)), LucasParams(1, -2)))
        if found := printed_form_discrepancies(panel):
            logger.info(f'K_(2k-1) = Q^k·V_(2k-1)(q) as printed fails for {len(found)} panel instances')
