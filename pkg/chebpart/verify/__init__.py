import logging
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import import_module
from pathlib import Path
from pkgutil import iter_modules
from typing import Iterator, final

from chebpart.const import Suite, TraceTag
from chebpart.lib.arith import canonical, primes_up_to
from chebpart.lib.exceptions import IdentityViolation
from chebpart.systemdata import suite_limits, trace_panel

logger = logging.getLogger(__name__)


@dataclass
class SuiteReport:
    suite: Suite
    limit: int
    instances: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


class VerificationSuite:
    """Abstract base class for a verification suite."""

    suite: Suite

    def __init__(self, limit: int = None) -> None:
        self.limit = limit or suite_limits().get(self.suite.value, 0)
        self.report = SuiteReport(self.suite, self.limit)

    @final
    def run(self) -> SuiteReport:
        modname = self.__class__.__name__
        try:
            logger.info(f'{modname} started')
            self.exec()
            logger.info(f'{modname} completed: {self.report.instances} instances, '
                        f'{len(self.report.violations)} violations')
        except IdentityViolation as e:
            logger.exception(f'{modname} failed: {e!r}')
            self.report.violations += [{'check': e.identity} | e.instance]
        return self.report

    def exec(self):
        raise NotImplementedError

    def check(self, name: str, instance: dict, holds: bool) -> None:
        self.report.instances += 1
        if not holds:
            logger.warning(f'{self.suite.value}: {name} fails at {instance}')
            self.report.violations += [{'check': name} | instance]

    def primes(self) -> list[int]:
        return primes_up_to(self.limit)[1:]

    @staticmethod
    def traces(*exclude: TraceTag) -> Iterator[Fraction]:
        for q, tag in trace_panel().items():
            if tag not in exclude:
                yield q

    @staticmethod
    def instance(q: Fraction, p: int, **kwargs) -> dict:
        return {'q': canonical(q), 'p': p} | kwargs


def run_suite(name: str, limit: int = None) -> SuiteReport:
    """Run every verification suite class registered for `name` over
    primes up to `limit`."""
    suite = Suite(name)
    reports = []
    dir_ = str(Path(__file__).parent)
    for mod_info in iter_modules([dir_]):
        mod = import_module(f'chebpart.verify.{mod_info.name}')
        for cls in mod.__dict__.values():
            if (isinstance(cls, type) and issubclass(cls, VerificationSuite)
                    and cls is not VerificationSuite and getattr(cls, 'suite', None) is suite):
                reports += [cls(limit).run()]
    merged = SuiteReport(suite, reports[0].limit if reports else limit or 0)
    for report in reports:
        merged.instances += report.instances
        merged.violations += report.violations
    return merged
