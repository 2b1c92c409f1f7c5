import pytest

from chebpart.const import Suite
from chebpart.lib.exceptions import IdentityViolation
from chebpart.verify import VerificationSuite, run_suite


@pytest.mark.parametrize('suite, limit', [
    (Suite.IDENTITIES, 100),
    (Suite.CONGRUENCES, 500),
    (Suite.TABLES, 300),
    (Suite.LUCAS, 500),
    (Suite.SPLITTING, 200),
])
def test_suite_passes(suite, limit):
    report = run_suite(suite.value, limit)
    assert report.suite == suite
    assert report.limit == limit
    assert report.instances > 0
    assert report.passed, report.violations[:5]


def test_default_limit():
    from chebpart.verify.lucas import LucasSuite
    from chebpart.verify.splitting import SplittingSuite

    assert LucasSuite().limit == 10000
    assert SplittingSuite().limit == 600
    assert SplittingSuite(300).limit == 300


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite('nonsense')


def test_failures_are_reported(monkeypatch):
    from chebpart.verify import congruences

    monkeypatch.setattr(congruences, 'euler_criterion', lambda q, p: type('Broken', (), {'verified': False})())
    report = run_suite('congruences', 50)
    assert not report.passed
    assert all(v['check'] == 'Euler criterion' for v in report.violations)
    assert {'q', 'p'} <= set(report.violations[0])


def test_violation_stops_suite():
    class Failing(VerificationSuite):
        suite = Suite.IDENTITIES

        def exec(self):
            self.check('first', {'n': 1}, True)
            raise IdentityViolation('second', {'n': 2})

    report = Failing(10).run()
    assert report.instances == 1
    assert report.violations == [{'check': 'second', 'n': 2}]
