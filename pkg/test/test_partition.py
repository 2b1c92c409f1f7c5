from fractions import Fraction

import pytest
from sympy import primerange

from chebpart.const import Cell, ClassTag, TraceTag
from chebpart.lib.exceptions import DeltaDivisor, ExcludedPrime, NotAnOddPrime, NotInParentCell
from chebpart.partition import (
    DENOMINATOR_DIVISOR, PI0, PI1, PartitionClass, cell_assignment, classify_prime, classify_prime_bruteforce,
    gamma_level, omega_depth, omega_member, p_hat, preimage_depth, splitting_predicates, verify_tables,
)
from chebpart.systemdata import trace_panel
from chebpart.traceclass import is_primitive
from test import has_preimage_chain
from test.factories import TraceFactory


@pytest.mark.parametrize('q, p, expected', [
    (Fraction(3), 11, PI0),
    (Fraction(0), 7, PartitionClass.pi(2)),
    (Fraction(6, 5), 5, DENOMINATOR_DIVISOR),
    (Fraction(3), 5, PI1),
    (Fraction(-3), 5, PI0),
])
def test_classify_prime(q, p, expected):
    assert classify_prime(q, p) == expected


@pytest.mark.parametrize('p', [1, 2, 4])
def test_classify_rejects_even(p):
    with pytest.raises(NotAnOddPrime):
        classify_prime(Fraction(3), p)


def test_classify_against_bruteforce():
    for q in TraceFactory.create_batch(10):
        for p in primerange(3, 200):
            if q.denominator % p:
                assert classify_prime(q, p) == classify_prime_bruteforce(q, p)


@pytest.mark.parametrize('text, cls', [
    ('Pi0', PI0),
    ('Pi1', PI1),
    ('Pi(2)', PartitionClass(ClassTag.PI, 2)),
    ('Pi(7)', PartitionClass.pi(7)),
    ('DenominatorDivisor', DENOMINATOR_DIVISOR),
])
def test_partition_class_text(text, cls):
    assert PartitionClass.parse(text) == cls
    assert str(cls) == text


def test_partition_class_index():
    assert [PartitionClass.pi(s).index for s in range(5)] == [0, 1, 2, 3, 4]
    assert DENOMINATOR_DIVISOR.index is None
    with pytest.raises(ValueError):
        PartitionClass(ClassTag.PI, 1)
    with pytest.raises(ValueError):
        PartitionClass(ClassTag.PI0, 3)


def test_gamma_level():
    for p in primerange(3, 3000):
        expected = max(s for s in range(20) if (p - 1) % 2 ** (s + 2) == 0 or (p + 1) % 2 ** (s + 2) == 0)
        assert gamma_level(p) == expected
    assert gamma_level(7) == 1
    assert gamma_level(17) == 2


def test_preimage_depth():
    for p in primerange(3, 60):
        for target in range(p):
            depth = preimage_depth(target, p, 3)
            for s in range(1, 4):
                assert (depth >= s) == has_preimage_chain(target, p, s)


def test_omega_membership():
    q0 = Fraction(1, 2)
    for p in primerange(7, 300):
        for sign in (1, -1):
            depth = omega_depth(q0, sign, p, 3)
            assert omega_member(q0, 1, sign, p) == (depth >= 1)
            assert omega_member(q0, 2, sign, p) == (depth >= 2)
            assert omega_member(q0, 1, sign, p) == has_preimage_chain(sign * pow(2, -1, p), p, 1)


def test_excluded_primes():
    with pytest.raises(DeltaDivisor):
        omega_depth(Fraction(3), 1, 5, 2)
    with pytest.raises(ExcludedPrime):
        omega_depth(Fraction(6, 5), 1, 5, 2)
    with pytest.raises(DeltaDivisor):
        p_hat(Fraction(3), 5)


def test_p_hat():
    assert p_hat(Fraction(3), 11) == 5
    assert p_hat(Fraction(3), 7) == 4


def test_cell_assignment():
    q0 = Fraction(1, 2)
    outside = 0
    for p in primerange(7, 400):
        first = cell_assignment(q0, p, 1)
        plus, minus = omega_member(q0, 1, 1, p), omega_member(q0, 1, -1, p)
        assert (first.cell == Cell.BOTH_R) == (plus and minus)
        assert (first.cell == Cell.NEITHER_Z) == (not plus and not minus)
        assert first.p_hat == p_hat(q0, p)
        if first.cell == Cell.BOTH_R:
            assert cell_assignment(q0, p, 2).k == 2
        else:
            outside += 1
            with pytest.raises(NotInParentCell):
                cell_assignment(q0, p, 2)
    assert outside


@pytest.mark.parametrize('q', [q for q, tag in trace_panel().items() if tag != TraceTag.TRIVIAL])
def test_verify_tables(q):
    primitive = is_primitive(q)
    for p in primerange(3, 600):
        if q.denominator % p:
            report = verify_tables(q, p, primitive)
            assert report.passed, (p, report.checks)


def test_verify_tables_excluded():
    with pytest.raises(ExcludedPrime):
        verify_tables(Fraction(6, 5), 5)


@pytest.mark.parametrize('k', [1, 2])
def test_splitting_predicates(k):
    q0 = Fraction(1, 2)
    for p in primerange(7, 400):
        for predicate in splitting_predicates(q0, p, k):
            assert predicate.agrees, (p, predicate)
