from fractions import Fraction

import pytest
from sympy import primerange

from chebpart.const import TraceTag
from chebpart.lib.arith import FpElement
from chebpart.lib.exceptions import ExcludedPrime, IdentityViolation
from chebpart.lucas import (
    K, L, LucasParams, SimpleValue, classify_params, dickson, dickson_matrix, dickson_mod, divisor_class,
    divisor_class_routes, genericity_flags, genericity_from_squares, printed_form_discrepancies, root_params,
    similar, simple_values, square_params, trace_of, twin_params,
)
from chebpart.partition import PI0, PI1, classify_prime
from chebpart.systemdata import params_panel
from test.factories import LucasParamsFactory

FIBONACCI = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
LUCAS = [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123]


def test_params():
    params = LucasParams(1, -1)
    assert params.D == 5
    assert str(params) == '(1,-1)'
    with pytest.raises(ValueError):
        LucasParams(3, 0)


def test_fibonacci_and_lucas():
    params = LucasParams(1, -1)
    assert [dickson(L, n, params) for n in range(11)] == FIBONACCI
    assert [dickson(K, n, params) for n in range(11)] == LUCAS
    assert dickson_mod(K, 5, params, 11) == FpElement(0, 11)


def test_matrix_agrees_with_recurrence():
    for params in LucasParamsFactory.create_batch(10):
        for kind in (L, K):
            for n in range(40):
                assert dickson_matrix(kind, n, params) == dickson(kind, n, params)
                assert dickson_mod(kind, n, params, 13).value == dickson(kind, n, params) % 13


def test_negative_index():
    with pytest.raises(ValueError):
        dickson(L, -1, LucasParams(1, -1))
    with pytest.raises(ValueError):
        dickson_mod(K, -1, LucasParams(1, -1), 7)


@pytest.mark.parametrize('T, Q, q', [(1, -1, -3), (3, 2, Fraction(5, 2)), (1, -2, Fraction(-5, 2)),
                                     (2, 3, Fraction(-2, 3)), (2, 4, -1)])
def test_trace_of(T, Q, q):
    assert trace_of(LucasParams(T, Q)) == q


def test_simple_values():
    assert simple_values(LucasParams(6, 8)) == (SimpleValue(1, 3, 2, 1), SimpleValue(1, 3, 2, -1))
    for params in LucasParamsFactory.create_batch(20):
        for sv in simple_values(params):
            assert similar(sv.params, params)
            assert trace_of(sv.params) == trace_of(params)
            assert sv.R > 0


def test_related_params():
    params = LucasParams(1, -1)
    assert twin_params(params) == LucasParams(5, 5)
    assert trace_of(twin_params(params)) == 3
    assert square_params(params) == LucasParams(3, 1)
    assert trace_of(square_params(params)) == 7
    assert twin_params(LucasParams(2, 1)) == LucasParams(0, 1)


def test_root_params():
    roots = root_params(LucasParams(6, 4))
    assert roots == (LucasParams(10, 20), LucasParams(-2, -4))
    assert {trace_of(r) for r in roots} == {3, -3}
    assert root_params(LucasParams(1, -1)) == ()


def test_twin_pair():
    assert similar(twin_params(LucasParams(3, 2)), LucasParams(1, -2))


@pytest.mark.parametrize('T, Q, squares, tag', [
    (1, -2, ['-2QD'], TraceTag.CASE_A),
    (3, 2, ['2Q'], TraceTag.CASE_A),
    (2, 3, ['-2D'], TraceTag.CASE_B),
    (1, -1, [], TraceTag.GENERIC),
    (2, 4, ['Q'], TraceTag.TRIVIAL),
    (6, 4, ['Q'], TraceTag.HAS_ROOT),
])
def test_classify_params(T, Q, squares, tag):
    pc = classify_params(LucasParams(T, Q))
    assert pc.squares == squares
    assert pc.classification.tag == tag


def test_square_conditions_match_traces():
    for params in LucasParamsFactory.create_batch(100):
        pc = classify_params(params)
        if pc.classification.tag != TraceTag.TRIVIAL:
            assert genericity_from_squares(genericity_flags(params)) == pc.classification.tag


def test_divisor_class_examples():
    assert divisor_class(LucasParams(1, -1), 11) == PI1
    assert divisor_class(LucasParams(1, -2), 7) == PI1
    assert divisor_class(LucasParams(1, -1), 11) == classify_prime(Fraction(-3), 11)


@pytest.mark.parametrize('T, Q', params_panel())
def test_divisor_class_routes(T, Q):
    params = LucasParams(T, Q)
    for p in primerange(3, 1000):
        try:
            by_trace, direct = divisor_class_routes(params, p)
        except ExcludedPrime:
            assert simple_values(params)[0].R % p == 0
            continue
        assert by_trace == direct, p


def test_divisor_class_random():
    for params in LucasParamsFactory.create_batch(10):
        for p in primerange(3, 200):
            try:
                cls = divisor_class(params, p)
            except ExcludedPrime:
                continue
            assert cls.index is not None


def test_divisor_class_disagreement(monkeypatch):
    from chebpart import lucas
    monkeypatch.setattr(lucas, '_direct_class', lambda sv, p: PI0)
    with pytest.raises(IdentityViolation):
        divisor_class(LucasParams(1, -1), 11)


def test_printed_form_discrepancies():
    found = printed_form_discrepancies([LucasParams(1, -1)], k_max=3)
    assert {'params': '(1,-1)', 'k': 1} in found
    assert printed_form_discrepancies([LucasParams(1, 1)], k_max=5) == []
