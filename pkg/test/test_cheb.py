from fractions import Fraction

import pytest
from sympy import primerange

from chebpart.cheb import (
    C, U, V, W, IdentityRange, IntPolynomial, cheb_coeffs, cheb_eval, cheb_eval_mod, chebotomic, identity_names,
    splits_completely, verify_identity,
)
from chebpart.const import ChebKind
from chebpart.lib.arith import FpElement, rational_mod
from chebpart.lib.exceptions import IdentityViolation, InvalidIndex, ZeroPolynomialModP
from chebpart.systemdata import chebyshev_table
from test import recurrence_value, residue, root_count
from test.factories import TraceFactory


def test_reference_table():
    table = chebyshev_table()
    assert len(table[C]) == 14 and len(table[U]) == 14
    for kind, rows in table.items():
        for n, text in rows.items():
            assert str(cheb_coeffs(kind, n)) == text


@pytest.mark.parametrize('kind, n, text', [
    (C, 0, '2'),
    (C, 6, 'q^6-6q^4+9q^2-2'),
    (U, 0, '0'),
    (U, 5, 'q^4-3q^2+1'),
    (V, 1, '1'),
    (V, 3, 'q-1'),
    (W, 3, 'q+1'),
    (V, 5, 'q^2-q-1'),
])
def test_coefficients(kind, n, text):
    assert str(cheb_coeffs(kind, n)) == text


@pytest.mark.parametrize('kind, n', [(C, -1), (U, -3), (V, 0), (V, 4), (W, -1), (W, 2)])
def test_invalid_index(kind, n):
    with pytest.raises(InvalidIndex):
        cheb_coeffs(kind, n)
    with pytest.raises(InvalidIndex):
        cheb_eval(kind, n, Fraction(1, 3))


@pytest.mark.parametrize('kind', list(ChebKind))
def test_eval_against_recurrence(kind):
    for q in TraceFactory.create_batch(10):
        for n in range(31):
            if kind in (V, W) and n % 2 == 0:
                continue
            assert cheb_eval(kind, n, q) == recurrence_value(kind, n, q)
            if n < 15:
                assert cheb_coeffs(kind, n)(q) == cheb_eval(kind, n, q)


@pytest.mark.parametrize('p', [7, 11, 101])
@pytest.mark.parametrize('kind', list(ChebKind))
def test_eval_mod(kind, p):
    q = Fraction(3, 5)
    for n in range(1, 41, 1 if kind in (C, U) else 2):
        assert cheb_eval_mod(kind, n, rational_mod(q, p)).value == residue(cheb_eval(kind, n, q), p)


def test_eval_mod_huge_index():
    # U_5(3) = 0 mod 11 and A^5 = I, so U_n(3) mod 11 has period 5
    assert cheb_eval_mod(U, 10 ** 18, FpElement(3, 11)).value == 0
    assert cheb_eval_mod(U, 10 ** 18 + 1, FpElement(3, 11)).value == 1
    assert cheb_eval_mod(C, 10 ** 18, FpElement(3, 11)).value == 2


def test_composition():
    assert cheb_coeffs(C, 2).compose(cheb_coeffs(C, 3)) == cheb_coeffs(C, 6)


@pytest.mark.parametrize('k, text', [(3, 'q+1'), (4, 'q'), (5, 'q^2+q-1'), (6, 'q-1'), (8, 'q^2-2')])
def test_chebotomic(k, text):
    assert str(chebotomic(k)) == text


def test_chebotomic_rejects_small_index():
    with pytest.raises(InvalidIndex):
        chebotomic(2)


def test_splits_completely():
    assert splits_completely(cheb_coeffs(C, 2), 7)
    assert not splits_completely(cheb_coeffs(C, 2), 5)
    assert splits_completely(IntPolynomial.from_coeffs([1, -2, 1]), 5)
    with pytest.raises(ZeroPolynomialModP):
        splits_completely(IntPolynomial.from_coeffs([7, 14]), 7)


@pytest.mark.parametrize('k', [5, 7, 8, 9, 12])
def test_splits_against_root_count(k):
    f = chebotomic(k)
    for p in primerange(3, 60):
        if k % p:
            assert splits_completely(f, p) == (root_count(list(f.coeffs), p) == f.degree)


@pytest.mark.parametrize('name', identity_names())
def test_identity_holds(name):
    assert verify_identity(name).instances > 0


def test_identity_small_range():
    ranges = IdentityRange.sampled(n_max=7, k_max=4, count=3, seed=42)
    assert verify_identity('F1', ranges).instances > 0


def test_unknown_identity():
    with pytest.raises(ValueError):
        verify_identity('NO_SUCH_IDENTITY')


def test_identity_violation(monkeypatch):
    from chebpart import cheb

    def broken(r):
        yield {'n': 1}, True
        yield {'n': 2}, False

    monkeypatch.setitem(cheb._identities, 'BROKEN', broken)
    with pytest.raises(IdentityViolation) as excinfo:
        verify_identity('BROKEN')
    assert excinfo.value.identity == 'BROKEN'
    assert excinfo.value.instance == {'n': 2}
