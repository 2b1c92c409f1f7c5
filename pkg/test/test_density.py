from collections import Counter
from fractions import Fraction

import pytest
from sympy import primerange

from chebpart.const import Cell
from chebpart.density import cell_census, compare, empirical_partition, predicted_cell_densities
from chebpart.density.cache import ClassificationCache
from chebpart.lib.exceptions import EmptyCensus, TrivialTrace
from chebpart.partition import DENOMINATOR_DIVISOR, classify_prime

F = Fraction


def direct_counts(q, limit):
    return Counter(classify_prime(q, p) for p in primerange(3, limit + 1))


@pytest.mark.parametrize('q', [F(3), F(6, 5), F(-2, 3)])
def test_empirical_partition(q):
    census = empirical_partition(q, 3000, use_cache=False)
    counts = direct_counts(q, 3000)
    excluded = counts.pop(DENOMINATOR_DIVISOR, 0)
    assert census.counts == dict(counts)
    assert census.excluded == excluded
    assert census.total_odd_primes == len(list(primerange(3, 3001)))
    assert sum(census.counts.values()) == census.admissible
    assert not census.cache_hit


def test_limit_too_small():
    with pytest.raises(ValueError):
        empirical_partition(F(3), 2)


def test_cache_reuse(cache_dir):
    q = F(1, 2)
    first = empirical_partition(q, 3000, use_cache=True)
    assert not first.cache_hit
    assert ClassificationCache(cache_dir).load(q).limit == 3000

    again = empirical_partition(q, 3000, use_cache=True)
    assert again.cache_hit
    assert again.counts == first.counts

    shorter = empirical_partition(q, 1000, use_cache=True)
    assert shorter.cache_hit
    assert shorter.counts == empirical_partition(q, 1000, use_cache=False).counts

    longer = empirical_partition(q, 5000, use_cache=True)
    assert not longer.cache_hit
    assert longer.counts == empirical_partition(q, 5000, use_cache=False).counts
    assert ClassificationCache(cache_dir).load(q).limit == 5000


def test_corrupt_cache_is_recomputed(cache_dir):
    q = F(3)
    cache = ClassificationCache(cache_dir)
    cache_dir.mkdir(parents=True)
    cache.path(q).write_bytes(b'not a census')
    census = empirical_partition(q, 1000, use_cache=True)
    assert not census.cache_hit
    assert census.counts == empirical_partition(q, 1000, use_cache=False).counts
    assert cache.load(q).limit == 1000


def test_worker_count_does_not_matter():
    q = F(-5, 2)
    single = empirical_partition(q, 6000, threads=1, use_cache=False)
    several = empirical_partition(q, 6000, threads=3, use_cache=False)
    assert single.counts == several.counts
    assert single.excluded == several.excluded


@pytest.mark.parametrize('q', [F(1, 2), F(-5, 2), F(-2, 3), F(6, 5), F(7)])
def test_compare(q):
    report = compare(q, 10000, tolerance=0.06, use_cache=False)
    assert report.passed
    assert sum(row.empirical for row in report.rows) == 1
    assert [row.cls.index for row in report.rows] == list(range(len(report.rows)))
    assert len(report.rows) >= report.profile.dyadic_from + 3
    assert set(report.dyadic_ratios()) <= set(range(report.profile.dyadic_from, report.profile.dyadic_from + 3))


def test_compare_flags_deviation():
    report = compare(F(1, 2), 1000, tolerance=0, use_cache=False)
    assert not report.passed
    assert all(row.flagged == (row.deviation > 0) for row in report.rows)


def test_compare_trivial():
    with pytest.raises(TrivialTrace):
        compare(F(0), 1000, use_cache=False)


@pytest.mark.parametrize('q', [F(1, 3), F(-2, 3)])
def test_compare_no_admissible_primes(q):
    with pytest.raises(EmptyCensus):
        compare(q, 3, use_cache=False)


def test_cell_census_generic():
    census = cell_census(F(1, 2), 5000, max_depth=2)
    assert census.violations == 0
    assert sum(census.cells[1].values()) == census.admissible == census.r_counts[0]
    assert census.cells[1][Cell.BOTH_R] == census.r_counts[1]
    assert sum(census.cells[2].values()) == census.r_counts[1]
    assert census.omega_plus[1] == census.cells[1][Cell.BOTH_R] + census.cells[1][Cell.OMEGA_PLUS_ONLY]
    assert census.excluded == 2
    assert not census.coincide[1]

    predicted = predicted_cell_densities(F(1, 2), 1)
    assert abs(census.fraction(census.r_counts[1]) - predicted.r) < 0.05
    assert abs(census.fraction(census.omega_plus[1]) - predicted.omega) < 0.05


def test_cell_census_circular():
    census = cell_census(F(6, 5), 3000, max_depth=1)
    assert census.coincide[1]
    assert census.violations == 0


def test_cell_census_not_primitive():
    assert cell_census(F(7), 1000, max_depth=1).violations is None


def test_cell_census_trivial():
    with pytest.raises(TrivialTrace):
        cell_census(F(2), 1000)


def test_cell_census_no_admissible_primes():
    # 3 divides the denominator, 5 and 7 divide q0^2 - 4 = -35/9
    with pytest.raises(EmptyCensus):
        cell_census(F(1, 3), 7, max_depth=1)


@pytest.mark.parametrize('q, k, omega, r', [
    (F(1, 2), 1, F(1, 2), F(1, 4)),
    (F(1, 2), 2, F(1, 8), F(1, 16)),
    (F(-5, 2), 2, F(1, 8), F(1, 8)),
    (F(-2, 3), 3, F(1, 16), F(1, 32)),
    (F(6, 5), 1, F(1, 2), F(1, 2)),
    (F(6, 5), 2, F(1, 4), F(1, 8)),
])
def test_predicted_cell_densities(q, k, omega, r):
    predicted = predicted_cell_densities(q, k)
    assert (predicted.omega, predicted.r) == (omega, r)


def test_predicted_cell_densities_rejects():
    with pytest.raises(ValueError):
        predicted_cell_densities(F(7), 1)
    with pytest.raises(ValueError):
        predicted_cell_densities(F(1, 2), 0)


@pytest.mark.parametrize('q', [F(-5, 2), F(-2, 3)])
def test_predicted_r_gamma_first_table(q):
    predicted = predicted_cell_densities(q, 1)
    assert predicted.r_gamma == {1: F(1, 4), 2: F(1, 8), 3: F(1, 16), 4: F(1, 32)}

    census = cell_census(q, 20000, max_depth=1)
    for s, density in predicted.r_gamma.items():
        assert abs(census.fraction(census.r_gamma[1, s]) - density) < 0.04
