from fractions import Fraction

import pytest

from chebpart.density.cache import MAGIC, ClassificationCache, decode_class, encode_class
from chebpart.partition import DENOMINATOR_DIVISOR, PI0, PI1, PartitionClass

RECORDS = [(3, 0, 0), (5, 2, 3), (7, 3, 0), (11, 1, 0)]


@pytest.mark.parametrize('cls', [PI0, PI1, PartitionClass.pi(2), PartitionClass.pi(9), DENOMINATOR_DIVISOR])
def test_class_codes(cls):
    assert decode_class(*encode_class(cls)) == cls


def test_unknown_class_code():
    with pytest.raises(ValueError):
        decode_class(7, 0)


def test_store_and_load(cache_dir):
    cache = ClassificationCache(cache_dir)
    q = Fraction(-5, 2)
    assert cache.load(q) is None

    cache.store(q, 11, RECORDS)
    census = cache.load(q)
    assert census.limit == 11
    assert census.records == RECORDS
    assert cache.path(q).read_bytes().startswith(MAGIC)
    assert list(cache_dir.glob('*.tmp')) == []


def test_one_file_per_trace(cache_dir):
    cache = ClassificationCache(cache_dir)
    cache.store(Fraction(3), 11, RECORDS)
    cache.store(Fraction(6, 5), 11, RECORDS[:2])
    assert len(list(cache_dir.iterdir())) == 2
    assert cache.path(Fraction(6, 5)) != cache.path(Fraction(3))


@pytest.mark.parametrize('mangle', [
    lambda data: b'garbage',
    lambda data: data[:-3],
    lambda data: data[:8] + bytes([99]) + data[9:],
    lambda data: data + b'\x00',
])
def test_unusable_file_is_ignored(cache_dir, mangle):
    cache = ClassificationCache(cache_dir)
    q = Fraction(3)
    cache.store(q, 11, RECORDS)
    path = cache.path(q)
    path.write_bytes(mangle(path.read_bytes()))
    assert cache.load(q) is None


def test_file_for_another_trace(cache_dir):
    cache = ClassificationCache(cache_dir)
    cache.store(Fraction(3), 11, RECORDS)
    cache.path(Fraction(3)).rename(cache.path(Fraction(5)))
    assert cache.load(Fraction(5)) is None
