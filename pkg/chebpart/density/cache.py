import hashlib
import logging
import os
import struct
import tempfile
from pathlib import Path
from typing import NamedTuple

from chebpart.const import ClassTag
from chebpart.lib.arith import RationalTrace, canonical
from chebpart.partition import DENOMINATOR_DIVISOR, PI0, PI1, PartitionClass

logger = logging.getLogger(__name__)

MAGIC = b'CHEBPART'
VERSION = 1

_length = struct.Struct('<H')
_counts = struct.Struct('<QQ')
_record = struct.Struct('<QBB')

_tag_codes = {ClassTag.PI0: 0, ClassTag.PI1: 1, ClassTag.PI: 2, ClassTag.DENOMINATOR_DIVISOR: 3}


def encode_class(cls: PartitionClass) -> tuple[int, int]:
    return _tag_codes[cls.tag], cls.s or 0


def decode_class(tag: int, s: int) -> PartitionClass:
    match tag:
        case 0:
            return PI0
        case 1:
            return PI1
        case 2:
            return PartitionClass.pi(s)
        case 3:
            return DENOMINATOR_DIVISOR
    raise ValueError(f'unknown class tag {tag}')


Record = tuple[int, int, int]
"""(prime, tag code, s) as stored on disk."""


class CachedCensus(NamedTuple):
    limit: int
    records: list[Record]


class ClassificationCache:
    """One file per trace, named by the sha256 of its canonical string.

    Layout: magic, version byte, length-prefixed canonical q, then the
    limit and record count (8 bytes each) and the fixed-size records,
    all little-endian.
    """

    def __init__(self, directory: str | os.PathLike) -> None:
        self.directory = Path(directory)

    def path(self, q: RationalTrace) -> Path:
        return self.directory / f'{hashlib.sha256(canonical(q).encode()).hexdigest()}.bin'

    def load(self, q: RationalTrace) -> CachedCensus | None:
        """Return the stored census for q, or None if absent or unusable."""
        path = self.path(q)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            return None

        try:
            census = self._decode(q, data)
        except (ValueError, IndexError, struct.error) as e:
            logger.warning(f'ignoring cache file {path}: {e}')
            return None

        logger.info(f'cache hit for {canonical(q)} at {path} (limit {census.limit})')
        return census

    def store(self, q: RationalTrace, limit: int, records: list[Record]) -> None:
        """Write atomically: readers see either the old file or the complete new one."""
        self.directory.mkdir(parents=True, exist_ok=True)
        key = canonical(q).encode()
        payload = b''.join((
            MAGIC,
            bytes([VERSION]),
            _length.pack(len(key)),
            key,
            _counts.pack(limit, len(records)),
            *(_record.pack(*r) for r in records),
        ))
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix='.tmp')
        try:
            with os.fdopen(fd, 'wb') as f:
                f.write(payload)
            os.replace(tmp, self.path(q))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        logger.info(f'cached {len(records)} classifications for {canonical(q)} up to {limit}')

    @staticmethod
    def _decode(q: RationalTrace, data: bytes) -> CachedCensus:
        if not data.startswith(MAGIC):
            raise ValueError('bad magic')
        offset = len(MAGIC)
        if data[offset] != VERSION:
            raise ValueError(f'format version {data[offset]} != {VERSION}')
        offset += 1
        (key_length,) = _length.unpack_from(data, offset)
        offset += _length.size
        key = data[offset:offset + key_length].decode()
        if key != canonical(q):
            raise ValueError(f'file holds {key!r}, not {canonical(q)!r}')
        offset += key_length
        limit, count = _counts.unpack_from(data, offset)
        offset += _counts.size
        if len(data) != offset + count * _record.size:
            raise ValueError(f'expected {count} records, found {(len(data) - offset) / _record.size}')
        records = list(_record.iter_unpack(data[offset:]))
        return CachedCensus(limit, records)
