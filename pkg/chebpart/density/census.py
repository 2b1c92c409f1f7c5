"""Parallel census over disjoint prime ranges.

Each segment is sieved and classified by a top-level worker in its own
process; results are keyed by segment index and merged in range order,
so the output does not depend on the number of workers.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from fractions import Fraction
from typing import Callable, NamedTuple

from chebpart.config import config
from chebpart.density.cache import Record, encode_class
from chebpart.lib.arith import legendre_rational, primes_in_range, rational_mod, segment_plan, two_adic_valuation
from chebpart.partition import classify_prime, gamma_level, preimage_depth

logger = logging.getLogger(__name__)


class CellRecord(NamedTuple):
    p: int
    excluded: bool
    depth_plus: int
    depth_minus: int
    gamma: int
    tag: int
    s: int
    p_hat_val2: int


def classify_segment(idx: int, low: int, high: int, numerator: int, denominator: int) -> tuple[int, list[Record]]:
    q = Fraction(numerator, denominator)
    records = []
    for p in primes_in_range(max(low, 3), high):
        records += [(p, *encode_class(classify_prime(q, p)))]
    return idx, records


def cell_segment(idx: int, low: int, high: int, numerator: int, denominator: int,
                 max_depth: int) -> tuple[int, list[CellRecord]]:
    q0 = Fraction(numerator, denominator)
    records = []
    for p in primes_in_range(max(low, 3), high):
        if denominator % p == 0 or (delta := legendre_rational(q0 * q0 - 4, p)) == 0:
            records += [CellRecord(p, True, 0, 0, 0, 0, 0, 0)]
            continue
        qv = rational_mod(q0, p).value
        tag, s = encode_class(classify_prime(q0, p))
        records += [CellRecord(
            p,
            False,
            preimage_depth(qv, p, max_depth),
            preimage_depth(-qv % p, p, max_depth),
            gamma_level(p),
            tag,
            s,
            two_adic_valuation((p - delta) // 2)[0],
        )]
    return idx, records


def worker_count(threads: int = None) -> int:
    return threads or config.CENSUS.THREADS or os.cpu_count() or 1


def run_segments(worker: Callable, low: int, high: int, *args, threads: int = None) -> list:
    """Run `worker(idx, seg_low, seg_high, *args)` over [low, high) and
    concatenate the per-segment results in range order."""
    segments = list(segment_plan(low, high, 2 * config.CENSUS.CHUNK_SIZE))
    workers = min(worker_count(threads), len(segments)) or 1
    logger.info(f'{worker.__name__}: {len(segments)} segments of [{low}, {high}) on {workers} workers')

    if workers == 1:
        by_idx = dict(worker(idx, lo, hi, *args) for idx, lo, hi in segments)
    else:
        by_idx = {}
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futures = [ex.submit(worker, idx, lo, hi, *args) for idx, lo, hi in segments]
            for fut in as_completed(futures):
                idx, result = fut.result()
                by_idx[idx] = result

    merged = []
    for idx, _, _ in segments:
        merged += by_idx[idx]
    return merged
