"""Deterministic segment-parallel scans over integer ranges."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable


def segment_bounds(start: int, stop: int, segment_length: int) -> list[tuple[int, int]]:
    """Half-open [lo, hi) chunks covering [start, stop)."""
    if segment_length < 1:
        raise ValueError("segment_length must be positive")
    return [(lo, min(lo + segment_length, stop)) for lo in range(start, stop, segment_length)]


def map_segments(start: int, stop: int, segment_length: int,
                 fn: Callable[[int, int], object], workers: int = 1) -> list:
    """Apply fn(lo, hi) to every segment, returning results in segment order.

    The worker count changes wall time only, never the result: segments are
    independent and the merge order is fixed, so reductions over the returned
    list are bit-identical for any worker count.
    """
    segs = segment_bounds(start, stop, segment_length)
    if workers <= 1 or len(segs) <= 1:
        return [fn(lo, hi) for lo, hi in segs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda seg: fn(*seg), segs))
