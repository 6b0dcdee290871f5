"""Chunked enumeration of linear spans with an optional thread pool."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, TypeVar

import numpy as np

from .errors import BudgetExceeded
from .field import GF
from .matrix import field_matmul

DEFAULT_BUDGET = 10**7
CHUNK = 1 << 15

T = TypeVar("T")


def worker_count(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("SUMRANK_LAB_THREADS", "1") or 1)
    return max(1, threads)


def check_budget(count: int, budget: int | None, what: str) -> None:
    if budget is not None and count > budget:
        raise BudgetExceeded(f"{what}: {count} objects exceed budget {budget}")


def digit_block(start: int, stop: int, width: int, q: int) -> np.ndarray:
    """Base-q digits (least significant first) of the integers in [start, stop)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, width), dtype=np.int64)
    for j in range(width):
        out[:, j] = idx % q
        idx //= q
    return out


def ranges(total: int, chunk: int = CHUNK) -> list[tuple[int, int]]:
    return [(a, min(a + chunk, total)) for a in range(0, total, chunk)]


def span_chunk(basis: np.ndarray, F: GF, start: int, stop: int) -> np.ndarray:
    """Span elements with coefficient indices in [start, stop); basis rows are flat vectors."""
    coeffs = digit_block(start, stop, basis.shape[0], F.order)
    return field_matmul(coeffs, basis, F)


def iter_span(basis: np.ndarray, F: GF, budget: int | None = DEFAULT_BUDGET, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    total = F.order ** basis.shape[0]
    check_budget(total, budget, "span enumeration")
    for a, b in ranges(total, chunk):
        yield span_chunk(basis, F, a, b)


def map_chunks(fn: Callable[[int, int], T], total: int, threads: int | None = None, chunk: int = CHUNK) -> list[T]:
    """Apply ``fn(start, stop)`` over chunked index ranges, in order."""
    parts = ranges(total, chunk)
    workers = worker_count(threads)
    if workers == 1 or len(parts) == 1:
        return [fn(a, b) for a, b in parts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), parts))
