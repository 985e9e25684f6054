"""Deterministic fan-out over a process pool.

Workers receive items in order and results come back in the same order
(``ProcessPoolExecutor.map`` preserves input order), so output is
independent of completion order.  ``jobs=1`` runs inline, which keeps
tracebacks simple and avoids pool startup for small workloads.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_jobs() -> int:
    return os.cpu_count() or 1


def parallel_map(
    fn: Callable[[T], R], items: Sequence[T], jobs: int | None = None
) -> list[R]:
    items = list(items)
    if jobs is None:
        jobs = default_jobs()
    jobs = max(1, min(jobs, len(items) or 1))
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
