"""Deterministic parallel helpers.

The environment variable ZETALAB_WORKERS sets the worker count (default 1,
i.e. plain serial execution).  Work items are independent by contract and
results are always collected in input order, so a fixed configuration gives
identical output no matter how many workers run.  Threads are the right
vehicle here: the heavy kernels sit in numpy and release the GIL.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

_X = TypeVar("_X")
_Y = TypeVar("_Y")


def worker_count() -> int:
    """Worker count from ZETALAB_WORKERS, clipped to [1, 64]."""
    raw = os.environ.get("ZETALAB_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return min(max(1, n), 64)


def ordered_map(fn: Callable[[_X], _Y], items: Iterable[_X]) -> list[_Y]:
    """map(fn, items) with optional thread workers; output order == input order."""
    seq: Sequence[_X] = list(items)
    n = worker_count()
    if n <= 1 or len(seq) <= 1:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, seq))
