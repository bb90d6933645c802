"""Ordered parallel map capped by SHUFFLY_THREADS (sequential by default)."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def workers() -> int:
    try:
        return max(1, int(os.environ.get("SHUFFLY_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], n: int | None = None) -> list[R]:
    """map(fn, items) with results in input order; fn must be picklable when n > 1."""
    items = list(items)
    n = workers() if n is None else n
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as ex:
        return list(ex.map(fn, items))
