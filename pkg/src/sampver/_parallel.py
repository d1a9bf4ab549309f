"""Ordered chunked execution capped by the ``SAVER_THREADS`` environment variable."""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import ParameterError

CHUNK = 1 << 16


def thread_count():
    raw = os.environ.get("SAVER_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"SAVER_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ParameterError("SAVER_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def map_ranges(fn, n, chunk=CHUNK):
    """Apply ``fn(start, stop)`` over ``[0, n)`` in chunks and concatenate in order.

    Results never depend on the thread count: chunks are fixed-size and the
    outputs are joined by position.
    """
    bounds = [(s, min(s + chunk, n)) for s in range(0, n, chunk)]
    workers = min(thread_count(), len(bounds))
    if workers <= 1:
        parts = [fn(s, e) for s, e in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda se: fn(*se), bounds))
    return np.concatenate(parts) if parts else np.empty(0)
