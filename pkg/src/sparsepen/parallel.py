"""Deterministic worker-pool helper.

Work items are independent and write into slots keyed by their index, so
results are identical no matter how many worker threads run them.  The
worker count is capped by the SPARSEPEN_THREADS environment variable
(0 or unset means auto).
"""
from __future__ import annotations

import os
import sys
from concurrent.futures import ThreadPoolExecutor

_AUTO_CAP = 8


def worker_count(n_items: int | None = None) -> int:
    raw = os.environ.get("SPARSEPEN_THREADS", "").strip()
    count = 0
    if raw:
        try:
            count = int(raw)
        except ValueError:
            print(f"sparsepen: ignoring invalid SPARSEPEN_THREADS={raw!r}",
                  file=sys.stderr)
            count = 0
        if count < 0:
            count = 0
    if count == 0:
        count = min(os.cpu_count() or 1, _AUTO_CAP)
    if n_items is not None:
        count = max(1, min(count, n_items))
    return count


def run_indexed(fn, n_items: int) -> list:
    """Evaluate fn(i) for i in range(n_items); results ordered by index."""
    workers = worker_count(n_items)
    if workers == 1 or n_items <= 1:
        return [fn(i) for i in range(n_items)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n_items)))
