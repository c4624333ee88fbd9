from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def parallel_map(func, items, jobs: int = 1) -> list:
    """Order-preserving map; results do not depend on ``jobs``."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    chunksize = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
