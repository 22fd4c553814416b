from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping


def ecdf(values: Iterable | Mapping) -> list[tuple[object, float]]:
    """Empirical CDF as ``(value, P[X <= value])`` at each distinct value.

    Accepts raw values or a ``{value: count}`` mapping, so shard-level
    counters can be merged by addition before calling this.
    """
    counts = values if isinstance(values, Mapping) else Counter(values)
    total = sum(counts.values())
    if not total:
        return []
    points = []
    running = 0
    for v in sorted(counts):
        running += counts[v]
        points.append((v, running / total))
    return points
