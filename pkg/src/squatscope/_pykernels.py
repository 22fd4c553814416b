"""Pure-Python versions of the hot kernels.

Signatures match ``_speedups`` exactly; ``squatscope.kernels`` picks one at
import time.
"""

from __future__ import annotations


def _near(matrix: bytes, a: str, b: str) -> bool:
    """True when ``b`` equals ``a`` or sits next to it on the keyboard."""
    if a == b:
        return True
    oa, ob = ord(a), ord(b)
    return oa < 128 and ob < 128 and matrix[oa * 128 + ob] != 0


def is_typo(candidate: str, trademark: str, matrix: bytes) -> bool:
    """Single-edit typo membership without enumerating variants.

    ``matrix`` is a 128x128 row-major adjacency table (nonzero = adjacent).
    """
    n = len(trademark)
    k = len(candidate)
    if candidate == trademark:
        return False
    d = k - n
    if d == 3:
        return candidate[:3] == "www" and candidate[3:] == trademark
    if d < -1 or d > 1:
        return False

    lim = k if k < n else n
    p = 0
    while p < lim and candidate[p] == trademark[p]:
        p += 1
    s = 0
    while s < lim and candidate[k - 1 - s] == trademark[n - 1 - s]:
        s += 1

    if d == 0:
        # exactly one substitution, or one swap of neighbours
        q = n - 1 - s  # last mismatch
        if p == q:
            a, b = ord(trademark[p]), ord(candidate[p])
            return a < 128 and b < 128 and matrix[a * 128 + b] != 0
        return (
            q == p + 1
            and candidate[p] == trademark[q]
            and candidate[q] == trademark[p]
        )
    if d == -1:
        return p + s >= k
    # d == 1: candidate = trademark[:j] + ch + trademark[j:]
    if p + s < n:
        return False
    lo = n - s
    if lo < 0:
        lo = 0
    for j in range(lo, p + 1):
        ch = candidate[j]
        if j > 0 and _near(matrix, trademark[j - 1], ch):
            return True
        if j < n and _near(matrix, trademark[j], ch):
            return True
    return False


def ac_scan(text: str, amap: bytes, delta, n_classes: int, out_start, out_ids, plen) -> list:
    """Run a flattened Aho-Corasick DFA over ``text``.

    Returns ``(pattern_id, start)`` pairs in order of match end.
    """
    hits = []
    state = 0
    pos = 0
    for ch in text:
        o = ord(ch)
        cls = amap[o] if o < 128 else 0
        state = delta[state * n_classes + cls]
        a = out_start[state]
        b = out_start[state + 1]
        while a < b:
            pid = out_ids[a]
            hits.append((pid, pos - plen[pid] + 1))
            a += 1
        pos += 1
    return hits
