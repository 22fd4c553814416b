"""Independent brute-force references used by the tests."""

import string

ALPHABET = string.ascii_lowercase + string.digits + "-"

QWERTY_ROWS = ("1234567890-", "qwertyuiop", "asdfghjkl", "zxcvbnm")


def single_edits(t, alphabet=ALPHABET):
    """Every string one deletion, substitution, insertion or adjacent
    transposition away from ``t``."""
    out = set()
    n = len(t)
    for i in range(n):
        out.add(t[:i] + t[i + 1:])
        for c in alphabet:
            out.add(t[:i] + c + t[i + 1:])
    for i in range(n + 1):
        for c in alphabet:
            out.add(t[:i] + c + t[i:])
    for i in range(n - 1):
        out.add(t[:i] + t[i + 1] + t[i] + t[i + 2:])
    out.discard(t)
    return out


def is_model_typo(v, t, adj):
    """Filter a candidate with the five model predicates, stated directly."""
    if v == "www" + t:
        return True
    n = len(t)
    if len(v) == n - 1:
        return any(t[:i] + t[i + 1:] == v for i in range(n))
    if len(v) == n:
        diff = [i for i in range(n) if v[i] != t[i]]
        if len(diff) == 1:
            i = diff[0]
            return v[i] in adj.get(t[i], ())
        if len(diff) == 2:
            i, j = diff
            return j == i + 1 and v[i] == t[j] and v[j] == t[i]
        return False
    if len(v) == n + 1:
        for p in range(n + 1):
            if v[:p] + v[p + 1:] != t:
                continue
            c = v[p]
            near = set()
            if p < n:
                near |= {t[p]} | set(adj.get(t[p], ()))
            if p > 0:
                near |= {t[p - 1]} | set(adj.get(t[p - 1], ()))
            if c in near:
                return True
        return False
    return False


def oracle_typos(t, adj):
    cands = single_edits(t) | {"www" + t}
    return {v for v in cands if is_model_typo(v, t, adj)}


def exhaustive_best_score(text, logp):
    """Maximum summed log-probability over all 2**(n-1) splits.

    Visits every split depth first, carrying the left-to-right sum.
    """
    n = len(text)
    if n == 0:
        return 0.0
    table = {(i, j): logp(text[i:j]) for i in range(n) for j in range(i + 1, n + 1)}
    best = [float("-inf")]

    def walk(start, acc):
        if start == n:
            if acc > best[0]:
                best[0] = acc
            return
        for end in range(start + 1, n + 1):
            walk(end, acc + table[start, end])

    walk(0, 0.0)
    return best[0]


def linear_lpm(ip, prefixes):
    """Longest prefix by scanning every network."""
    best = None
    for net, value in prefixes:
        if ip.version == net.version and ip in net:
            if best is None or net.prefixlen > best[0].prefixlen:
                best = (net, value)
    return best
