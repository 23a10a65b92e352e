"""Slow reference implementations that share no code with the package."""

from functools import lru_cache


def partitions_desc(n, p, hi=None):
    # nonincreasing tuples, largest part first; deliberately a different walk from the engine
    if hi is None:
        hi = n
    if p == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n - (p - 1), hi), 0, -1):
        if first * p < n:
            break
        for rest in partitions_desc(n - first, p - 1, first):
            yield (first,) + rest


def brute_grundy_table(cuts, n_max):
    """G(0..n_max) by direct mex over every option; index 0 unused."""
    g = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        seen = set()
        for d in cuts:
            for option in partitions_desc(n, d + 1):
                v = 0
                for h in option:
                    v ^= g[h]
                seen.add(v)
        m = 0
        while m in seen:
            m += 1
        g[n] = m
    return g


@lru_cache(maxsize=None)
def cached_grundy_table(cuts, n_max):
    return tuple(brute_grundy_table(cuts, n_max))


def brute_nim_set(cuts, n, p):
    g = cached_grundy_table(tuple(cuts), max(n, 1))
    out = set()
    for option in partitions_desc(n, p):
        v = 0
        for h in option:
            v ^= g[h]
        out.add(v)
    return out
