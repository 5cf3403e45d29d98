"""Permutations of {0, ..., n-1} as image tuples, ranked by Lehmer code.

Rank order coincides with lexicographic order of the one-line notation, so
rank 0 is the identity and rank n!-1 is the reversal.  All serialized group
functions and families index permutations by this rank.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _lex_permutations
from math import factorial

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Product p*q acting as "apply q first": (p*q)(i) = p[q[i]]."""
    return tuple(p[j] for j in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def lehmer_rank(p: Perm) -> int:
    n = len(p)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        rank += smaller * factorial(n - 1 - i)
    return rank


def perm_from_rank(n: int, rank: int) -> Perm:
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} out of range for n={n}")
    pool = list(range(n))
    out = []
    for i in range(n, 0, -1):
        f = factorial(i - 1)
        idx, rank = divmod(rank, f)
        out.append(pool.pop(idx))
    return tuple(out)


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    """All permutations of {0,...,n-1} in rank order (index == Lehmer rank)."""
    return tuple(_lex_permutations(range(n)))


@lru_cache(maxsize=None)
def rank_table(n: int) -> dict[Perm, int]:
    return {p: r for r, p in enumerate(all_perms(n))}


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def fixed_points(p: Perm) -> int:
    return sum(1 for i, j in enumerate(p) if i == j)


def sign(p: Perm) -> int:
    return -1 if (len(p) - len(cycles(p))) % 2 else 1


def agreements(p: Perm, q: Perm) -> int:
    """Number of points where p and q take the same value."""
    return sum(1 for a, b in zip(p, q) if a == b)


def perm_with_cycle_type(ct: tuple[int, ...]) -> Perm:
    """A canonical representative of the conjugacy class with the given cycle type."""
    img = []
    start = 0
    for length in ct:
        img.extend(list(range(start + 1, start + length)) + [start])
        start += length
    return tuple(img)
