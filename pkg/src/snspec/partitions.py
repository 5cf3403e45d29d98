"""Partitions of n: orders, transforms, hooks, irreducible dimensions.

A partition is a non-increasing tuple of positive integers.  It plays a double
role throughout the package: as a cycle type it labels a conjugacy class of
the symmetric group, and it also labels an irreducible representation.  All
functions here are pure and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

Partition = tuple[int, ...]


def check_partition(parts) -> Partition:
    """Validate and canonicalize a partition given as any integer iterable.

    Parts must be positive and non-increasing; returns them as a tuple.
    """
    p = tuple(int(x) for x in parts)
    if not p:
        raise ValueError("partition must be non-empty")
    if any(x <= 0 for x in p):
        raise ValueError(f"partition parts must be positive: {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"partition parts must be non-increasing: {p}")
    return p


def _require_same_n(a: Partition, b: Partition) -> None:
    if sum(a) != sum(b):
        raise ValueError(f"partitions of different integers: {a} vs {b}")


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in decreasing lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def gen(m, cap):
        if m == 0:
            yield ()
            return
        for first in range(min(m, cap), 0, -1):
            for rest in gen(m - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def partition_number(n: int) -> int:
    """p_n, the number of partitions of n (p_0 = 1)."""
    return 1 if n == 0 else len(enumerate_partitions(n))


def dominates(a: Partition, b: Partition) -> bool:
    """True iff every prefix sum of a is >= the corresponding prefix sum of b."""
    _require_same_n(a, b)
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


def lex_compare(a: Partition, b: Partition) -> int:
    """-1, 0 or 1 as a is lexicographically smaller, equal or greater than b."""
    _require_same_n(a, b)
    if a == b:
        return 0
    return 1 if a > b else -1


def transpose(p: Partition) -> Partition:
    """Partition whose Young diagram is the transpose: part i counts parts of p >= i+1."""
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def split_partition(p: Partition, k: int) -> Partition:
    """Break the long first row of p into (p1-k-1, k+1), flipping the class parity.

    Requires n > 3k+1 and p1 >= n-k, which makes the result a valid partition.
    """
    n = sum(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    if n <= 3 * k + 1:
        raise ValueError(f"split requires n > 3k+1 (n={n}, k={k})")
    if p[0] < n - k:
        raise ValueError(f"split requires first part >= n-k, got {p} with n={n}, k={k}")
    return check_partition((p[0] - k - 1, k + 1) + p[1:])


def cycle_type_sign(p: Partition) -> int:
    """Sign of any permutation with cycle type p: (-1)**(n - number of parts)."""
    return -1 if (sum(p) - len(p)) % 2 else 1


def hook_lengths(p: Partition) -> list[list[int]]:
    """Hook length of each cell: arm + leg + 1."""
    t = transpose(p)
    return [[(p[i] - j) + (t[j] - i) - 1 for j in range(p[i])] for i in range(len(p))]


def hook_product(p: Partition) -> int:
    out = 1
    for row in hook_lengths(p):
        for h in row:
            out *= h
    return out


@lru_cache(maxsize=None)
def dim_irrep(p: Partition) -> int:
    """Dimension of the irreducible representation labelled by p: n! / (product of hooks)."""
    n = sum(p)
    q, r = divmod(factorial(n), hook_product(p))
    if r:
        raise AssertionError(f"hook product does not divide n! for {p}")
    return q


def classify(p: Partition, k: int) -> str:
    """Label p relative to k as trivial, fat, tall, medium or sign.

    fat: first row >= n-k (excluding the trivial partition (n));
    tall: first column >= n-k (excluding the sign partition (1^n));
    requires n >= 2k+1 so that fat and tall cannot overlap.
    """
    n = sum(p)
    if n <= 2 * k:
        raise ValueError(f"classification needs n >= 2k+1 (n={n}, k={k})")
    if len(p) == 1:
        return "trivial"
    if p[0] == 1:
        return "sign"
    if p[0] >= n - k:
        return "fat"
    if len(p) >= n - k:
        return "tall"
    return "medium"


def fat_list(n: int, k: int) -> tuple[Partition, ...]:
    """All partitions >= (n-k, 1^k) in decreasing lex order; there are sum(p_t, t<=k) of them."""
    if n < 2 * k:
        raise ValueError(f"fat_list requires n >= 2k (n={n}, k={k})")
    return tuple(p for p in enumerate_partitions(n) if p[0] >= n - k)


@dataclass(frozen=True)
class DimBoundReport:
    n: int
    k: int
    min_medium_dim: int | None
    min_medium_partition: Partition | None
    long_row_checks: bool


def dim_bound_report(n: int, k: int) -> DimBoundReport:
    """Minimum dimension over medium partitions, plus the long-row hook inequality.

    The long-row check asserts, for every partition whose first row or column
    has length n-t with k+1 <= t < n/2, the exact integer inequality

        (product of hooks) * (n-t)**(n-t) <= t! * (n-t)! * n**(n-t),

    which is the rational strengthening of the dimension lower bound
    binom(n,t) * (1 + t/(n-t))**-(n-t).
    """
    if n < 2 * k + 2:
        raise ValueError(f"dim_bound_report requires n >= 2k+2 (n={n}, k={k})")
    min_dim = None
    min_part = None
    checks_ok = True
    for p in enumerate_partitions(n):
        if classify(p, k) == "medium":
            d = dim_irrep(p)
            if min_dim is None or d < min_dim:
                min_dim, min_part = d, p
        hooks = None
        for t in {n - p[0], n - len(p)}:
            if k + 1 <= t and 2 * t < n:
                if hooks is None:
                    hooks = hook_product(p)
                lhs = hooks * (n - t) ** (n - t)
                rhs = factorial(t) * factorial(n - t) * n ** (n - t)
                if lhs > rhs:
                    checks_ok = False
    return DimBoundReport(n, k, min_dim, min_part, checks_ok)


def parse_partition(text: str) -> Partition:
    """Parse the CLI form "3+2+2" (or a single integer) into a partition."""
    return check_partition(int(piece) for piece in text.split("+"))


def format_partition(p: Partition) -> str:
    return "+".join(str(x) for x in p)
