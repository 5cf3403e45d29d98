"""Exact character tables of the symmetric group.

The table is built from two matrices that can be counted directly: the Kostka
matrix K (semistandard tableau counts) and the permutation-character matrix D
(fixed tabloid counts).  With rows and columns sorted in decreasing
lexicographic order, K is upper-triangular with unit diagonal and K^t C = D,
so the table C falls out of an integer forward substitution with no division
at all.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import TheoremViolation
from .linalg import det_bareiss
from .partitions import (
    Partition,
    check_partition,
    enumerate_partitions,
    fat_list,
    split_partition,
)


def _horizontal_strip_extensions(shape: Partition | tuple, size: int):
    """All partitions obtained from `shape` by adding a horizontal strip of `size` cells.

    A horizontal strip adds at most one cell per column, i.e. the new shape nu
    satisfies nu[i] >= shape[i] >= nu[i+1].
    """
    rows = len(shape)

    def grow(i, remaining, prev_new):
        if i == rows:
            if remaining == 0:
                yield ()
            elif remaining <= prev_new and remaining <= (shape[rows - 1] if rows else prev_new):
                # one new row below, must not exceed the previous original row
                yield (remaining,)
            return
        low = shape[i]
        high = min(prev_new, shape[i - 1] if i > 0 else low + remaining)
        high = min(high, low + remaining)
        for new in range(high, low - 1, -1):
            for rest in grow(i + 1, remaining - (new - low), new):
                yield (new,) + rest

    if rows == 0:
        yield (size,) if size else ()
        return
    for nu in grow(0, size, shape[0] + size):
        yield nu


@lru_cache(maxsize=None)
def _kostka_column(content: Partition) -> dict[Partition, int]:
    """K[shape] for every shape, at the given content, by stacking horizontal strips."""
    level: dict[tuple, int] = {(): 1}
    for part in content:
        nxt: dict[tuple, int] = {}
        for shape, count in level.items():
            for bigger in _horizontal_strip_extensions(shape, part):
                nxt[bigger] = nxt.get(bigger, 0) + count
        level = nxt
    return level


def kostka_number(shape: Partition, content: Partition) -> int:
    """Number of semistandard fillings of `shape` (rows weakly increasing,
    columns strictly increasing) with `content[i]` copies of i+1."""
    shape = check_partition(shape)
    content = check_partition(content)
    if sum(shape) != sum(content):
        raise ValueError("shape and content must partition the same integer")
    return _kostka_column(content).get(shape, 0)


def perm_character(shape: Partition, cycle_type: Partition) -> int:
    """Number of tabloids of the given shape fixed by a permutation of the given cycle type.

    A tabloid is fixed exactly when every row is a union of cycles, so the
    count is a multiset assignment of cycles to rows.
    """
    shape = check_partition(shape)
    cycle_type = check_partition(cycle_type)
    if sum(shape) != sum(cycle_type):
        raise ValueError("shape and cycle type must partition the same integer")
    lengths = sorted(set(cycle_type), reverse=True)
    mults = tuple(cycle_type.count(l) for l in lengths)

    def row_choices(target, remaining):
        """(ways, leftover multiplicities) for filling one row of length `target`."""
        def rec(idx, todo, avail):
            if todo == 0:
                yield 1, avail
                return
            if idx == len(lengths):
                return
            l = lengths[idx]
            for take in range(min(avail[idx], todo // l) + 1):
                for ways, rest in rec(idx + 1, todo - take * l, avail):
                    yield ways * comb(avail[idx], take), rest[:idx] + (avail[idx] - take,) + rest[idx + 1:]
        yield from rec(0, target, remaining)

    cache: dict[tuple[int, tuple], int] = {}

    def count(row, avail):
        if row == len(shape):
            return 1 if all(a == 0 for a in avail) else 0
        key = (row, avail)
        if key not in cache:
            cache[key] = sum(w * count(row + 1, rest) for w, rest in row_choices(shape[row], avail))
        return cache[key]

    return count(0, mults)


def kostka_matrix(n: int) -> list[list[int]]:
    """K[i][j] = Kostka number for (shape_i, content_j), partitions in decreasing lex order."""
    parts = enumerate_partitions(n)
    cols = [_kostka_column(mu) for mu in parts]
    return [[cols[j].get(lam, 0) for j in range(len(parts))] for lam in parts]


def perm_char_matrix(n: int) -> list[list[int]]:
    """D[i][j] = permutation character of shape_i at cycle type_j."""
    parts = enumerate_partitions(n)
    return [[perm_character(lam, mu) for mu in parts] for lam in parts]


class CharacterTable:
    """Square integer matrix of irreducible characters, indexed by partitions
    of n in decreasing lexicographic order (top-left entry is the trivial
    character on the n-cycle class)."""

    def __init__(self, n: int, partitions: tuple[Partition, ...], rows: list[list[int]]):
        self.n = n
        self.partitions = partitions
        self.index = {p: i for i, p in enumerate(partitions)}
        self.rows = rows

    def value(self, rep: Partition, cycle_type: Partition) -> int:
        return self.rows[self.index[check_partition(rep)]][self.index[check_partition(cycle_type)]]

    def dim(self, rep: Partition) -> int:
        return self.rows[self.index[rep]][self.index[(1,) * self.n]]

    def row(self, rep: Partition) -> list[int]:
        return list(self.rows[self.index[rep]])

    def __eq__(self, other):
        return (isinstance(other, CharacterTable)
                and self.n == other.n and self.rows == other.rows)

    def to_json(self) -> dict:
        return {"n": self.n,
                "order": [list(p) for p in self.partitions],
                "rows": [list(r) for r in self.rows]}


@lru_cache(maxsize=None)
def character_table(n: int) -> CharacterTable:
    """Exact character table of the symmetric group on n symbols.

    Solves K^t C = D by integer forward substitution.  Desk scale: the cost is
    dominated by the p(n)^2 counting problems, fine for n up to the mid-teens.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = enumerate_partitions(n)
    m = len(parts)
    K = kostka_matrix(n)
    for i in range(m):
        if K[i][i] != 1 or any(K[i][j] for j in range(i)):
            raise AssertionError("Kostka matrix is not unitriangular in lex order")
    D = perm_char_matrix(n)
    rows: list[list[int]] = []
    for i in range(m):
        row = list(D[i])
        for j in range(i):
            coeff = K[j][i]
            if coeff:
                prev = rows[j]
                row = [a - coeff * b for a, b in zip(row, prev)]
        rows.append(row)
    return CharacterTable(n, parts, rows)


def q_count(k: int) -> int:
    """Number of partitions >= (n-k, 1^k) for any n >= 2k: sum of p_t for t <= k."""
    return sum(partition_count_cached(t) for t in range(k + 1))


@lru_cache(maxsize=None)
def partition_count_cached(t: int) -> int:
    return 1 if t == 0 else len(enumerate_partitions(t))


def minor_tilde(n: int, k: int, table: CharacterTable | None = None) -> list[list[int]]:
    """Top-left minor of the character table over partitions > (n-k, 1^k).

    Certified invertible by an exact determinant; a zero determinant would
    contradict the triangular factorization and raises TheoremViolation.
    """
    if n <= 2 * k:
        raise ValueError(f"minor requires n > 2k (n={n}, k={k})")
    table = table or character_table(n)
    strict = fat_list(n, k)[:-1]  # drop (n-k, 1^k) itself
    idx = [table.index[p] for p in strict]
    minor = [[table.rows[i][j] for j in idx] for i in idx]
    if det_bareiss(minor) == 0:
        raise TheoremViolation(
            f"character-table minor over partitions > (n-{k},1^{k}) is singular at n={n}",
            {"n": n, "k": k, "minor": minor})
    return minor


def minor_breve(n: int, k: int, choices, table: CharacterTable | None = None) -> list[list[int]]:
    """Minor with row phi_i and column mu_i, where each mu_i is phi_i itself or
    its split; must coincide with the top-left minor regardless of choices."""
    if n <= 3 * k + 1:
        raise ValueError(f"split minor requires n > 3k+1 (n={n}, k={k})")
    table = table or character_table(n)
    strict = fat_list(n, k)[:-1]
    choices = list(choices)
    if len(choices) != len(strict):
        raise ValueError(f"need one keep/split choice per partition > (n-k,1^k); "
                         f"expected {len(strict)}, got {len(choices)}")
    cols = []
    for phi, choice in zip(strict, choices):
        if choice == "keep":
            cols.append(phi)
        elif choice == "split":
            cols.append(split_partition(phi, k))
        else:
            raise ValueError(f"choice must be 'keep' or 'split', got {choice!r}")
    minor = [[table.value(phi, mu) for mu in cols] for phi in strict]
    reference = minor_tilde(n, k, table)
    if minor != reference:
        raise TheoremViolation(
            "split-column minor differs from the top-left minor",
            {"n": n, "k": k, "choices": choices, "minor": minor, "reference": reference})
    return minor


def branching_multiplicity(alpha: Partition, lam: Partition) -> int:
    """Number of ways to shrink lam to alpha by removing one corner at a time."""
    if sum(lam) == sum(alpha):
        return 1 if lam == alpha else 0

    def corners(p):
        for i in range(len(p)):
            if i == len(p) - 1 or p[i] > p[i + 1]:
                smaller = p[:i] + (p[i] - 1,) + p[i + 1:]
                yield tuple(x for x in smaller if x)

    total = 0
    for smaller in corners(lam):
        if sum(smaller) >= sum(alpha):
            total += branching_multiplicity(alpha, smaller) if smaller else 0
    return total
