"""Exact functions on the symmetric group at desk scale (n <= 7).

A group function is a dense vector of exact rationals indexed by Lehmer rank.
Isotypic projections are realized through convolution with irreducible
characters, so no matrix representation is ever constructed; the projection
identities (summing to the identity, idempotence) pin correctness down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import perms
from .characters import CharacterTable, character_table
from .errors import TheoremViolation
from .linalg import rational_rank
from .partitions import Partition, dim_irrep, enumerate_partitions

CONVOLUTION_MAX_N = 7
RANK_MAX_N = 6


class GroupFunction:
    """Dense exact-rational vector over all n! permutations, in Lehmer-rank order."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        values = list(values)
        if len(values) != factorial(n):
            raise ValueError(f"expected {factorial(n)} values for n={n}, got {len(values)}")
        self.n = n
        self.values = values

    def __eq__(self, other):
        return (isinstance(other, GroupFunction)
                and self.n == other.n
                and all(a == b for a, b in zip(self.values, other.values)))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("size mismatch")
        return GroupFunction(self.n, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        if self.n != other.n:
            raise ValueError("size mismatch")
        return GroupFunction(self.n, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c):
        return GroupFunction(self.n, [c * v for v in self.values])

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values) if v != 0)

    def to_json(self) -> dict:
        return {"n": self.n,
                "values": [format_rational(Fraction(v)) for v in self.values]}

    @classmethod
    def from_json(cls, data) -> "GroupFunction":
        return cls(int(data["n"]), [parse_rational(v) for v in data["values"]])

    @classmethod
    def zero(cls, n: int) -> "GroupFunction":
        return cls(n, [0] * factorial(n))

    @classmethod
    def constant(cls, n: int, value=1) -> "GroupFunction":
        return cls(n, [value] * factorial(n))

    @classmethod
    def from_support(cls, n: int, ranks) -> "GroupFunction":
        values = [0] * factorial(n)
        for r in ranks:
            values[r] = 1
        return cls(n, values)


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    return Fraction(str(text))


def inner(f: GroupFunction, g: GroupFunction) -> Fraction:
    """Inner product under the uniform measure: (1/n!) * sum f*g."""
    if f.n != g.n:
        raise ValueError("size mismatch")
    return Fraction(sum(a * b for a, b in zip(f.values, g.values)), factorial(f.n))


@dataclass(frozen=True)
class CosetLabel:
    """Pointwise constraints sigma(sources[t]) = targets[t]; points are 0-based."""
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.sources) != len(self.targets):
            raise ValueError("sources and targets must have the same length")
        if len(set(self.sources)) != len(self.sources) or len(set(self.targets)) != len(self.targets):
            raise ValueError("coset label entries must be distinct")


def coset_indicator(label: CosetLabel, n: int) -> GroupFunction:
    """0/1 indicator of {sigma : sigma(sources) = targets}; has (n-k)! ones."""
    k = len(label.sources)
    if k > n - 1:
        raise ValueError(f"coset label length {k} too large for n={n}")
    if any(not 0 <= x < n for x in label.sources + label.targets):
        raise ValueError("coset label entries out of range")
    constraints = list(zip(label.sources, label.targets))
    values = [1 if all(p[i] == j for i, j in constraints) else 0
              for p in perms.all_perms(n)]
    return GroupFunction(n, values)


@lru_cache(maxsize=None)
def _mul_rank_table(n: int) -> list[list[int]]:
    """table[a][b] = rank of (perm a) composed with (perm b); only for n <= 6."""
    group = perms.all_perms(n)
    ranks = perms.rank_table(n)
    return [[ranks[perms.compose(p, q)] for q in group] for p in group]


def _product_rank(n, ranks, p, q):
    if n <= 6:
        return _mul_rank_table(n)[ranks[p]][ranks[q]]
    return perms.lehmer_rank(perms.compose(p, q))


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f*g)(t) = (1/n!) sum over s of f(t s^-1) g(s)."""
    if f.n != g.n:
        raise ValueError("size mismatch")
    n = f.n
    if n > CONVOLUTION_MAX_N:
        raise ValueError(f"convolution capped at n <= {CONVOLUTION_MAX_N}")
    group = perms.all_perms(n)
    ranks = perms.rank_table(n)
    out = [Fraction(0)] * factorial(n)
    order = factorial(n)
    for u_rank, fu in enumerate(f.values):
        if fu == 0:
            continue
        u = group[u_rank]
        for s_rank, gs in enumerate(g.values):
            if gs == 0:
                continue
            out[_product_rank(n, ranks, u, group[s_rank])] += fu * gs
    return GroupFunction(n, [v / order for v in out])


def class_translates(f: GroupFunction) -> dict[Partition, list]:
    """For each conjugacy class X, the vector t -> sum over u in X of f(u^-1 t).

    One pass of |G|^2 products shared by all isotypic projections of f.
    """
    n = f.n
    group = perms.all_perms(n)
    buckets: dict[Partition, list] = {ct: [0] * len(group) for ct in enumerate_partitions(n)}
    use_table = n <= 6
    table = _mul_rank_table(n) if use_table else None
    ranks = perms.rank_table(n)
    for u in group:
        ct = perms.cycle_type(u)
        target = buckets[ct]
        inv_rank = ranks[perms.inverse(u)]
        if use_table:
            row = table[inv_rank]
            for t_rank in range(len(group)):
                target[t_rank] += f.values[row[t_rank]]
        else:
            inv_u = group[inv_rank]
            for t_rank, t in enumerate(group):
                target[t_rank] += f.values[perms.lehmer_rank(perms.compose(inv_u, t))]
    return buckets


def _project_from_translates(f, lam, table, translates):
    n = f.n
    dim = table.dim(lam)
    order = factorial(n)
    acc = [0] * order
    for ct, vec in translates.items():
        chi = table.value(lam, ct)
        if chi == 0:
            continue
        for i, v in enumerate(vec):
            if v:
                acc[i] += chi * v
    return GroupFunction(n, [Fraction(dim * a, order) for a in acc])


def isotypic_project(f: GroupFunction, lam: Partition,
                     table: CharacterTable | None = None) -> GroupFunction:
    """Component of f in the isotypic subspace of lam, via dim * (chi * f)."""
    if f.n > CONVOLUTION_MAX_N:
        raise ValueError(f"projections capped at n <= {CONVOLUTION_MAX_N}")
    table = table or character_table(f.n)
    return _project_from_translates(f, lam, table, class_translates(f))


def fourier_support(f: GroupFunction, table: CharacterTable | None = None) -> frozenset[Partition]:
    """Set of representations with a nonzero isotypic component."""
    if f.n > CONVOLUTION_MAX_N:
        raise ValueError(f"projections capped at n <= {CONVOLUTION_MAX_N}")
    table = table or character_table(f.n)
    translates = class_translates(f)
    out = set()
    for lam in enumerate_partitions(f.n):
        if not _project_from_translates(f, lam, table, translates).is_zero():
            out.add(lam)
    return frozenset(out)


def vk_support_set(n: int, k: int) -> frozenset[Partition]:
    """Partitions >= (n-k, 1^k) in lex order: exactly those with first part >= n-k."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1 (n={n}, k={k})")
    return frozenset(p for p in enumerate_partitions(n) if p[0] >= n - k)


def is_in_vk(f: GroupFunction, k: int, table: CharacterTable | None = None) -> bool:
    """True iff the Fourier transform of f is supported on partitions >= (n-k, 1^k)."""
    if f.n > CONVOLUTION_MAX_N:
        raise ValueError(f"projections capped at n <= {CONVOLUTION_MAX_N}")
    table = table or character_table(f.n)
    fats = vk_support_set(f.n, k)
    translates = class_translates(f)
    for lam in enumerate_partitions(f.n):
        if lam in fats:
            continue
        if not _project_from_translates(f, lam, table, translates).is_zero():
            return False
    return True


def double_translate(f: GroupFunction, left: perms.Perm, right: perms.Perm) -> GroupFunction:
    """g(sigma) = f(left . sigma . right); preserves membership in every V_k."""
    n = f.n
    group = perms.all_perms(n)
    ranks = perms.rank_table(n)
    values = [f.values[ranks[perms.compose(perms.compose(left, s), right)]] for s in group]
    return GroupFunction(n, values)


def all_coset_labels(n: int, k: int):
    from itertools import permutations
    for src in permutations(range(n), k):
        for tgt in permutations(range(n), k):
            yield CosetLabel(src, tgt)


def coset_span_rank(n: int, k: int) -> int:
    """Exact rank over the rationals of all (n)_k^2 coset indicator vectors.

    Must equal the dimension sum over partitions >= (n-k, 1^k); any mismatch
    is a theorem violation.
    """
    if n > RANK_MAX_N:
        raise ValueError(f"rank computation capped at n <= {RANK_MAX_N}")
    rows = (coset_indicator(label, n).values for label in all_coset_labels(n, k))
    rank = rational_rank(rows)
    expected = sum(dim_irrep(p) ** 2 for p in vk_support_set(n, k))
    if rank != expected:
        raise TheoremViolation(
            f"span of {k}-cosets in S_{n} has rank {rank}, expected {expected}",
            {"n": n, "k": k, "rank": rank, "expected": expected})
    return rank
