"""Ground-truth extremal computations at tiny n.

Exhaustive searches over the Cayley graph of the agreement relation, coset
partition certificates from cyclic and affine subgroups, and generation of
the conjectured near-extremal families.  Families are always reported as
sorted Lehmer ranks so output is basis-free and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

import numpy as np

from . import perms
from .engine import hoffman_ratio
from .group_algebra import CosetLabel, coset_indicator
from .spectrum import fpf_spectrum


def k_intersects(sigma: perms.Perm, tau: perms.Perm, k: int) -> bool:
    """True iff the permutations agree on at least k points."""
    if len(sigma) != len(tau):
        raise ValueError("permutations of different sizes")
    return perms.agreements(sigma, tau) >= k


def gamma_adjacency_masks(n: int, k: int) -> list[int]:
    """Bitmask adjacency of the graph joining permutations agreeing on < k points."""
    group = perms.all_perms(n)
    masks = [0] * len(group)
    for i, p in enumerate(group):
        for j in range(i + 1, len(group)):
            if perms.agreements(p, group[j]) < k:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


@dataclass(frozen=True)
class FamilyReport:
    n: int
    k: int
    max_size: int
    families: tuple[tuple[int, ...], ...]  # sorted Lehmer ranks
    all_are_cosets: bool
    symmetry_reduced: bool = False


def _coset_rank_sets(n: int, k: int) -> set[frozenset[int]]:
    out = set()
    for src in permutations(range(n), k):
        for tgt in permutations(range(n), k):
            out.add(coset_indicator(CosetLabel(src, tgt), n).support())
    return out


def _cyclic_clique_cells(n: int) -> list[list[int]]:
    """Left cosets of the cyclic group generated by the full cycle, as rank lists."""
    cycle = tuple(list(range(1, n)) + [0])
    subgroup = []
    g = perms.identity(n)
    for _ in range(n):
        subgroup.append(g)
        g = perms.compose(g, cycle)
    return _left_coset_cells(n, subgroup)


def _enumerate_one_per_clique(cells, masks, total) -> list[tuple[int, ...]]:
    """All independent sets picking exactly one vertex from every cell."""
    full = (1 << total) - 1
    out = []
    chosen: list[int] = []

    def walk(level, allowed):
        if level == len(cells):
            out.append(tuple(sorted(chosen)))
            return
        for v in cells[level]:
            if allowed >> v & 1:
                nxt = allowed & ~masks[v] & ~(1 << v)
                if all(any(nxt >> u & 1 for u in cell) for cell in cells[level + 1:]):
                    chosen.append(v)
                    walk(level + 1, nxt)
                    chosen.pop()

    walk(0, full)
    return out


def _max_independent_sets(masks, total) -> tuple[int, list[tuple[int, ...]]]:
    """Exact maximum independent set size and all maximum sets, by branch and bound."""
    best_size = 0

    def search_max(candidates, size):
        nonlocal best_size
        if size + bin(candidates).count("1") <= best_size:
            return
        if candidates == 0:
            best_size = max(best_size, size)
            return
        v = (candidates & -candidates).bit_length() - 1
        search_max(candidates & ~masks[v] & ~(1 << v), size + 1)
        search_max(candidates & ~(1 << v), size)

    full = (1 << total) - 1
    search_max(full, 0)

    sets: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def collect(candidates, size):
        if size + bin(candidates).count("1") < best_size:
            return
        if size == best_size:
            sets.append(tuple(sorted(chosen)))
            return
        if candidates == 0:
            return
        v = (candidates & -candidates).bit_length() - 1
        chosen.append(v)
        collect(candidates & ~masks[v] & ~(1 << v), size + 1)
        chosen.pop()
        collect(candidates & ~(1 << v), size)

    collect(full, 0)
    return best_size, sets


def _symmetry_reduce(families, n):
    """One representative per orbit under two-sided translation."""
    group = perms.all_perms(n)
    ranks = perms.rank_table(n)
    reps = {}
    for fam in families:
        members = [group[r] for r in fam]
        best = None
        for sigma0 in members:
            inv0 = perms.inverse(sigma0)
            for g in group:
                right = perms.compose(inv0, perms.inverse(g))
                image = tuple(sorted(ranks[perms.compose(perms.compose(g, s), right)]
                                     for s in members))
                if best is None or image < best:
                    best = image
        reps.setdefault(best, fam)
    return tuple(sorted(reps.values()))


def max_k_intersecting(n: int, k: int, all_extremal: bool = True,
                       symmetry_reduce: bool = False) -> FamilyReport:
    """Exact maximum k-intersecting families, by exhaustive search.

    n <= 5 for the generic branch and bound; (6, 1) additionally allowed via
    the clique cover coming from the cyclic-subgroup partition.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n (n={n}, k={k})")
    if n > 6 or (n == 6 and k != 1):
        raise ValueError("exhaustive search capped at n <= 5 (and (6,1))")
    total = factorial(n)
    masks = gamma_adjacency_masks(n, k)
    if k == 1:
        # The cyclic-coset cells are cliques, so any 1-intersecting family has
        # at most one member per cell; the pointwise stabilizer achieves that.
        cells = _cyclic_clique_cells(n)
        families = _enumerate_one_per_clique(cells, masks, total)
        max_size = factorial(n - 1)
        if any(len(f) != max_size for f in families):
            raise AssertionError("clique-cover enumeration produced a wrong-size family")
    else:
        max_size, families = _max_independent_sets(masks, total)
    families = tuple(sorted(families))
    group = perms.all_perms(n)
    for fam in families:
        members = [group[r] for r in fam]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if perms.agreements(members[i], members[j]) < k:
                    raise AssertionError("search produced a non-intersecting family")
    cosets = _coset_rank_sets(n, k)
    all_cosets = all(frozenset(f) in cosets for f in families)
    if symmetry_reduce:
        families = _symmetry_reduce(families, n)
    if not all_extremal:
        families = families[:1]
    return FamilyReport(n, k, max_size, families, all_cosets, symmetry_reduce)


@dataclass(frozen=True)
class CrossCheck:
    n: int
    k: int
    cross_intersecting: bool
    witness: tuple[int, int] | None  # ranks of a violating pair, if any
    product: int
    bound: int
    within_bound: bool


def cross_product_check(n: int, k: int, fam_i, fam_j) -> CrossCheck:
    """Verify the cross-intersecting property and compare |I||J| to ((n-k)!)^2."""
    if n > 5:
        raise ValueError("cross checks capped at n <= 5")
    group = perms.all_perms(n)
    witness = None
    for r in fam_i:
        for s in fam_j:
            if perms.agreements(group[r], group[s]) < k:
                witness = (r, s)
                break
        if witness:
            break
    product = len(fam_i) * len(fam_j)
    bound = factorial(n - k) ** 2
    return CrossCheck(n, k, witness is None, witness, product, bound,
                      product <= bound)


# ---------------------------------------------------------------------------
# sharply transitive certificates

def _prime_power(q: int):
    for p in (2, 3, 5, 7):
        if q % p == 0:
            m = 0
            x = q
            while x % p == 0:
                x //= p
                m += 1
            return (p, m) if x == 1 else None
    return None


_IRREDUCIBLE = {  # modulus coefficients, constant term first, for q = p^m with m > 1
    4: (1, 1, 1),        # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),     # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),        # x^2 + 1 over GF(3)
}


def _field_tables(q: int):
    """Addition and multiplication tables for the field with q elements.

    Elements are encoded as integers: digit i in base p is the coefficient of
    x^i.  Returns (add, mul) as q x q integer tables.
    """
    info = _prime_power(q)
    if info is None:
        raise ValueError(f"{q} is not a prime power (p <= 7 supported)")
    p, m = info
    if m == 1:
        add = [[(a + b) % p for b in range(p)] for a in range(p)]
        mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        return add, mul
    if q not in _IRREDUCIBLE:
        raise ValueError(f"no modulus recorded for GF({q})")
    modulus = _IRREDUCIBLE[q]

    def digits(e):
        return [(e // p ** i) % p for i in range(m)]

    def encode(coeffs):
        return sum(c * p ** i for i, c in enumerate(coeffs))

    def poly_mul(a, b):
        da, db = digits(a), digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * m - 2, m - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for i in range(m):
                    prod[top - m + i] = (prod[top - m + i] - c * modulus[i]) % p
        return encode(prod[:m])

    add = [[encode([(x + y) % p for x, y in zip(digits(a), digits(b))])
            for b in range(q)] for a in range(q)]
    mul = [[poly_mul(a, b) for b in range(q)] for a in range(q)]
    return add, mul


def affine_group(q: int) -> list[perms.Perm]:
    """All maps x -> a*x + b over the field of order q, as permutations of 0..q-1."""
    add, mul = _field_tables(q)
    out = []
    for a in range(1, q):
        for b in range(q):
            out.append(tuple(add[mul[a][x]][b] for x in range(q)))
    return out


@dataclass(frozen=True)
class TransitiveCertificate:
    mode: str
    n: int
    agreement_bound: int  # pairwise agreements within each cell are <= this
    cells: tuple[tuple[int, ...], ...]
    max_internal_agreement: int
    verified: bool


def _left_coset_cells(n: int, subgroup: list[perms.Perm]) -> list[list[int]]:
    """Left cosets as rank lists; verifies they tile the group, which fails
    if the claimed subgroup is not closed under composition."""
    ranks = perms.rank_table(n)
    seen = [False] * factorial(n)
    cells = []
    for r, p in enumerate(perms.all_perms(n)):
        if seen[r]:
            continue
        cell = sorted(ranks[perms.compose(p, h)] for h in subgroup)
        if len(set(cell)) != len(subgroup) or any(seen[x] for x in cell):
            raise AssertionError("left translates overlap; not a subgroup")
        for x in cell:
            seen[x] = True
        cells.append(cell)
    return cells


def _max_pairwise_agreement(cells, n) -> int:
    group = perms.all_perms(n)
    worst = 0
    for cell in cells:
        block = np.array([group[r] for r in cell], dtype=np.int8)
        agree = (block[:, None, :] == block[None, :, :]).sum(axis=2)
        np.fill_diagonal(agree, 0)
        worst = max(worst, int(agree.max()))
    return worst


def sharply_transitive_certificate(mode: str, n: int | None = None,
                                   q: int | None = None) -> TransitiveCertificate:
    """Partition the group into cells within which pairwise agreement is small.

    cyclic: left cosets of the cyclic group generated by the full cycle;
    pairwise agreement 0, so any 1-intersecting family meets each cell at
    most once.  affine (q a prime power): left cosets of the affine group;
    pairwise agreement <= 1, the same for 2-intersecting families.
    """
    if mode == "cyclic":
        if n is None or n < 2:
            raise ValueError("cyclic mode needs n >= 2")
        cells = _cyclic_clique_cells(n)
        bound = 0
        size = n
    elif mode == "affine":
        if q is None:
            raise ValueError("affine mode needs q")
        if q > 9:
            raise ValueError("affine mode capped at q <= 9")
        if _prime_power(q) is None:
            raise ValueError(f"{q} is not a prime power")
        n = q
        cells = _left_coset_cells(q, affine_group(q))
        bound = 1
        size = q * (q - 1)
    else:
        raise ValueError("mode must be 'cyclic' or 'affine'")
    if any(len(c) != size for c in cells):
        raise AssertionError("coset cells have the wrong size")
    worst = _max_pairwise_agreement(cells, n)
    return TransitiveCertificate(mode, n, bound, tuple(tuple(c) for c in cells),
                                 worst, worst <= bound)


# ---------------------------------------------------------------------------
# conjectured families and the full pipeline

def conjecture_family(n: int, k: int, i: int) -> tuple[tuple[int, ...], int]:
    """The family of permutations with at least k+i fixed points among the
    first k+2i, as sorted ranks, together with its size."""
    if not 0 <= 2 * i <= n - k:
        raise ValueError(f"need 0 <= i <= (n-k)/2 (n={n}, k={k}, i={i})")
    window = k + 2 * i
    need = k + i
    ranks = [r for r, p in enumerate(perms.all_perms(n))
             if sum(1 for x in range(window) if p[x] == x) >= need]
    return tuple(ranks), len(ranks)


def conjecture_family_size_formula(n: int, k: int) -> int:
    """Closed-form size of the i = 1 family: (k+2)(n-k-1)! - (k+1)(n-k-2)!."""
    return (k + 2) * factorial(n - k - 1) - (k + 1) * factorial(n - k - 2)


@dataclass(frozen=True)
class PipelineVerdict:
    n: int
    k: int
    max_size: int
    expected_size: int
    families_checked: int
    all_pass: bool
    failures: tuple[dict, ...]


def verify_upper_bound_pipeline(n: int, k: int) -> PipelineVerdict:
    """For every maximum family: size is (n-k)!, its indicator lies in V_k,
    and Boolean peeling recovers exactly one k-coset."""
    from .birkhoff import boolean_peel
    from .group_algebra import GroupFunction, is_in_vk

    report = max_k_intersecting(n, k)
    expected = factorial(n - k)
    failures = []
    for fam in report.families:
        f = GroupFunction.from_support(n, fam)
        entry = {"family": fam}
        if len(fam) != expected:
            entry["size"] = len(fam)
            failures.append(entry)
            continue
        if not is_in_vk(f, k):
            entry["in_vk"] = False
            failures.append(entry)
            continue
        labels = boolean_peel(f, k)
        if len(labels) != 1:
            entry["peeled"] = len(labels)
            failures.append(entry)
    return PipelineVerdict(n, k, report.max_size, expected,
                           len(report.families), not failures, tuple(failures))


def spectral_upper_bound(n: int, k: int) -> int:
    """Admissible cutoff from the spectrum of the agreement graph itself."""
    report = fpf_spectrum(n, k)
    lam1 = Fraction(report.degree)
    lam_min = min(report.eigenvalues.values())
    ratio = hoffman_ratio(lam1, lam_min)
    bound = ratio * factorial(n)
    return bound.numerator // bound.denominator
