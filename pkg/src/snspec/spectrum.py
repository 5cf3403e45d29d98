"""Conjugacy classes of the symmetric group and spectra of class-generated Cayley graphs.

Every eigenvalue of a Cayley graph generated by a union of conjugacy classes
is indexed by a partition and equals |X| * chi(X) / dim, an exact rational.
No eigenvector is ever computed; moment identities against explicit adjacency
matrices stand in for eigenvector checks at tiny n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd

from . import perms
from .characters import CharacterTable, character_table
from .partitions import Partition, check_partition, classify, cycle_type_sign, enumerate_partitions


@dataclass(frozen=True)
class ConjClass:
    cycle_type: Partition
    size: int
    parity: str  # 'even' or 'odd'
    fixed_points: int


def class_size(cycle_type: Partition) -> int:
    ct = check_partition(cycle_type)
    n = sum(ct)
    centralizer = 1
    for length in set(ct):
        mult = ct.count(length)
        centralizer *= length ** mult * factorial(mult)
    return factorial(n) // centralizer


def class_info(cycle_type: Partition) -> ConjClass:
    ct = check_partition(cycle_type)
    return ConjClass(
        cycle_type=ct,
        size=class_size(ct),
        parity="even" if cycle_type_sign(ct) == 1 else "odd",
        fixed_points=ct.count(1),
    )


def in_fpf(cycle_type: Partition, k: int) -> bool:
    """True iff permutations of this cycle type have fewer than k fixed points."""
    return check_partition(cycle_type).count(1) < k


def fpf_classes(n: int, k: int) -> tuple[Partition, ...]:
    """Cycle types of all classes with fewer than k fixed points, in decreasing lex order."""
    return tuple(p for p in enumerate_partitions(n) if p.count(1) < k)


def cayley_eigenvalue(generating_type: Partition, rep: Partition,
                      table: CharacterTable | None = None) -> Fraction:
    """Eigenvalue of Cay(S_n, X) at the representation `rep`: |X| * chi(X) / dim."""
    generating_type = check_partition(generating_type)
    rep = check_partition(rep)
    if sum(generating_type) != sum(rep):
        raise ValueError("generator class and representation live in different groups")
    table = table or character_table(sum(rep))
    return Fraction(class_size(generating_type) * table.value(rep, generating_type),
                    table.dim(rep))


@dataclass(frozen=True)
class ClassSpectrum:
    generating_type: Partition
    eigenvalues: dict[Partition, Fraction]


def class_spectrum(generating_type: Partition,
                   table: CharacterTable | None = None) -> ClassSpectrum:
    generating_type = check_partition(generating_type)
    n = sum(generating_type)
    table = table or character_table(n)
    eigs = {rep: cayley_eigenvalue(generating_type, rep, table)
            for rep in enumerate_partitions(n)}
    return ClassSpectrum(generating_type, eigs)


def derangement_number(n: int) -> int:
    """Permutations of n symbols without fixed points, by inclusion-exclusion."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum((-1) ** i * (factorial(n) // factorial(i)) for i in range(n + 1))


@dataclass(frozen=True)
class GammaSpectrumReport:
    n: int
    k: int
    classes: tuple[Partition, ...]
    degree: int
    eigenvalues: dict[Partition, Fraction]
    classification: dict[Partition, str]


def fpf_spectrum(n: int, k: int, table: CharacterTable | None = None) -> GammaSpectrumReport:
    """Spectrum of the Cayley graph generated by all classes with < k fixed points."""
    if n < 2:
        raise ValueError("n must be >= 2")
    table = table or character_table(n)
    classes = fpf_classes(n, k)
    eigs: dict[Partition, Fraction] = {}
    for rep in enumerate_partitions(n):
        eigs[rep] = sum((cayley_eigenvalue(x, rep, table) for x in classes),
                        Fraction(0))
    labels = ({rep: classify(rep, k) for rep in eigs} if n >= 2 * k + 1
              else {rep: "" for rep in eigs})
    return GammaSpectrumReport(
        n=n, k=k, classes=classes,
        degree=sum(class_size(x) for x in classes),
        eigenvalues=eigs, classification=labels)


def gamma_k_second_eigenvalue_formula(n: int, k: int) -> Fraction:
    """Closed form for the eigenvalue of Gamma_k at (n-1,1):
    (1/(n-1)) * sum over i < k of binom(n,i) * d_{n-i} * (i-1)."""
    if n <= 2 * k:
        raise ValueError(f"requires n > 2k (n={n}, k={k})")
    total = sum(comb(n, i) * derangement_number(n - i) * (i - 1) for i in range(k))
    return Fraction(total, n - 1)


@dataclass(frozen=True)
class BoundCheck:
    lhs: int
    rhs: int
    holds: bool


def eigenvalue_magnitude_bound(generating_type: Partition, rep: Partition,
                               table: CharacterTable | None = None) -> BoundCheck:
    """Exact squared form of |lambda| <= sqrt(|G| |X|) / dim:
    checks lambda^2 * dim^2 <= n! * |X| in integers."""
    generating_type = check_partition(generating_type)
    rep = check_partition(rep)
    n = sum(rep)
    table = table or character_table(n)
    size = class_size(generating_type)
    chi = table.value(rep, generating_type)
    lhs = size * size * chi * chi
    rhs = factorial(n) * size
    return BoundCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs)


@lru_cache(maxsize=None)
def _cycle_type_by_rank(n: int) -> tuple[Partition, ...]:
    return tuple(perms.cycle_type(p) for p in perms.all_perms(n))


def class_adjacency_matrix(n: int, types: tuple[Partition, ...]) -> list[list[int]]:
    """Explicit 0/1 adjacency matrix of Cay(S_n, union of classes), rows in rank order."""
    if n > 5:
        raise ValueError("explicit adjacency matrices are capped at n <= 5")
    wanted = set(types)
    group = perms.all_perms(n)
    inv = [perms.inverse(p) for p in group]
    return [[1 if perms.cycle_type(perms.compose(p, inv_q)) in wanted else 0
             for inv_q in inv] for p in group]


def moment_check(terms, m: int, table: CharacterTable | None = None) -> bool:
    """Verify trace(A^m) = sum over reps of dim^2 * lambda^m for the weighted
    pseudo-adjacency matrix A = sum of coeff * A_class, built explicitly.

    `terms` is a sequence of (cycle_type, rational coefficient) pairs, or any
    object with a `.terms` attribute holding one; n <= 5 and m <= 4 (trace
    powers come from a single matrix square).
    """
    terms = getattr(terms, "terms", terms)
    terms = [(check_partition(t), Fraction(c)) for t, c in terms]
    if not terms:
        raise ValueError("need at least one class term")
    n = sum(terms[0][0])
    if n > 5:
        raise ValueError("moment_check is capped at n <= 5")
    if not 0 <= m <= 4:
        raise ValueError("moment order must be between 0 and 4")
    table = table or character_table(n)

    denom = 1
    for _, c in terms:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    scaled = {t: int(c * denom) for t, c in terms}

    group = perms.all_perms(n)
    inv = [perms.inverse(p) for p in group]
    size = len(group)
    a = [[scaled.get(perms.cycle_type(perms.compose(p, inv_q)), 0) for inv_q in inv]
         for p in group]

    if m == 0:
        trace = size
    elif m == 1:
        trace = sum(a[i][i] for i in range(size))
    elif m == 2:
        trace = sum(a[i][j] * a[j][i] for i in range(size) for j in range(size))
    else:
        a2 = [[sum(ar[t] * a[t][j] for t in range(size)) for j in range(size)]
              for ar in a]
        if m == 3:
            trace = sum(a2[i][j] * a[j][i] for i in range(size) for j in range(size))
        else:
            trace = sum(a2[i][j] * a2[j][i] for i in range(size) for j in range(size))

    spectral = Fraction(0)
    for rep in enumerate_partitions(n):
        lam = sum((Fraction(scaled[t]) * cayley_eigenvalue(t, rep, table) for t in scaled),
                  Fraction(0))
        spectral += table.dim(rep) ** 2 * lam ** m
    return Fraction(trace) == spectral
