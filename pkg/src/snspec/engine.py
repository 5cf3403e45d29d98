"""The weighted pseudo-adjacency construction and its certificates.

Builds exact rational combinations of class-generated Cayley graphs whose
spectrum hits 1 on the trivial representation, omega = -1/((n)_k - 1) on every
other fat representation, and (in the half-sum of the even and odd builds)
zero on every tall representation.  Every claimed equality is recomputed from
scratch; a failure raises TheoremViolation rather than being absorbed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .characters import CharacterTable, character_table
from .errors import TheoremViolation
from .linalg import gaussian_solve, solve_feasibility, verify_farkas
from .partitions import (
    Partition,
    check_partition,
    classify,
    cycle_type_sign,
    enumerate_partitions,
    fat_list,
    split_partition,
)
from .spectrum import class_size, fpf_classes, in_fpf

DEFAULT_MAX_N = 14


def _max_n() -> int:
    return int(os.environ.get("SNSPEC_MAX_N", DEFAULT_MAX_N))


def omega(n: int, k: int) -> Fraction:
    """Target ratio of least to largest eigenvalue: -(n-k)!/(n! - (n-k)!)."""
    if not n > k >= 1:
        raise ValueError(f"omega requires n > k >= 1 (n={n}, k={k})")
    return Fraction(-factorial(n - k), factorial(n) - factorial(n - k))


@dataclass(frozen=True)
class WeightedClassCombo:
    """A rational combination of conjugacy-class Cayley graphs, one term per class."""
    n: int
    k: int
    terms: tuple[tuple[Partition, Fraction], ...]

    def eigenvalue(self, rep: Partition, table: CharacterTable | None = None) -> Fraction:
        table = table or character_table(self.n)
        dim = table.dim(rep)
        return sum((coeff * class_size(t) * table.value(rep, t) / dim
                    for t, coeff in self.terms), Fraction(0))

    def full_spectrum(self, table: CharacterTable | None = None) -> dict[Partition, Fraction]:
        table = table or character_table(self.n)
        return {rep: self.eigenvalue(rep, table) for rep in enumerate_partitions(self.n)}


@dataclass(frozen=True)
class SpectrumVerdict:
    """Eigenvalues of a built combination plus flags recomputed from them."""
    n: int
    k: int
    variant: str
    omega: Fraction
    eigenvalues: dict[Partition, Fraction]
    flags: dict[str, bool]
    max_medium_abs: Fraction | None

    @classmethod
    def from_eigenvalues(cls, n, k, variant, eigs):
        w = omega(n, k)
        by_class: dict[str, list[Fraction]] = {}
        for rep, lam in eigs.items():
            by_class.setdefault(classify(rep, k), []).append(lam)
        fats = by_class.get("fat", [])
        talls = by_class.get("tall", [])
        sign_val = by_class["sign"][0]
        mediums = by_class.get("medium", [])
        max_medium = max((abs(x) for x in mediums), default=None)

        if variant == "even":
            tall_ok = all(x == w for x in talls) and sign_val == 1
        elif variant == "odd":
            tall_ok = all(x == -w for x in talls) and sign_val == -1
        else:
            tall_ok = all(x == 0 for x in talls) and sign_val == 0

        all_values = list(eigs.values())
        flags = {
            "trivial_is_one": by_class["trivial"][0] == 1,
            "fat_equal_omega": all(x == w for x in fats),
            "tall_per_variant": tall_ok,
            "medium_strictly_smaller": (max_medium is None or max_medium < abs(w)),
            "omega_is_min": min(all_values) == w,
            "omega_is_second_largest_abs":
                sorted((abs(x) for x in all_values), reverse=True)[1] == abs(w),
        }
        return cls(n, k, variant, w, dict(eigs), flags, max_medium)


def choose_generators(n: int, k: int, parity: str) -> tuple[Partition, ...]:
    """For each partition > (n-k, 1^k): the partition itself if its class has
    the requested parity, otherwise its split.  All results have < k fixed points."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    if n <= 3 * k + 1:
        raise ValueError(f"generator choice requires n > 3k+1 (n={n}, k={k})")
    want = 1 if parity == "even" else -1
    out = []
    for phi in fat_list(n, k)[:-1]:
        mu = phi if cycle_type_sign(phi) == want else split_partition(phi, k)
        if not in_fpf(mu, k):
            raise AssertionError(f"generator {mu} has >= {k} fixed points")
        out.append(mu)
    return tuple(out)


def solve_coefficients(n: int, k: int, generators, table: CharacterTable | None = None):
    """Solve for the weights d_j putting eigenvalue 1 on (n) and omega on each
    fat partition above (n-k, 1^k); then confirm that the remaining fat
    eigenvalue, at (n-k, 1^k) itself, comes out omega without being solved for."""
    table = table or character_table(n)
    generators = [check_partition(g) for g in generators]
    fats = fat_list(n, k)
    strict = fats[:-1]
    if len(generators) != len(strict):
        raise ValueError(f"expected {len(strict)} generators, got {len(generators)}")
    w = omega(n, k)
    sizes = [class_size(g) for g in generators]
    matrix = [[Fraction(sizes[j] * table.value(phi, generators[j]), table.dim(phi))
               for j in range(len(generators))] for phi in strict]
    rhs = [Fraction(1)] + [w] * (len(strict) - 1)
    try:
        d = gaussian_solve(matrix, rhs)
    except ValueError:
        raise TheoremViolation(
            f"eigenvalue design system is singular at n={n}, k={k}",
            {"generators": generators}) from None

    hook = fats[-1]  # (n-k, 1^k): not part of the system, must come out omega
    lam = sum((d[j] * Fraction(sizes[j] * table.value(hook, generators[j]), table.dim(hook))
               for j in range(len(generators))), Fraction(0))
    if lam != w:
        raise TheoremViolation(
            f"unsolved eigenvalue at {hook} is {lam}, expected omega={w}",
            {"n": n, "k": k, "generators": generators, "coefficients": d})
    return d


def build_y(n: int, k: int, variant: str = "combined",
            table: CharacterTable | None = None):
    """Construct the weighted combination for the requested variant and verify
    its full spectrum.  Returns (combo, verdict)."""
    if variant not in ("even", "odd", "combined"):
        raise ValueError("variant must be even, odd or combined")
    if n > _max_n():
        raise ValueError(f"n={n} exceeds the configured cap {_max_n()} "
                         f"(override with SNSPEC_MAX_N)")
    if n <= 3 * k + 1:
        raise ValueError(f"construction requires n > 3k+1 (n={n}, k={k})")
    table = table or character_table(n)

    def one_parity(parity):
        gens = choose_generators(n, k, parity)
        d = solve_coefficients(n, k, gens, table)
        return list(zip(gens, d))

    if variant == "combined":
        terms = [(g, c / 2) for g, c in one_parity("even")]
        terms += [(g, c / 2) for g, c in one_parity("odd")]
    else:
        terms = one_parity(variant)

    combo = WeightedClassCombo(n, k, tuple(terms))
    verdict = SpectrumVerdict.from_eigenvalues(n, k, variant, combo.full_spectrum(table))
    equalities = ("trivial_is_one", "fat_equal_omega", "tall_per_variant")
    failed = [name for name in equalities if not verdict.flags[name]]
    if failed:
        raise TheoremViolation(
            f"designed spectrum failed {failed} at n={n}, k={k}, variant={variant}",
            {"verdict": verdict})
    return combo, verdict


def hoffman_ratio(lambda1: Fraction, lambda_min: Fraction) -> Fraction:
    """Upper bound on the measure of an independent set: -min/(max - min)."""
    lambda1, lambda_min = Fraction(lambda1), Fraction(lambda_min)
    if not lambda_min < 0 < lambda1:
        raise ValueError("need lambda_min < 0 < lambda1")
    return -lambda_min / (lambda1 - lambda_min)


def cross_ratio(lambda1: Fraction, lambda2_abs: Fraction) -> Fraction:
    """Upper bound on sqrt(|I||J|)/|V| for cross-independent pairs."""
    lambda1, lambda2_abs = Fraction(lambda1), Fraction(lambda2_abs)
    if lambda2_abs < 0 or lambda1 <= 0:
        raise ValueError("need lambda2_abs >= 0 and lambda1 > 0")
    return lambda2_abs / (lambda1 + lambda2_abs)


@dataclass
class ProbeResult:
    """Outcome of the eigenvalue-design feasibility probe.

    Constraints, over one real coefficient per class with < k fixed points:
    eigenvalue 1 at (n), omega at every other fat partition (equalities), and
    |eigenvalue| <= |omega| everywhere else, so that omega is both the
    minimum eigenvalue and the second-largest in absolute value; that is what
    the weighted-bound method needs, for the equality characterization and
    the cross-intersecting bound alike.  Infeasibility comes with exact
    multipliers; each non-fat partition contributes a lower-bound and an
    upper-bound row, in that order.
    """
    n: int
    k: int
    feasible: bool
    classes: tuple[Partition, ...]
    eq_reps: tuple[Partition, ...]
    ge_reps: tuple[tuple[Partition, str], ...]
    witness: dict[Partition, Fraction] | None = None
    certificate: list[tuple[Partition, str, Fraction]] | None = None


def _probe_system(n, k, table):
    classes = fpf_classes(n, k)
    sizes = [class_size(x) for x in classes]
    w = omega(n, k)
    fats = set(fat_list(n, k))
    eq_reps, ge_reps, eq_rows, eq_rhs, ge_rows, ge_rhs = [], [], [], [], [], []
    for rep in enumerate_partitions(n):
        dim = table.dim(rep)
        row = [Fraction(sizes[j] * table.value(rep, classes[j]), dim)
               for j in range(len(classes))]
        if rep in fats:
            eq_reps.append(rep)
            eq_rows.append(row)
            eq_rhs.append(Fraction(1) if rep == (n,) else w)
        else:
            ge_reps.append((rep, ">=omega"))
            ge_rows.append(row)
            ge_rhs.append(w)
            ge_reps.append((rep, "<=|omega|"))
            ge_rows.append([-a for a in row])
            ge_rhs.append(w)
    return classes, tuple(eq_reps), tuple(ge_reps), eq_rows, eq_rhs, ge_rows, ge_rhs


def feasibility_probe(n: int, k: int, table: CharacterTable | None = None) -> ProbeResult:
    """Decide exactly whether any real combination of all < k-fixed-point
    classes has eigenvalue 1 at the trivial representation, omega on every
    other fat partition, and absolute value at most |omega| elsewhere."""
    if n <= 2 * k:
        raise ValueError(f"probe requires n > 2k (n={n}, k={k})")
    table = table or character_table(n)
    classes, eq_reps, ge_reps, eq_rows, eq_rhs, ge_rows, ge_rhs = _probe_system(n, k, table)
    result = solve_feasibility(len(classes), eq_rows, eq_rhs, ge_rows, ge_rhs)
    if result.feasible:
        witness = dict(zip(classes, result.x))
        return ProbeResult(n, k, True, classes, eq_reps, ge_reps, witness=witness)
    rows = [(rep, "=") for rep in eq_reps] + list(ge_reps)
    if not verify_farkas(result.farkas, len(classes), eq_rows, eq_rhs, ge_rows, ge_rhs):
        raise AssertionError("simplex returned an invalid infeasibility certificate")
    certificate = [(rep, kind, mult) for (rep, kind), mult in zip(rows, result.farkas)]
    return ProbeResult(n, k, False, classes, eq_reps, ge_reps, certificate=certificate)


def verify_probe_result(result: ProbeResult, table: CharacterTable | None = None) -> bool:
    """Re-derive the probe system and check the witness or certificate exactly."""
    table = table or character_table(result.n)
    classes, eq_reps, ge_reps, eq_rows, eq_rhs, ge_rows, ge_rhs = _probe_system(
        result.n, result.k, table)
    if result.feasible:
        x = [result.witness[c] for c in classes]
        for row, b in zip(eq_rows, eq_rhs):
            if sum(a * v for a, v in zip(row, x)) != b:
                return False
        for row, b in zip(ge_rows, ge_rhs):
            if sum(a * v for a, v in zip(row, x)) < b:
                return False
        return True
    farkas = [mult for _, _, mult in result.certificate]
    return verify_farkas(farkas, len(classes), eq_rows, eq_rhs, ge_rows, ge_rhs)
