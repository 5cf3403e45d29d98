from fractions import Fraction
from math import factorial

import pytest

from oracles import brute_class_size, brute_derangements
from snspec.characters import character_table
from snspec.partitions import cycle_type_sign, enumerate_partitions, transpose
from snspec.spectrum import (
    BoundCheck,
    cayley_eigenvalue,
    class_info,
    class_size,
    class_spectrum,
    derangement_number,
    eigenvalue_magnitude_bound,
    fpf_classes,
    fpf_spectrum,
    gamma_k_second_eigenvalue_formula,
    in_fpf,
    moment_check,
)


def test_class_info_examples():
    info = class_info((2, 1, 1))
    assert (info.size, info.parity, info.fixed_points) == (6, "odd", 2)
    assert class_info((5,)).size == factorial(4)
    assert class_info((3, 2)).size == 20


@pytest.mark.parametrize("n", range(1, 7))
def test_class_sizes_against_brute_force(n):
    for mu in enumerate_partitions(n):
        assert class_size(mu) == brute_class_size(n, mu)


@pytest.mark.parametrize("n", range(1, 13))
def test_class_sizes_partition_group(n):
    assert sum(class_size(mu) for mu in enumerate_partitions(n)) == factorial(n)


def test_in_fpf_examples():
    assert in_fpf((3, 2), 2)
    assert not in_fpf((3, 1, 1), 2)
    assert not in_fpf((4, 1), 1)


def test_cayley_eigenvalue_examples():
    assert cayley_eigenvalue((5,), (4, 1)) == -6
    assert cayley_eigenvalue((3, 2), (5,)) == 20
    assert cayley_eigenvalue((3, 2), (1, 1, 1, 1, 1)) == -20


def test_class_spectrum_invariants():
    for n in range(2, 9):
        for mu in enumerate_partitions(n):
            spec = class_spectrum(mu)
            assert spec.eigenvalues[(n,)] == class_size(mu)


@pytest.mark.parametrize("n", range(2, 11))
def test_transpose_sign_eigenvalues(n):
    table = character_table(n)
    for mu in enumerate_partitions(n):
        spec = class_spectrum(mu, table)
        s = cycle_type_sign(mu)
        for rho, lam in spec.eigenvalues.items():
            assert spec.eigenvalues[transpose(rho)] == s * lam


def test_derangement_numbers():
    assert derangement_number(0) == 1
    assert derangement_number(4) == 9 == brute_derangements(4)
    assert derangement_number(5) == 44 == brute_derangements(5)
    assert derangement_number(6) == 265


def test_fpf_spectrum_examples():
    r5 = fpf_spectrum(5, 1)
    assert r5.degree == 44
    assert r5.eigenvalues[(5,)] == 44
    assert r5.eigenvalues[(4, 1)] == -11
    assert r5.eigenvalues[(1, 1, 1, 1, 1)] == 4
    r4 = fpf_spectrum(4, 1)
    assert r4.eigenvalues[(4,)] == 9


@pytest.mark.parametrize("n", range(5, 11))
def test_derangement_graph_spectrum(n):
    report = fpf_spectrum(n, 1)
    d = derangement_number(n)
    assert report.eigenvalues[(n,)] == d
    assert report.eigenvalues[(n - 1, 1)] == Fraction(-d, n - 1)
    for rho, lam in report.eigenvalues.items():
        if rho not in ((n,), (n - 1, 1)):
            assert abs(lam) < Fraction(d, n - 1), rho


def test_second_eigenvalue_formula_examples():
    assert gamma_k_second_eigenvalue_formula(5, 1) == -11
    assert gamma_k_second_eigenvalue_formula(6, 2) == -53
    assert gamma_k_second_eigenvalue_formula(4, 1) == -3


@pytest.mark.parametrize("n,k", [(n, k) for k in (1, 2, 3) for n in range(2 * k + 1, 11)])
def test_formula_matches_class_sum(n, k):
    report = fpf_spectrum(n, k)
    assert report.eigenvalues[(n - 1, 1)] == gamma_k_second_eigenvalue_formula(n, k)


def test_magnitude_bound_examples():
    assert cayley_eigenvalue((5,), (3, 2)) == 0
    check = eigenvalue_magnitude_bound((5,), (3, 2))
    assert check.holds and check.lhs == 0
    check = eigenvalue_magnitude_bound((3, 2), (3, 1, 1))
    assert check.holds
    for n in range(2, 9):
        for mu in enumerate_partitions(n):
            assert eigenvalue_magnitude_bound(mu, (n,)).holds


@pytest.mark.parametrize("n", range(2, 10))
def test_magnitude_bound_everywhere(n):
    table = character_table(n)
    for mu in enumerate_partitions(n):
        for rho in enumerate_partitions(n):
            assert eigenvalue_magnitude_bound(mu, rho, table).holds


@pytest.mark.parametrize("n,k", [(n, k) for k in (1, 2) for n in range(max(2, 2 * k + 1), 13)])
def test_cycle_measure_bounds(n, k):
    # classes with a cycle of length n-t, t < n/2
    for mu in enumerate_partitions(n):
        t = n - mu[0]
        if 2 * t < n:
            size = class_size(mu)
            assert size * (n - t) * t ** t >= factorial(n)
            assert size <= 2 * factorial(n - 1)


@pytest.mark.parametrize("n", range(2, 11))
def test_identity_free_trace_is_zero(n):
    table = character_table(n)
    for k in (1, 2):
        if n <= 2 * k:
            continue
        report = fpf_spectrum(n, k, table)
        total = sum(table.dim(rho) ** 2 * lam for rho, lam in report.eigenvalues.items())
        assert total == 0


def test_moment_checks_gamma1_s4():
    terms = [(mu, Fraction(1)) for mu in fpf_classes(4, 1)]
    for m in range(5):
        assert moment_check(terms, m)


def test_moment_checks_weighted_s4():
    terms = [((4,), Fraction(1, 3)), ((2, 2), Fraction(-1, 5)), ((3, 1), Fraction(2, 7))]
    for m in range(5):
        assert moment_check(terms, m)


def test_moment_checks_gamma1_s5():
    terms = [(mu, Fraction(1)) for mu in fpf_classes(5, 1)]
    assert moment_check(terms, 2)
    assert moment_check(terms, 3)


def test_moment_checks_built_combination():
    from snspec.engine import build_y
    combo, _ = build_y(5, 1, "combined")
    for m in range(5):
        assert moment_check(combo, m)
