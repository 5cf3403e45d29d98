import random
from fractions import Fraction
from math import factorial

import pytest

from snspec import perms
from snspec.characters import character_table
from snspec.group_algebra import (
    CosetLabel,
    GroupFunction,
    all_coset_labels,
    convolve,
    coset_indicator,
    coset_span_rank,
    double_translate,
    fourier_support,
    inner,
    is_in_vk,
    isotypic_project,
)
from snspec.partitions import dim_irrep, enumerate_partitions, fat_list
from snspec.spectrum import class_adjacency_matrix, fpf_classes


def random_function(n, seed, lo=-4, hi=4):
    rng = random.Random(seed)
    return GroupFunction(n, [Fraction(rng.randint(lo, hi)) for _ in range(factorial(n))])


def test_coset_indicator_sizes():
    assert sum(coset_indicator(CosetLabel((0,), (0,)), 4).values) == 6
    assert sum(coset_indicator(CosetLabel((0, 1), (0, 1)), 4).values) == 2
    a = coset_indicator(CosetLabel((0, 1), (0, 1)), 4)
    b = coset_indicator(CosetLabel((0, 1), (1, 0)), 4)
    assert sum((a + b).values) == 4 and not (a.support() & b.support())


def test_coset_label_validation():
    with pytest.raises(ValueError):
        CosetLabel((0, 0), (1, 2))
    with pytest.raises(ValueError):
        CosetLabel((0,), (1, 2))


def test_convolve_delta():
    g = random_function(4, seed=1)
    delta = GroupFunction.from_support(4, [0])
    conv = convolve(delta, g)
    assert conv.values == [Fraction(v, 24) for v in g.values]


def test_convolve_indicator_with_constant():
    x = GroupFunction(5, [1 if perms.cycle_type(p) == (3, 2) else 0
                         for p in perms.all_perms(5)])
    ones = GroupFunction.constant(5)
    conv = convolve(x, ones)
    assert all(v == Fraction(20, 120) for v in conv.values)


def test_adjacency_acts_by_convolution():
    # A f = n! (1_X * f) for the class-generated graph
    n = 4
    types = fpf_classes(n, 1)
    matrix = class_adjacency_matrix(n, types)
    f = random_function(n, seed=2)
    indicator = GroupFunction(n, [1 if perms.cycle_type(p) in set(types) else 0
                                  for p in perms.all_perms(n)])
    lhs = [sum(matrix[i][j] * f.values[j] for j in range(24)) for i in range(24)]
    rhs = convolve(indicator, f).scale(factorial(n))
    assert lhs == rhs.values


def test_convolution_associative():
    f, g, h = (random_function(4, seed=s) for s in (3, 4, 5))
    assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))


def test_projection_examples():
    t = character_table(4)
    const = GroupFunction.constant(4, Fraction(3))
    assert isotypic_project(const, (4,), t) == const
    assert isotypic_project(const, (3, 1), t).is_zero()
    sign = GroupFunction(4, [perms.sign(p) for p in perms.all_perms(4)])
    assert isotypic_project(sign, (1, 1, 1, 1), t) == sign


def test_projections_resolve_identity_and_idempotent():
    t = character_table(5)
    f = random_function(5, seed=6)
    projections = {lam: isotypic_project(f, lam, t) for lam in enumerate_partitions(5)}
    total = GroupFunction.zero(5)
    for p in projections.values():
        total = total + p
    assert total == f
    for lam, p in projections.items():
        assert isotypic_project(p, lam, t) == p


def test_projections_mutually_orthogonal():
    t = character_table(4)
    f = random_function(4, seed=7)
    g = random_function(4, seed=8)
    for lam in enumerate_partitions(4):
        pf = isotypic_project(f, lam, t)
        for mu in enumerate_partitions(4):
            if mu != lam:
                assert inner(pf, isotypic_project(g, mu, t)) == 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_parseval(n):
    t = character_table(n)
    f = random_function(n, seed=9)
    total = sum((inner(p, p) for p in
                 (isotypic_project(f, lam, t) for lam in enumerate_partitions(n))),
                Fraction(0))
    assert total == inner(f, f)


def test_fourier_support_examples():
    t = character_table(5)
    f = coset_indicator(CosetLabel((0,), (0,)), 5)
    assert fourier_support(f, t) == frozenset({(5,), (4, 1)})
    assert fourier_support(GroupFunction.constant(5), t) == frozenset({(5,)})
    delta = GroupFunction.from_support(5, [0])
    assert fourier_support(delta, t) == frozenset(enumerate_partitions(5))


def test_delta_projection_value_at_identity():
    t = character_table(5)
    delta = GroupFunction.from_support(5, [0])
    for lam in enumerate_partitions(5):
        p = isotypic_project(delta, lam, t)
        assert p.values[0] == Fraction(dim_irrep(lam) ** 2, factorial(5))


def test_is_in_vk_examples():
    t = character_table(5)
    f = coset_indicator(CosetLabel((2,), (4,)), 5)
    assert is_in_vk(f, 1, t)
    sign = GroupFunction(5, [perms.sign(p) for p in perms.all_perms(5)])
    assert not is_in_vk(sign, 1, t)
    assert not is_in_vk(sign, 3, t)
    # only V_{n-1} contains the sign function
    assert is_in_vk(sign, 4, t)
    g = coset_indicator(CosetLabel((0,), (0,)), 5) + coset_indicator(CosetLabel((1,), (2,)), 5)
    assert is_in_vk(g, 1, t)


def test_coset_indicators_in_v2():
    t = character_table(5)
    for label in list(all_coset_labels(5, 2))[:20]:
        f = coset_indicator(label, 5)
        support = fourier_support(f, t)
        assert support <= set(fat_list(5, 2))
        assert (3, 1, 1) in support


def test_coset_span_rank_values():
    assert coset_span_rank(4, 1) == 10
    assert coset_span_rank(5, 1) == 17
    assert coset_span_rank(5, 2) == 78


def test_double_translate_examples():
    f = random_function(4, seed=10)
    ident = perms.identity(4)
    assert double_translate(f, ident, ident) == f
    left = (1, 0, 2, 3)
    right = (0, 2, 1, 3)
    g = double_translate(coset_indicator(CosetLabel((0,), (0,)), 4), left, right)
    # a translate of a coset indicator is another coset indicator
    assert sorted(g.values) == sorted(coset_indicator(CosetLabel((0,), (0,)), 4).values)
    assert any(g == coset_indicator(label, 4) for label in all_coset_labels(4, 1))


def test_double_translate_preserves_vk():
    t = character_table(4)
    f = coset_indicator(CosetLabel((1,), (3,)), 4).scale(Fraction(5, 2))
    rng = random.Random(11)
    group = perms.all_perms(4)
    for _ in range(5):
        g = double_translate(f, rng.choice(group), rng.choice(group))
        assert is_in_vk(g, 1, t)


@pytest.mark.parametrize("n,k", [(4, 1), (4, 2), (5, 1), (5, 2)])
def test_vk_dimension_matches_projection_rank(n, k):
    # rank of the fat-isotypic projection applied to the standard basis
    from snspec.group_algebra import vk_support_set
    from snspec.linalg import rational_rank
    t = character_table(n)
    fats = sorted(vk_support_set(n, k), reverse=True)
    rows = []
    for r in range(factorial(n)):
        delta = GroupFunction.from_support(n, [r])
        proj = GroupFunction.zero(n)
        for lam in fats:
            proj = proj + isotypic_project(delta, lam, t)
        rows.append(proj.values)
    assert rational_rank(rows) == sum(dim_irrep(p) ** 2 for p in fats) == coset_span_rank(n, k)


def test_group_function_json_round_trip():
    f = random_function(4, seed=12)
    again = GroupFunction.from_json(f.to_json())
    assert again == f


def test_sparse_convolution_beyond_table_cap():
    # n = 7 takes the on-the-fly composition path (no rank table is built)
    delta = GroupFunction.from_support(7, [0])
    g = GroupFunction.from_support(7, [1, 2520, 4999])
    out = convolve(delta, g)
    assert out.values[1] == Fraction(1, factorial(7))
    assert sum(out.values) == Fraction(3, factorial(7))
