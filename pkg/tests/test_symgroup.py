from itertools import permutations, product
from math import factorial

import pytest

from dtl.symgroup import (branching_multiplicity, conjugate, dominates,
                          group_algebra, hook_length_dim, int_det, mat_identity, mat_mul,
                          murphy_basis, partitions, perm_inv, perm_mul, remove_box, specht_build,
                          specht_gram, standard_tableaux, strictly_dominates, transposition)
import oracles


def test_specht_examples():
    S = specht_build((3,))
    assert S.dim == 1 and S.generator_matrix(1) == [[1]]
    assert specht_build((1, 1)).generator_matrix(1) == [[-1]]
    assert specht_build((2, 1)).dim == 2


def test_specht_gram_examples():
    assert specht_gram((1,)) == [[1]]
    assert specht_gram((1, 1)) == [[2]]
    G = specht_gram((2, 1))
    assert int_det(G) == 3


@pytest.mark.parametrize("lam", [(2, 1), (1, 1), (2, 2), (3, 1), (2, 1, 1)])
def test_gram_matches_polytabloid_oracle(lam):
    assert specht_gram(lam) == oracles.polytabloid_gram(lam)


@pytest.mark.parametrize("n", range(1, 7))
def test_dimensions_square_sum(n):
    shapes = partitions(n)
    assert sum(specht_build(l).dim ** 2 for l in shapes) == factorial(n)
    for l in shapes:
        assert specht_build(l).dim == hook_length_dim(l) == oracles.standard_tableaux_count(l)


@pytest.mark.parametrize("lam", [l for n in range(2, 6) for l in partitions(n)])
def test_braid_relations(lam):
    S = specht_build(lam)
    n = S.n
    I = mat_identity(S.dim)
    g = [None] + [S.generator_matrix(i) for i in range(1, n)]
    for i in range(1, n):
        assert mat_mul(g[i], g[i]) == I
        if i + 1 < n:
            assert mat_mul(mat_mul(g[i], g[i + 1]), g[i]) == mat_mul(mat_mul(g[i + 1], g[i]), g[i + 1])
        for j in range(i + 2, n):
            assert mat_mul(g[i], g[j]) == mat_mul(g[j], g[i])


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (2, 2), (2, 1, 1)])
def test_action_is_multiplicative(lam):
    S = specht_build(lam)
    perms = list(permutations(range(S.n)))
    for u, v in product(perms, repeat=2):
        assert S.matrix(perm_mul(u, v)) == mat_mul(S.matrix(u), S.matrix(v))


@pytest.mark.parametrize("lam", [l for n in range(1, 6) for l in partitions(n)])
def test_gram_symmetric_nonsingular(lam):
    G = specht_gram(lam)
    assert G == [list(r) for r in zip(*G)]
    assert int_det(G) != 0


@pytest.mark.parametrize("lam", [l for n in range(2, 7) for l in partitions(n)])
def test_restriction_rank(lam):
    assert specht_build(lam).dim == sum(specht_build(m).dim for m in remove_box(lam))


def test_branching_multiplicity():
    assert branching_multiplicity((1,), (2,)) == 1
    assert branching_multiplicity((1,), (1, 1, 1)) == 0
    assert branching_multiplicity(((1,), (2,)), ((1,), (2, 1))) == 1
    assert branching_multiplicity(((1,), (2,)), ((2,), (2, 1))) == 0


def test_group_algebra():
    G = group_algebra(3)
    assert G.dim() == 6 and len(G.elements()) == 6
    s1, s2 = G.generator(1), G.generator(2)
    one = {tuple(range(3)): 1}
    assert G.mul(s1, s1) == one
    assert G.involute(G.mul(s1, s2)) == G.mul(s2, s1)
    assert group_algebra(2, 1).dim() == 2


def test_permutation_helpers():
    for u in permutations(range(4)):
        assert perm_mul(u, perm_inv(u)) == tuple(range(4))
    assert transposition(3, 1) == (1, 0, 2)


def test_dominance():
    assert dominates((3,), (2, 1)) and strictly_dominates((2, 1), (1, 1, 1))
    assert not dominates((2, 2), (3, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2)) and not dominates((2, 2, 2), (3, 1, 1, 1))
    assert conjugate((3, 1)) == (2, 1, 1)


def test_partitions_order():
    assert partitions(4) == oracles.partitions_of(4)
    assert [len(standard_tableaux(l)) for l in partitions(4)] == [1, 3, 2, 3, 1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_murphy_basis_is_cellular(n):
    M = murphy_basis(n)
    G = group_algebra(n)
    assert len(M.keys) == factorial(n)
    for k in M.keys:
        lam, i, j = k
        assert G.involute(M.elements[k]) == M.elements[(lam, j, i)]
        for g in range(1, n):
            y = G.mul(G.generator(g), M.elements[k])
            for (mu, i2, j2), c in M.coordinates(y).items():
                # left products stay in the column or move strictly up
                assert (mu == lam and j2 == j) or strictly_dominates(mu, lam)
