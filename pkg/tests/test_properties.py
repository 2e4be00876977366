from math import factorial

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from dtl.algebra import Algebra, AlgElem, closure, iota
from dtl.cellbasis import CellModule, build_path_cellular_basis, mat_eq, mat_mul_r
from dtl.diagram import compose
from dtl.ring import (DELTA_RING, FracElem, RingElem, bareiss_det, contour_ring, frac_rank,
                      laplace_det)
from dtl.symgroup import hook_length_dim, partitions, specht_build
from dtl.tower import TowerSpec

import oracles

SETTINGS = settings(max_examples=60, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])
C2 = contour_ring(2)


def ring_elems(spec=DELTA_RING, max_terms=4):
    nv = spec.nvars
    exps = st.tuples(*[st.integers(-2, 2)] * nv)
    return st.dictionaries(exps, st.integers(-4, 4), max_size=max_terms).map(
        lambda d: RingElem(spec, d))


nonzero = ring_elems().filter(lambda x: not x.is_zero())


@SETTINGS
@given(ring_elems(), ring_elems(), ring_elems())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a and a + b == b + a
    assert a - a == RingElem(DELTA_RING)


@SETTINGS
@given(ring_elems(C2), ring_elems(C2), ring_elems(C2))
def test_ring_axioms_multivariate(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) * c == a * c + b * c


@SETTINGS
@given(ring_elems(), nonzero)
def test_exact_division(a, b):
    assert (a * b).exact_div(b) == a


@SETTINGS
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(ring_elems(max_terms=2), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_bareiss_matches_laplace(M):
    assert bareiss_det(M) == laplace_det(M) == oracles.laplace_det(M)


@SETTINGS
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(ring_elems(max_terms=2), min_size=n, max_size=n),
                 min_size=1, max_size=4),
        st.randoms())),
    nonzero)
def test_frac_rank_invariance(data, scale):
    M, rnd = data
    r = frac_rank(M)
    P = list(M)
    rnd.shuffle(P)
    assert frac_rank(P) == r
    f = FracElem(scale, RingElem.var(DELTA_RING, "delta", 1) + 1)
    S = [[f * x for x in P[0]]] + P[1:]
    assert frac_rank(S) == r


ALGEBRAS = [Algebra("brauer", 3), Algebra("tl", 4), Algebra("partition", 2, False),
            Algebra("partition", 2, True), Algebra("walled", 2, 1), Algebra("contour", 3, 2, 1)]


def alg_elems(alg, max_terms=3):
    basis = alg.basis()
    coeff = ring_elems(alg.ring, max_terms=2).filter(lambda x: not x.is_zero())
    return st.dictionaries(st.sampled_from(basis), coeff, min_size=1, max_size=max_terms).map(
        lambda d: AlgElem(alg, d))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_involution_and_associativity(alg):
    @SETTINGS
    @given(alg_elems(alg), alg_elems(alg), alg_elems(alg))
    def check(a, b, c):
        assert (a * b) * c == a * (b * c)
        assert (a * b).involute() == b.involute() * a.involute()
        assert a.involute().involute() == a
    check()


@pytest.mark.parametrize("alg", ALGEBRAS[:4], ids=lambda a: a.name)
def test_through_count_submultiplicative(alg):
    @SETTINGS
    @given(st.sampled_from(alg.basis()), st.sampled_from(alg.basis()))
    def check(x, y):
        _, z = compose(x, y)
        assert z.through_count() <= min(x.through_count(), y.through_count())
    check()


@pytest.mark.parametrize("alg", [Algebra("brauer", 3), Algebra("tl", 4),
                                 Algebra("partition", 2, True), Algebra("contour", 3, 2, 1)],
                         ids=lambda a: a.name)
def test_closure_is_bimodule_map(alg):
    lower = closure(alg.one()).alg

    @SETTINGS
    @given(alg_elems(lower, 2), alg_elems(alg, 2), alg_elems(lower, 2))
    def check(a, x, b):
        assert closure(iota(a, alg) * x * iota(b, alg)) == a * closure(x) * b
    check()


@pytest.mark.parametrize("family,levels", [("brauer", 5), ("tl", 8), ("partition", 5)])
def test_path_square_sums(family, levels):
    spec = TowerSpec(family)
    for k in range(levels + 1):
        assert sum(spec.count_paths(k, lam) ** 2 for lam in spec.labels(k)) == \
            spec.algebra(k).dim()


@pytest.mark.parametrize("n", range(1, 7))
def test_specht_dimensions(n):
    for lam in partitions(n):
        assert specht_build(lam).dim == hook_length_dim(lam) == oracles.standard_tableaux_count(lam)
    assert sum(hook_length_dim(l) ** 2 for l in partitions(n)) == factorial(n)


CELL_CASES = [(TowerSpec("brauer"), 3), (TowerSpec("tl"), 4), (TowerSpec("partition"), 3),
              (TowerSpec("walled", t=1), 2)]


@pytest.mark.parametrize("spec,level", CELL_CASES, ids=lambda v: str(v))
def test_cellularity_with_random_elements(spec, level):
    datum = build_path_cellular_basis(spec, level)

    @settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(alg_elems(datum.alg, 3))
    def check(a):
        assert datum.verify([("a", a)])["status"] == "pass"
    check()


@pytest.mark.parametrize("spec,level", CELL_CASES[:3], ids=lambda v: str(v))
def test_cell_module_is_a_representation(spec, level):
    alg = spec.algebra(level)
    mods = [CellModule(spec, level, lam) for lam in spec.labels(level)]

    @settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(alg_elems(alg, 2), alg_elems(alg, 2))
    def check(a, b):
        for M in mods:
            assert mat_eq(M.matrix(a * b), mat_mul_r(M.matrix(a), M.matrix(b), alg.ring))
    check()
