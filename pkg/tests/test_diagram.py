from itertools import product

import pytest

from dtl.diagram import (DiagramError, DiagramParseError, Matching,
                         compose, enumerate_family, enum_brauer, enum_contour, enum_partition,
                         enum_tl, enum_walled, parse_diagram, perm_diagram, strand_depth,
                         through_count)
from dtl.algebra import Algebra
import oracles

# frozen from the brute-force oracles
BRAUER = [1, 1, 3, 15, 105]
TL = [1, 1, 2, 5, 14, 42, 132]
PARTITION_LEVELS = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
CONTOUR_M2_D1 = [1, 2, 6, 20, 70, 252]


def test_oracles_agree_with_frozen_values():
    assert [oracles.brauer_count(n) for n in range(4)] == BRAUER[:4]
    assert [oracles.tl_count(n) for n in range(6)] == TL[:6]
    assert [oracles.partition_level_count(k) for k in range(7)] == PARTITION_LEVELS[:7]
    assert [oracles.contour_count(n, 2, 1) for n in range(5)] == CONTOUR_M2_D1[:5]


def test_brauer_from_permutation_filter():
    assert len(oracles.fixed_point_free_involutions(oracles.brauer_vertices(3))) == 15


@pytest.mark.parametrize("n", range(5))
def test_brauer_count(n):
    assert len(enum_brauer(n)) == BRAUER[n]


@pytest.mark.parametrize("n", range(7))
def test_tl_count(n):
    assert len(enum_tl(n)) == TL[n]


@pytest.mark.parametrize("k", range(8))
def test_partition_count(k):
    n = (k + 1) // 2
    assert len(enum_partition(n, k % 2 == 1)) == PARTITION_LEVELS[k]


def test_partition_examples():
    assert len(enum_partition(2)) == 15
    assert len(enum_partition(2, half=True)) == 5


@pytest.mark.parametrize("r,s", [(r, s) for r in range(4) for s in range(4) if r + s <= 5])
def test_walled_count(r, s):
    assert len(enum_walled(r, s)) == oracles.walled_count(r, s) == oracles.walled_formula(r, s)


@pytest.mark.parametrize("n", range(6))
def test_contour_count(n):
    assert len(enum_contour(n, 2, 1)) == CONTOUR_M2_D1[n]


def test_contour_other_parameters():
    assert [len(enum_contour(n, 2, 2)) for n in range(5)] == [1, 2, 8, 36, 168]
    assert [len(enum_contour(n, 3, 1)) for n in range(5)] == [1, 3, 12, 51, 222]


def test_enumeration_is_canonical_and_distinct():
    for fam, kw in [("brauer", {"n": 3}), ("tl", {"n": 4}), ("partition", {"n": 2}),
                    ("walled", {"r": 1, "s": 2}), ("contour", {"n": 3, "m": 2, "d": 1})]:
        xs = enumerate_family(fam, **kw)
        assert len(set(xs)) == len(xs)
        assert xs == sorted(xs, key=lambda x: x.sort_key())


def test_text_round_trip():
    for fam, kw in [("brauer", {"n": 3}), ("tl", {"n": 3}), ("partition", {"n": 2}),
                    ("contour", {"n": 3, "m": 2, "d": 1})]:
        for x in enumerate_family(fam, **kw):
            assert parse_diagram(x.text(), fam, x.n, 2) == x


def test_text_formats():
    assert Matching.identity(2).text() == "[[T1,B1],[T2,B2]]"
    assert parse_diagram("{{T1,B1},{T2},{B2}}", "partition").text() == "{{T1,B1},{T2},{B2}}"


def test_parse_errors_have_positions():
    with pytest.raises(DiagramParseError) as exc:
        parse_diagram("[[T1,T2],[B1 B2]]", "brauer")
    assert exc.value.pos > 0
    with pytest.raises(DiagramParseError):
        parse_diagram("[[T1,T2],[T1,B2]]", "brauer")


def test_compose_examples():
    B2 = Algebra("brauer", 2)
    e1, s1 = B2.e(1), B2.s(1)
    assert compose(e1, e1) == (1, e1)
    assert compose(s1, s1) == (0, Matching.identity(2))
    P2 = Algebra("partition", 1, False)
    p1 = P2.p(1)
    assert compose(p1, p1) == (1, p1)
    P3 = Algebra("partition", 2, True)
    p2 = P3.p(2)
    assert compose(p2, p2) == (0, p2)


def test_compose_rank_mismatch():
    with pytest.raises(DiagramError):
        compose(Matching.identity(2), Matching.identity(3))


def test_involute_examples():
    B2 = Algebra("brauer", 2)
    assert B2.e(1).involute() == B2.e(1)
    assert Matching.identity(3).involute() == Matching.identity(3)
    x = parse_diagram("[[T1,B2],[T2,B3],[T3,B1]]", "brauer")
    assert x.involute() == parse_diagram("[[T1,B3],[T2,B1],[T3,B2]]", "brauer")


def test_involute_negates_contour_labels():
    x = parse_diagram("[[T1,B1]:1,[T2,B2]:0]", "contour", 2, 3)
    assert x.involute().labels[0] == 2


def test_through_count():
    assert through_count(Matching.identity(4)) == 4
    assert through_count(Algebra("brauer", 2).e(1)) == 0
    assert through_count(parse_diagram("{{T1,T2,B1},{B2}}", "partition")) == 1


def test_depth_examples():
    x = Matching.identity(2)
    assert strand_depth(x, (0, 2)) == 1
    assert strand_depth(x, (1, 3)) == 2
    T4 = Algebra("tl", 4)
    y = T4.mul_diagrams(T4.e(1), T4.e(3))[1]
    assert strand_depth(y, (0, 1)) == 1
    # an arc hanging next to another arc is not separated from the west edge
    assert strand_depth(y, (2, 3)) == 1
    T6 = Algebra("tl", 6)
    z = T6.mul_diagrams(T6.e(1), T6.e(3))[1]
    assert strand_depth(z, (5, 11)) == 2


def test_depth_matches_nesting_oracle():
    for n in range(1, 6):
        for x in enum_tl(n):
            pairs = {frozenset((("T", a + 1) if a < n else ("B", a - n + 1),
                               ("T", b + 1) if b < n else ("B", b - n + 1))): (a, b)
                     for a, b in x.pairs}
            ref = oracles.nesting_depths(set(pairs), n)
            for p, (a, b) in pairs.items():
                assert strand_depth(x, (a, b)) == ref[p]


def test_through_count_is_submultiplicative():
    for fam, basis in [("brauer", enum_brauer(3)), ("partition", enum_partition(2))]:
        for x, y in product(basis, repeat=2):
            _, z = compose(x, y)
            assert z.through_count() <= min(x.through_count(), y.through_count())


def test_closure_of_subfamilies():
    W = enum_walled(1, 2)
    for x, y in product(W, repeat=2):
        assert compose(x, y)[1].is_walled(1)
    H = enum_partition(2, half=True)
    for x, y in product(H, repeat=2):
        assert compose(x, y)[1].in_half_family()


def test_compose_associative():
    for basis in (enum_brauer(2), enum_tl(3), enum_partition(1), enum_partition(2, True)):
        for x, y, z in product(basis, repeat=3):
            l1, xy = compose(x, y)
            l2, left = compose(xy, z)
            l3, yz = compose(y, z)
            l4, right = compose(x, yz)
            assert left == right and l1 + l2 == l3 + l4


def test_perm_diagram_multiplies_like_permutations():
    from dtl.symgroup import perm_mul
    from itertools import permutations
    for u, v in product(list(permutations(range(3))), repeat=2):
        loops, z = compose(perm_diagram(u), perm_diagram(v))
        assert loops == 0 and z == perm_diagram(perm_mul(u, v))
