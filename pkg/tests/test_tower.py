import pytest

from dtl.tower import TowerError, TowerSpec


def test_levels():
    w = TowerSpec("walled", t=1)
    assert [w.algebra(k).params for k in range(5)] == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    p = TowerSpec("partition")
    assert [p.algebra(k).dim() for k in range(6)] == [1, 1, 2, 5, 15, 52]


def test_include_chain():
    for spec, top in [(TowerSpec("walled", t=1), 4), (TowerSpec("partition"), 5),
                      (TowerSpec("contour"), 4), (TowerSpec("brauer"), 4)]:
        for k in range(top):
            a = spec.algebra(k)
            for x in a.basis():
                y = spec.include(a.elem(x), k)
                assert y.alg == spec.algebra(k + 1)
            assert spec.include(a.one(), k) == spec.algebra(k + 1).one()


def test_idempotents():
    assert TowerSpec("brauer").idempotent_name(2) == "e2"
    assert TowerSpec("partition").idempotent_name(3) == "p3"
    assert TowerSpec("walled", t=1).idempotent_name(2) == "e1,4"
    with pytest.raises(TowerError):
        TowerSpec("tl").idempotent(0)


@pytest.mark.parametrize("family,kw", [("brauer", {}), ("tl", {}), ("partition", {}),
                                       ("walled", {"t": 0}), ("walled", {"t": 1}),
                                       ("contour", {"m": 2, "d": 1})])
def test_idempotent_is_essential(family, kw):
    spec = TowerSpec(family, **kw)
    for n in range(1, 4):
        e = spec.idempotent(n)
        assert e.involute() == e
        e2 = e * e
        assert set(e2.terms) == set(e.terms)


@pytest.mark.parametrize("family,kw,dims", [
    ("contour", {"m": 2, "d": 1}, [1, 2, 6, 20, 70, 252]),
    ("walled", {"t": 1}, [1, 2, 6, 24, 120]),
])
def test_square_sums(family, kw, dims):
    spec = TowerSpec(family, **kw)
    for n, dim in enumerate(dims):
        assert spec.algebra(n).dim() == dim
        assert sum(spec.count_paths(n, l) ** 2 for l in spec.labels(n)) == dim


def test_quotient_reps_are_groups():
    for spec, level in [(TowerSpec("brauer"), 3), (TowerSpec("partition"), 3),
                        (TowerSpec("walled", t=1), 3), (TowerSpec("contour"), 2)]:
        reps = spec.quotient_reps(level)
        gs = {g for _, g in reps}
        assert len(gs) == len(reps)
        for g in gs:
            assert spec.quotient_inv(g) in gs
            for h in gs:
                assert spec.quotient_mul(g, h) in gs


def test_linear_order_puts_high_labels_first():
    spec = TowerSpec("brauer")
    order = spec.linear_order(4)
    assert order[0] == ()
    for i, a in enumerate(order):
        for b in order[:i]:
            assert not spec.label_greater(4, a, b)


def test_contour_has_no_cell_labels():
    with pytest.raises(TowerError):
        TowerSpec("contour").label_info(2, (2, (0,)))


def test_unknown_family():
    with pytest.raises(TowerError):
        TowerSpec("bmw")
