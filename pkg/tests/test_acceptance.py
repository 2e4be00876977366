"""Acceptance suite.  Each test prints one PASS/FAIL line; run with

    pytest tests/test_acceptance.py -s
"""
import time
from contextlib import contextmanager
from math import factorial

from dtl.algebra import Algebra
from dtl.axioms import check_axioms, check_basic_construction, check_coherence
from dtl.cellbasis import (CellModule, build_path_cellular_basis, globalization_dim,
                           trace_gram_det, verify_cell_net)
from dtl.diagram import enum_brauer, enum_contour, enum_partition, enum_tl, enum_walled
from dtl.ring import bareiss_det
from dtl.symgroup import hook_length_dim, mat_identity, mat_mul, partitions, specht_build
from dtl.tower import TowerSpec

import oracles


@contextmanager
def criterion(capsys, number, title, limit=None):
    t0 = time.perf_counter()
    status = "FAIL"
    note = ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        if limit is not None and elapsed > limit:
            note = f" (over the {limit:.0f} s limit)"
            raise AssertionError(f"criterion {number} took {elapsed:.1f} s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f} s){note}")


def double_factorial(n):
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def catalan(n):
    return factorial(2 * n) // (factorial(n) * factorial(n + 1))


BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597, 27644437, 190899322,
        1382958545, 10480142147]

AXIOM_RANGE = [(TowerSpec("brauer"), 4), (TowerSpec("tl"), 5), (TowerSpec("partition"), 5),
               (TowerSpec("walled", t=0), 4), (TowerSpec("walled", t=1), 4),
               (TowerSpec("contour", m=2, d=1), 4)]


def test_criterion_1_dimensions(capsys):
    with criterion(capsys, 1, "dimension counts", limit=10):
        for n in range(7):
            assert len(enum_brauer(n)) == double_factorial(n)
        assert len(enum_brauer(6)) == 10395
        for n in range(11):
            assert len(enum_tl(n)) == catalan(n)
        for k in range(9):
            assert len(enum_partition((k + 1) // 2, bool(k % 2))) == BELL[k]
        assert len(enum_partition(4, False)) == 4140
        for r in range(6):
            for s in range(6 - r):
                assert len(enum_walled(r, s)) == oracles.walled_formula(r, s) \
                    == oracles.walled_count(r, s) == factorial(r + s)
        for n in range(6):
            assert len(enum_contour(n, 2, 1)) == oracles.contour_count(n, 2, 1)


def test_criterion_2_axioms(capsys):
    with criterion(capsys, 2, "framework axioms 2,3/3',5,6,7,8 and e e' e = e", limit=300):
        for spec, top in AXIOM_RANGE:
            rep = check_axioms(spec, top)
            bad = rep.first_failure()
            assert rep.passed, (spec.describe(), bad and bad.to_json())
            got = {r.id for r in rep.results}
            assert {"2", "5", "6", "7", "8", "rel"} <= got
            assert "3" in got or "3'" in got


def test_criterion_3_paths(capsys):
    with criterion(capsys, 3, "path identities"):
        brauer = TowerSpec("brauer")
        assert sorted(brauer.count_paths(3, l) ** 2 for l in brauer.labels(3)) == [1, 1, 4, 9]
        for spec, top in AXIOM_RANGE:
            for k in range(top + 1):
                labels = spec.labels(k)
                assert sum(spec.count_paths(k, l) ** 2 for l in labels) == spec.algebra(k).dim()
                if spec.family == "contour":
                    continue
                for lam in labels:
                    assert CellModule(spec, k, lam).rank == spec.count_paths(k, lam)
        assert TowerSpec("brauer").algebra(4).dim() == 105


def _leading(x):
    return x.terms[0][1]


def test_criterion_4_gram(capsys):
    with criterion(capsys, 4, "Gram nondegeneracy", limit=300):
        cases = [(TowerSpec("brauer"), 4), (TowerSpec("tl"), 4), (TowerSpec("partition"), 4)]
        for spec, top in cases:
            for k in range(top + 1):
                for lam in spec.labels(k):
                    assert not bareiss_det(CellModule(spec, k, lam).gram()).is_zero(), (k, lam)
        seen = set()
        for t in range(4):
            spec = TowerSpec("walled", t=t)
            for k in range(4):
                alg = spec.algebra(k)
                r, s = alg.params
                if r + s > 3:
                    continue
                seen.add((r, s))
                for lam in spec.labels(k):
                    assert not bareiss_det(CellModule(spec, k, lam).gram()).is_zero()
        assert {(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2)} <= seen
        algs = [Algebra("brauer", n) for n in range(1, 4)] + \
            [Algebra("tl", n) for n in range(1, 6)] + \
            [TowerSpec("partition").algebra(k) for k in range(1, 5)]
        for alg in algs:
            det = trace_gram_det(alg)
            assert not det.is_zero()
            assert _leading(det) in (1, -1), (alg.name, str(det))


def test_criterion_5_cellularity(capsys):
    with criterion(capsys, 5, "cellularity certificate and cell net"):
        cases = [(TowerSpec("brauer"), 3), (TowerSpec("tl"), 4), (TowerSpec("partition"), 4),
                 (TowerSpec("walled", t=1), 3)]
        for spec, top in cases:
            for k in range(top + 1):
                datum = build_path_cellular_basis(spec, k)
                assert datum.verify()["status"] == "pass"
                net = verify_cell_net(datum)
                assert net["status"] == "pass", net
                if len(datum.labels) <= 8:
                    assert net["mode"] == "all order ideals"


def test_criterion_6_basic_construction(capsys):
    with criterion(capsys, 6, "basic construction rank certificate"):
        for family, levels in (("brauer", (2, 3)), ("tl", (2, 3, 4)), ("partition", (2, 3, 4))):
            for n in levels:
                rep = check_basic_construction(TowerSpec(family), n)
                assert rep["status"] == "pass", rep
                assert rep["tensor_rank"] == rep["image_rank"] == rep["ideal_rank"]


def test_criterion_7_coherence(capsys):
    with criterion(capsys, 7, "coherence of restriction and induction"):
        for family, top in (("brauer", 3), ("tl", 4), ("partition", 4)):
            for n in range(top + 1):
                rep = check_coherence(TowerSpec(family), n)
                assert rep["status"] == "pass", rep


def test_criterion_8_oracles(capsys):
    with criterion(capsys, 8, "Specht and globalization oracles"):
        for n in range(1, 7):
            assert sum(hook_length_dim(l) ** 2 for l in partitions(n)) == factorial(n)
            for lam in partitions(n):
                S = specht_build(lam)
                assert S.dim == hook_length_dim(lam)
                gens = [S.generator_matrix(i) for i in range(1, n)]
                one = mat_identity(S.dim)
                for i, a in enumerate(gens):
                    assert mat_mul(a, a) == one
                    for j, b in enumerate(gens):
                        if j == i + 1:
                            assert mat_mul(mat_mul(a, b), a) == mat_mul(mat_mul(b, a), b)
                        elif j > i + 1:
                            assert mat_mul(a, b) == mat_mul(b, a)
        for family in ("brauer", "tl"):
            spec = TowerSpec(family)
            for level in range(2, 4):
                for lam in spec.labels(level - 2):
                    g = globalization_dim(spec, level, lam)
                    assert g == CellModule(spec, level, lam).rank, (family, level, lam)
