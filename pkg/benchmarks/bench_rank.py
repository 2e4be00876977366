"""Time modular span ranks (numba or numpy backend) against exact ranks.

    python3 benchmarks/bench_rank.py
    DTL_NO_NUMBA=1 python3 benchmarks/bench_rank.py
"""
import time

from dtl import _kernels
from dtl.algebra import ideal_span
from dtl.ring import Echelon
from dtl.tower import TowerSpec

CASES = [("brauer", 4), ("tl", 6), ("partition", 5), ("brauer", 5)]


def rows_for(family, level):
    spec = TowerSpec(family)
    alg = spec.algebra(level)
    e = spec.idempotent(level - 1)
    # products x e y over basis diagrams span the ideal generated by e
    basis = [alg.elem(x) for x in alg.basis()]
    rows = []
    for x in basis[:40]:
        xe = x * e
        for y in basis:
            rows.append((xe * y).vector())
    return alg, rows


def main():
    print(f"backend: {_kernels.backend()}")
    _kernels.rank_mod_p(_kernels.np.eye(2, dtype=_kernels.np.int64))  # compile
    print(f"{'algebra':<10}{'rows':>8}{'cols':>6}{'rank':>6}{'modular s':>11}{'exact s':>9}")
    for family, level in CASES:
        alg, rows = rows_for(family, level)
        t0 = time.perf_counter()
        mod = _kernels.modular_rank(rows, alg.dim())
        t1 = time.perf_counter()
        if alg.dim() <= 200:
            ech = Echelon(alg.ring)
            for r in rows:
                ech.add(r)
            exact = ech.rank
            t2 = time.perf_counter()
            assert exact == mod, (alg.name, exact, mod)
            ex_time = f"{t2 - t1:9.2f}"
        else:
            ex_time = f"{'-':>9}"
        print(f"{alg.name:<10}{len(rows):>8}{alg.dim():>6}{mod:>6}{t1 - t0:11.3f}{ex_time}")
    ref = ideal_span(TowerSpec("brauer").algebra(3), [TowerSpec("brauer").idempotent(2)])
    print(f"check: ideal rank in B_3 = {ref.rank}")


if __name__ == "__main__":
    main()
