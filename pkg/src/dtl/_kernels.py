"""Modular rank kernels for fast cross-checks of exact span ranks.

Exact work stays in pure Python over Z[delta^{+-1}].  Here a matrix with
Laurent polynomial entries is evaluated at a random point modulo a prime
and its rank is taken over GF(p); that rank never exceeds the true rank
and equals it for all but finitely many evaluation points.

The numba kernel is used when numba imports and DTL_NO_NUMBA is unset.
"""
from __future__ import annotations

import os
import random
from typing import Dict, Iterable, Optional, Sequence

import numpy as np

PRIME = 2_147_483_629  # below 2**31, so products fit in int64

_jit = None
if not os.environ.get("DTL_NO_NUMBA"):
    try:
        from numba import njit as _jit
    except ImportError:  # pragma: no cover
        _jit = None


def _rank_mod_py(a: np.ndarray, p: int) -> int:
    a = a.copy() % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            f = a[below, c].reshape(-1, 1)
            a[below] = (a[below] - (f * a[r]) % p) % p
        r += 1
    return r


def _rank_mod_nb(a, p):
    a = a.copy()
    rows, cols = a.shape
    for i in range(rows):
        for j in range(cols):
            a[i, j] %= p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        # Fermat inverse by square-and-multiply
        inv = 1
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f != 0:
                for j in range(cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


if _jit is not None:
    _rank_mod_nb = _jit(cache=False)(_rank_mod_nb)


def backend() -> str:
    return "numba" if _jit is not None else "numpy"


def rank_mod_p(a: np.ndarray, p: int = PRIME) -> int:
    """Rank of an integer matrix over GF(p)."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    if _jit is not None:
        return int(_rank_mod_nb(a, p))
    return _rank_mod_py(a, p)


def evaluate_rows(rows: Sequence[Dict[int, object]], ncols: int, point: Sequence[int],
                  p: int = PRIME) -> np.ndarray:
    """Sparse RingElem rows evaluated at ``point`` modulo p."""
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, c in row.items():
            out[i, j] = c.evaluate(point, p)
    return out


def modular_rank(rows: Iterable[Dict[int, object]], ncols: int, nvars: int = 1,
                 seed: Optional[int] = 0, p: int = PRIME) -> int:
    """Lower bound for the F-rank of sparse Laurent polynomial rows,
    exact with high probability."""
    rng = random.Random(seed)
    point = [rng.randrange(2, p - 1) for _ in range(nvars)]
    return rank_mod_p(evaluate_rows(list(rows), ncols, point, p), p)
