"""Symmetric groups, Young diagrams and integral Specht modules.

Permutations are tuples ``w`` with ``w[i]`` the image of ``i`` (0-based).
The product ``u * v`` applies ``u`` first and then ``v``; this matches the
product of permutation diagrams (``perm_diagram(u) * perm_diagram(v)``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, List, Sequence, Tuple

Partition = Tuple[int, ...]
Perm = Tuple[int, ...]


# ---------------------------------------------------------------------------
# permutations

def perm_mul(u: Perm, v: Perm) -> Perm:
    """u * v: apply u, then v."""
    return tuple(v[u[i]] for i in range(len(u)))


def perm_inv(u: Perm) -> Perm:
    out = [0] * len(u)
    for i, j in enumerate(u):
        out[j] = i
    return tuple(out)


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def transposition(n: int, i: int) -> Perm:
    """s_i swapping i-1 and i (1-based generator index)."""
    w = list(range(n))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def sign(u: Perm) -> int:
    seen = [False] * len(u)
    s = 1
    for i in range(len(u)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = u[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


class Permutation:
    __slots__ = ("w",)

    def __init__(self, w: Sequence[int]):
        w = tuple(w)
        if sorted(w) != list(range(len(w))):
            raise ValueError("not a permutation")
        self.w = w

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(perm_mul(self.w, other.w))

    def inverse(self) -> "Permutation":
        return Permutation(perm_inv(self.w))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.w == other.w

    def __hash__(self):
        return hash(self.w)

    def __repr__(self):
        return f"Permutation({list(self.w)})"


class GroupAlgebra:
    """Group ring Z[S_a x S_b x ...] with involution w -> w^{-1}.

    Elements are dicts perm -> int; ``sizes`` gives the factors, acting on
    consecutive blocks of points.
    """

    def __init__(self, *sizes: int):
        self.sizes = tuple(sizes)
        self.n = sum(sizes)

    def elements(self) -> List[Perm]:
        blocks = []
        off = 0
        for k in self.sizes:
            blocks.append([tuple(off + x for x in p) for p in permutations(range(k))])
            off += k
        return [sum(parts, ()) for parts in product(*blocks)]

    def dim(self) -> int:
        out = 1
        for k in self.sizes:
            out *= factorial(k)
        return out

    def mul(self, a: Dict[Perm, int], b: Dict[Perm, int]) -> Dict[Perm, int]:
        out: Dict[Perm, int] = {}
        for u, x in a.items():
            for v, y in b.items():
                w = perm_mul(u, v)
                out[w] = out.get(w, 0) + x * y
        return {k: v for k, v in out.items() if v}

    def involute(self, a: Dict[Perm, int]) -> Dict[Perm, int]:
        return {perm_inv(u): x for u, x in a.items()}

    def generator(self, i: int) -> Dict[Perm, int]:
        return {transposition(self.n, i): 1}


def group_algebra(*sizes: int) -> GroupAlgebra:
    return GroupAlgebra(*sizes)


# ---------------------------------------------------------------------------
# Young diagrams

def partitions(n: int) -> List[Partition]:
    """Partitions of n in lexicographically decreasing order."""
    out = []

    def rec(rem, maxpart, cur):
        if rem == 0:
            out.append(tuple(cur))
            return
        for k in range(min(rem, maxpart), 0, -1):
            rec(rem - k, k, cur + [k])

    rec(n, n, [])
    return out


def label_key(lam: Partition):
    """Serialized label order: by size, then lexicographically decreasing."""
    return (sum(lam), tuple(-x for x in lam))


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (same size)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def strictly_dominates(lam: Partition, mu: Partition) -> bool:
    return lam != mu and sum(lam) == sum(mu) and dominates(lam, mu)


def add_box(lam: Partition) -> List[Partition]:
    out = []
    rows = list(lam)
    for i in range(len(rows) + 1):
        if i == len(rows) or (i == 0 or rows[i - 1] > rows[i]):
            new = rows[:] if i < len(rows) else rows + [0]
            new[i] += 1
            out.append(tuple(new))
    return out


def remove_box(lam: Partition) -> List[Partition]:
    out = []
    rows = list(lam)
    for i in range(len(rows)):
        if i == len(rows) - 1 or rows[i] > rows[i + 1]:
            new = rows[:]
            new[i] -= 1
            out.append(tuple(x for x in new if x))
    return out


def differ_by_box(lam: Partition, mu: Partition) -> bool:
    if sum(mu) == sum(lam) + 1:
        return mu in add_box(lam)
    if sum(lam) == sum(mu) + 1:
        return lam in add_box(mu)
    return False


def branching_multiplicity(lam, mu) -> int:
    """1 if the labels differ by one box, else 0.  Pairs of Young diagrams
    must differ by one box in exactly one component."""
    if lam and isinstance(lam[0], tuple) or (isinstance(lam, tuple) and len(lam) == 2
                                             and all(isinstance(x, tuple) for x in lam)):
        (a1, b1), (a2, b2) = lam, mu
        if a1 == a2 and differ_by_box(b1, b2):
            return 1
        if b1 == b2 and differ_by_box(a1, a2):
            return 1
        return 0
    return 1 if differ_by_box(tuple(lam), tuple(mu)) else 0


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for r in lam if r > j) for j in range(lam[0]))


def hook_length_dim(lam: Partition) -> int:
    n = sum(lam)
    conj = conjugate(lam)
    prod_h = 1
    for i, r in enumerate(lam):
        for j in range(r):
            prod_h *= (r - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod_h


def standard_tableaux(lam: Partition) -> List[Tuple[Tuple[int, ...], ...]]:
    """Standard tableaux of shape lam with entries 0..n-1, in the order given
    by the sequence of rows holding 0, 1, 2, ... (lexicographic)."""
    n = sum(lam)
    out = []

    def rec(k, rows):
        if k == n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            if len(rows[i]) < lam[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                rec(k + 1, rows)
                rows[i].pop()

    rec(0, [[] for _ in lam])
    return out


def tableau_cells(t) -> Dict[int, Tuple[int, int]]:
    return {v: (i, j) for i, row in enumerate(t) for j, v in enumerate(row)}


# ---------------------------------------------------------------------------
# Specht modules

Tabloid = Tuple[Tuple[int, ...], ...]


def _tabloid_of(t) -> Tabloid:
    return tuple(tuple(sorted(r)) for r in t)


def _column_group(t) -> List[Tuple[Perm, int]]:
    """Elements of the column stabiliser of t with their signs."""
    n = sum(len(r) for r in t)
    cols: Dict[int, List[int]] = {}
    for row in t:
        for j, v in enumerate(row):
            cols.setdefault(j, []).append(v)
    factors = [list(permutations(c)) for c in cols.values()]
    out = []
    for choice in product(*factors):
        w = list(range(n))
        for orig, img in zip(cols.values(), choice):
            for a, b in zip(orig, img):
                w[a] = b
        w = tuple(w)
        out.append((w, sign(w)))
    return out


def _act_tableau(w: Perm, t):
    return tuple(tuple(w[v] for v in row) for row in t)


class SpechtModule:
    """Integral Specht module S^lam spanned by standard polytabloids.

    ``coords[i]`` is the tabloid expansion of the i-th standard polytabloid.
    ``matrix(w)`` is the action of a permutation on the standard basis (as
    columns); the group acts on tabloid entries through ``w^{-1}`` so that
    ``matrix(u * v) = matrix(u) @ matrix(v)``.
    """

    def __init__(self, lam: Partition):
        lam = tuple(lam)
        self.shape = lam
        self.n = sum(lam)
        self.tableaux = standard_tableaux(lam)
        self.dim = len(self.tableaux)
        self.coords: List[Dict[Tabloid, int]] = [self._polytabloid(t) for t in self.tableaux]
        self.tabloids: List[Tabloid] = sorted({k for c in self.coords for k in c})
        self._pivot = [_tabloid_of(t) for t in self.tableaux]
        # solve matrix: square block of coordinates at the standard tabloids
        self._pivinv = _invert([[Fraction(c.get(p, 0)) for p in self._pivot] for c in self.coords])
        self._cache: Dict[Perm, List[List[int]]] = {}

    def _polytabloid(self, t) -> Dict[Tabloid, int]:
        out: Dict[Tabloid, int] = {}
        for w, sg in _column_group(t):
            k = _tabloid_of(_act_tableau(w, t))
            out[k] = out.get(k, 0) + sg
        return {k: v for k, v in out.items() if v}

    def express(self, vec: Dict[Tabloid, int]) -> List[int]:
        """Coordinates of a tabloid vector in the standard polytabloid basis."""
        row = [Fraction(vec.get(p, 0)) for p in self._pivot]
        x = [sum(row[i] * self._pivinv[i][j] for i in range(self.dim)) for j in range(self.dim)]
        # check the full expansion
        recon: Dict[Tabloid, Fraction] = {}
        for c, poly in zip(x, self.coords):
            if c:
                for k, v in poly.items():
                    recon[k] = recon.get(k, 0) + c * v
        for k in set(recon) | set(vec):
            if recon.get(k, 0) != vec.get(k, 0):
                raise ArithmeticError("vector is not in the Specht module")
        if any(c.denominator != 1 for c in x):
            raise ArithmeticError("non-integral coordinates")
        return [int(c) for c in x]

    def matrix(self, w: Perm) -> List[List[int]]:
        w = tuple(w)
        if w in self._cache:
            return self._cache[w]
        if len(w) != self.n:
            raise ValueError("permutation size mismatch")
        winv = perm_inv(w)
        cols = []
        for t in self.tableaux:
            img = self._polytabloid(_act_tableau(winv, t))
            cols.append(self.express(img))
        mat = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        self._cache[w] = mat
        return mat

    def generator_matrix(self, i: int) -> List[List[int]]:
        return self.matrix(transposition(self.n, i))

    def gram(self) -> List[List[int]]:
        return [[sum(a.get(k, 0) * v for k, v in b.items()) for b in self.coords]
                for a in self.coords]


@lru_cache(maxsize=None)
def specht_build(lam: Partition) -> SpechtModule:
    return SpechtModule(tuple(lam))


def specht_gram(lam: Partition) -> List[List[int]]:
    if sum(lam) == 0:
        return [[1]]
    return specht_build(tuple(lam)).gram()


def _invert(M: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(M)
    A = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [r[n:] for r in A]


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def mat_identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def int_det(M) -> int:
    from .ring import _bareiss_int
    if not M:
        return 1
    return _bareiss_int([list(r) for r in M])


# ---------------------------------------------------------------------------
# Murphy basis (cellular basis of the group ring)

def _d_of(t, lam: Partition) -> Perm:
    """Permutation taking the row-reading tableau of shape lam to t."""
    n = sum(lam)
    init = []
    k = 0
    for r in lam:
        init.append(tuple(range(k, k + r)))
        k += r
    w = [0] * n
    for r0, r1 in zip(init, t):
        for a, b in zip(r0, r1):
            w[a] = b
    return tuple(w)


def _row_group(lam: Partition) -> List[Perm]:
    n = sum(lam)
    blocks = []
    k = 0
    for r in lam:
        blocks.append(list(range(k, k + r)))
        k += r
    out = []
    for choice in product(*[permutations(b) for b in blocks]):
        w = list(range(n))
        for b, img in zip(blocks, choice):
            for a, c in zip(b, img):
                w[a] = c
        out.append(tuple(w))
    return out


class MurphyBasis:
    """Murphy's basis m_{S,T} of Z S_n, cellular for the dominance order
    (more dominant shapes are higher) with m_{S,T}^* = m_{T,S}."""

    def __init__(self, n: int):
        self.n = n
        self.shapes = partitions(n)
        self.elements: Dict[Tuple[Partition, int, int], Dict[Perm, int]] = {}
        self.tableaux = {lam: standard_tableaux(lam) for lam in self.shapes}
        for lam in self.shapes:
            rows = _row_group(lam)
            ds = [_d_of(t, lam) for t in self.tableaux[lam]]
            for i, di in enumerate(ds):
                left = perm_inv(di)
                for j, dj in enumerate(ds):
                    el: Dict[Perm, int] = {}
                    for w in rows:
                        u = perm_mul(perm_mul(left, w), dj)
                        el[u] = el.get(u, 0) + 1
                    self.elements[(lam, i, j)] = el
        self.keys = list(self.elements)
        self._solver = None

    def _build_solver(self):
        group = list(permutations(range(self.n)))
        col = {g: i for i, g in enumerate(group)}
        M = [[Fraction(0)] * len(group) for _ in self.keys]
        for r, k in enumerate(self.keys):
            for g, v in self.elements[k].items():
                M[r][col[g]] = Fraction(v)
        inv = _invert(M)
        self._solver = (col, inv)

    def coordinates(self, el: Dict[Perm, int]) -> Dict[Tuple[Partition, int, int], object]:
        """Express a group-ring element (coefficients in any ring supporting
        integer scaling) in the Murphy basis."""
        if self._solver is None:
            self._build_solver()
        col, inv = self._solver
        out = {}
        for r, k in enumerate(self.keys):
            acc = None
            for g, v in el.items():
                f = inv[col[g]][r]
                if f:
                    if f.denominator != 1:
                        raise ArithmeticError("Murphy basis change is not integral")
                    t = v * int(f)
                    acc = t if acc is None else acc + t
            if acc is not None and acc != 0:
                out[k] = acc
        return out


@lru_cache(maxsize=None)
def murphy_basis(n: int) -> MurphyBasis:
    return MurphyBasis(n)
