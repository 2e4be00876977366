"""Towers A_0 in A_1 in ... for each family: levels, inclusions, essential
idempotents, quotient data and cell labels."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from typing import List, Tuple

from . import algebra as al
from .algebra import AlgElem, Algebra
from .branching import BranchingDiagram, family_branching, tower_row
from .diagram import LabeledMatching, Matching, SetPartition, perm_diagram
from .symgroup import dominates, perm_inv, perm_mul

TOWER_FAMILIES = ("brauer", "tl", "partition", "walled", "contour")


class TowerError(ValueError):
    pass


class TowerSpec:
    """A tower of diagram algebras.

    brauer, tl      A_n = B_n, T_n
    partition       A_{2n} on X_n, A_{2n-1} on X'_n
    walled (t)      A_{2k} = B_{k,k+t}, A_{2k+1} = B_{k,k+t+1}
    contour (m, d)  A_n = C_n^d(Z_m)
    """

    def __init__(self, family: str, t: int = 0, m: int = 2, d: int = 1):
        if family not in TOWER_FAMILIES:
            raise TowerError(f"unknown family {family!r}")
        self.family = family
        self.t = t
        self.m = m
        self.d = d
        if family == "walled":
            self.params: tuple = (t,)
        elif family == "contour":
            self.params = (m, d)
        else:
            self.params = ()

    def __repr__(self):
        return f"TowerSpec({self.family!r}, params={self.params})"

    def __eq__(self, other):
        return isinstance(other, TowerSpec) and (self.family, self.params) == (other.family, other.params)

    def __hash__(self):
        return hash((self.family, self.params))

    def describe(self) -> dict:
        out = {"family": self.family}
        if self.family == "walled":
            out["t"] = self.t
        if self.family == "contour":
            out["m"] = self.m
            out["d"] = self.d
            out["note"] = "loop parameters identified delta_k = delta_{m-k}"
        return out

    # levels ------------------------------------------------------------
    def algebra(self, level: int) -> Algebra:
        return _algebra(self.family, self.params, level)

    def include(self, a: AlgElem, level: int) -> AlgElem:
        """Inclusion A_level -> A_{level+1}."""
        tgt = self.algebra(level + 1)
        if self.family == "walled" and level % 2 == 1:
            return al.iota_left(a, tgt)
        if self.family == "partition":
            out = al.iota(a)
            return AlgElem(tgt, out.terms)
        return al.iota(a, tgt)

    def include_to(self, a: AlgElem, level: int, target: int) -> AlgElem:
        while level < target:
            a = self.include(a, level)
            level += 1
        return a

    def idempotent(self, n: int) -> AlgElem:
        """The essential idempotent e_n in A_{n+1} (n >= 1)."""
        if n < 1:
            raise TowerError("e_n needs n >= 1")
        alg = self.algebra(n + 1)
        f = self.family
        if f == "partition":
            return alg.elem(alg.p(n))
        if f == "walled":
            return alg.elem(alg.e(1, alg.n))
        return alg.elem(alg.e(n))

    def idempotent_name(self, n: int) -> str:
        f = self.family
        if f == "partition":
            return f"p{n}"
        if f == "walled":
            return f"e1,{self.algebra(n + 1).n}"
        return f"e{n}"

    # quotients Q_n ---------------------------------------------------------
    def quotient_reps(self, level: int) -> List[Tuple[object, tuple]]:
        """Diagrams of A_level representing Q_level, with group elements.

        Group elements are permutations (tuples) or, for contour, label
        vectors in Z_m^{min(n,d)}."""
        alg = self.algebra(level)
        f = self.family
        n = alg.n
        if f == "tl":
            return [(alg.identity_diagram(), ())]
        if f == "contour":
            w = min(n, self.d)
            out = []
            for labs in product(range(self.m), repeat=w):
                lab = list(labs) + [0] * (2 * n - w)
                out.append((LabeledMatching(n, Matching.identity(n).partner, self.m, lab), labs))
            return out
        if f == "walled":
            r, s = alg.params
            perms = [a + tuple(r + x for x in b) for a in permutations(range(r))
                     for b in permutations(range(s))]
            return [(perm_diagram(w), w) for w in perms]
        if f == "partition":
            half = alg.params[1]
            perms = [w for w in permutations(range(n)) if not half or w[n - 1] == n - 1]
            return [(SetPartition(n, [(w[j], n + j) for j in range(n)]), w) for w in perms]
        return [(perm_diagram(w), w) for w in permutations(range(n))]

    def quotient_mul(self, g, h):
        if self.family == "contour":
            return tuple((a + b) % self.m for a, b in zip(g, h))
        if self.family == "tl":
            return ()
        return perm_mul(g, h)

    def quotient_inv(self, g):
        if self.family == "contour":
            return tuple((-a) % self.m for a in g)
        if self.family == "tl":
            return ()
        return perm_inv(g)

    # branching and labels ---------------------------------------------------
    def branching(self, n_levels: int) -> BranchingDiagram:
        return family_branching(self.family, self.params, n_levels)

    def row(self, level: int) -> int:
        return tower_row(self.family, self.params, level)

    def labels(self, level: int) -> list:
        return list(self.branching(level).levels[self.row(level)])

    def count_paths(self, level: int, label) -> int:
        return self.branching(level).count_paths(self.row(level), label)

    def paths(self, level: int, label) -> list:
        return self.branching(level).enum_paths(self.row(level), label)

    def label_info(self, level: int, label):
        """(through count k, group factor sizes, Specht shapes)."""
        f = self.family
        if f == "brauer":
            return sum(label), (sum(label),), (label,)
        if f == "tl":
            return label, (), ()
        if f == "partition":
            j = sum(label)
            if level % 2:
                return j + 1, (j, 1), (label, (1,))
            return j, (j,), (label,)
        if f == "walled":
            a, b = sum(label[0]), sum(label[1])
            return a + b, (a, b), tuple(label)
        raise TowerError("cell modules are not implemented for contour towers")

    def label_greater(self, level: int, x, y) -> bool:
        """x > y in the cell poset: fewer through strands, or equal through
        count and strictly more dominant quotient label."""
        kx, _, sx = self.label_info(level, x)
        ky, _, sy = self.label_info(level, y)
        if kx != ky:
            return kx < ky
        if sx == sy:
            return False
        return all(dominates(a, b) for a, b in zip(sx, sy))

    def linear_order(self, level: int) -> list:
        """Labels sorted so that every label follows all labels above it."""
        def key(x):
            k, _, sh = self.label_info(level, x)
            return (k, tuple(tuple(-v for v in s) for s in sh))
        return sorted(self.labels(level), key=key)


@lru_cache(maxsize=None)
def _algebra(family: str, params: tuple, level: int) -> Algebra:
    if level < 0:
        raise TowerError("negative level")
    if family == "partition":
        return Algebra("partition", (level + 1) // 2, level % 2 == 1)
    if family == "walled":
        t = params[0]
        k = level // 2
        return Algebra("walled", k, k + t + (level % 2))
    if family == "contour":
        return Algebra("contour", level, params[0], params[1])
    return Algebra(family, level)


def tower(family: str, **kw) -> TowerSpec:
    return TowerSpec(family, **kw)
