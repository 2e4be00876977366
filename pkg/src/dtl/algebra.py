"""Diagram algebras over the generic ring, their elements and tower maps."""
from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import diagram as dg
from .diagram import LabeledMatching, Matching, SetPartition
from .ring import (DELTA_RING, Echelon, FracElem, RingElem,
                   contour_ring, solve_in_span)


class AlgebraError(ValueError):
    pass


class Algebra:
    """One diagram algebra: a family tag plus parameters.

    family    params
    brauer    (n,)
    tl        (n,)
    walled    (r, s)
    partition (n, half)   half=True gives the subalgebra on X'_n
    contour   (n, m, d)
    """

    def __init__(self, family: str, *params):
        if family not in dg.FAMILIES:
            raise AlgebraError(f"unknown family {family!r}")
        self.family = family
        self.params = tuple(params)
        if family == "walled":
            r, s = params
            self.n = r + s
        elif family == "partition":
            n, half = params
            self.params = (n, bool(half))
            self.n = n
        else:
            self.n = params[0]
        if family == "contour":
            self.m, self.d = params[1], params[2]
            self.ring = contour_ring(self.m)
        else:
            self.ring = DELTA_RING
        self._basis = None
        self._index = None
        self._scalar_cache: Dict[object, RingElem] = {}

    # identity --------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Algebra) and (self.family, self.params) == (other.family, other.params)

    def __hash__(self):
        return hash((self.family, self.params))

    def __repr__(self):
        return f"Algebra({self.family}, {', '.join(map(str, self.params))})"

    @property
    def name(self) -> str:
        f, p = self.family, self.params
        if f == "brauer":
            return f"B_{p[0]}"
        if f == "tl":
            return f"T_{p[0]}"
        if f == "walled":
            return f"B_{{{p[0]},{p[1]}}}"
        if f == "partition":
            return f"A_{2 * p[0] - (1 if p[1] else 0)}"
        return f"C_{p[0]}^{p[2]}(Z_{p[1]})"

    # basis -----------------------------------------------------------
    def basis(self) -> list:
        if self._basis is None:
            f, p = self.family, self.params
            if f == "brauer":
                b = dg.enum_brauer(p[0])
            elif f == "tl":
                b = dg.enum_tl(p[0])
            elif f == "walled":
                b = dg.enum_walled(*p)
            elif f == "partition":
                b = dg.enum_partition(p[0], p[1])
            else:
                b = dg.enum_contour(*p)
            self._basis = b
            self._index = {x: i for i, x in enumerate(b)}
        return self._basis

    def index(self) -> Dict[object, int]:
        self.basis()
        return self._index

    def dim(self) -> int:
        return len(self.basis())

    def contains_diagram(self, x) -> bool:
        return x in self.index()

    def identity_diagram(self):
        n = self.n
        if self.family == "partition":
            return SetPartition.identity(n)
        if self.family == "contour":
            return LabeledMatching(n, Matching.identity(n).partner, self.m, [0] * (2 * n))
        return Matching.identity(n)

    # multiplication --------------------------------------------------
    def loop_scalar(self, data) -> RingElem:
        c = self._scalar_cache.get(data)
        if c is None:
            spec = self.ring
            if self.family == "contour":
                c = RingElem.const(spec, 1)
                dl = RingElem.var(spec, "delta")
                for k in data:
                    c = c * dl
                    if k % self.m:
                        j = min(k, self.m - k)
                        c = c * RingElem.var(spec, f"delta_{j}")
            else:
                c = RingElem.var(spec, "delta", data) if data else RingElem.const(spec, 1)
            self._scalar_cache[data] = c
        return c

    def mul_diagrams(self, x, y) -> Tuple[RingElem, object]:
        data, z = dg.compose(x, y)
        return self.loop_scalar(data), z

    # elements --------------------------------------------------------
    def zero(self) -> "AlgElem":
        return AlgElem(self, {})

    def one(self) -> "AlgElem":
        return AlgElem(self, {self.identity_diagram(): RingElem.const(self.ring, 1)})

    def elem(self, x, coeff=1) -> "AlgElem":
        if isinstance(coeff, int):
            coeff = RingElem.const(self.ring, coeff)
        return AlgElem(self, {x: coeff})

    def scalar(self, c) -> RingElem:
        return c if isinstance(c, RingElem) else RingElem.const(self.ring, c)

    def delta(self, k: int = 1) -> RingElem:
        return RingElem.var(self.ring, "delta", k)

    # named generators -------------------------------------------------
    def e(self, a: int, b: Optional[int] = None):
        """Diagram e_a (arcs joining columns a, a+1) or e_{a,b}."""
        n = self.n
        b = a + 1 if b is None else b
        if not (1 <= a < b <= n):
            raise AlgebraError(f"e index out of range for rank {n}")
        pairs = [(a - 1, b - 1), (n + a - 1, n + b - 1)]
        pairs += [(i, n + i) for i in range(n) if i not in (a - 1, b - 1)]
        x = Matching.from_pairs(n, pairs)
        if self.family == "contour":
            return LabeledMatching(n, x.partner, self.m, [0] * (2 * n))
        return x

    def s(self, i: int):
        n = self.n
        if not (1 <= i < n):
            raise AlgebraError(f"s index out of range for rank {n}")
        w = list(range(n))
        w[i - 1], w[i] = w[i], w[i - 1]
        if self.family == "partition":
            return SetPartition(n, [(w[j], n + j) for j in range(n)])
        return dg.perm_diagram(w)

    def p(self, k: int) -> SetPartition:
        """Partition generator p_k: p_{2i-1} isolates column i, p_{2i} joins
        columns i and i+1 into one block."""
        n = self.n
        if k % 2:
            i = (k + 1) // 2
            if not 1 <= i <= n:
                raise AlgebraError("p index out of range")
            blocks = [(j, n + j) for j in range(n) if j != i - 1] + [(i - 1,), (n + i - 1,)]
        else:
            i = k // 2
            if not 1 <= i < n:
                raise AlgebraError("p index out of range")
            blocks = [(j, n + j) for j in range(n) if j not in (i - 1, i)]
            blocks.append((i - 1, i, n + i - 1, n + i))
        return SetPartition(n, blocks)

    def a(self, k: int, label: int) -> LabeledMatching:
        """Identity diagram with strand k labeled by [label]."""
        n = self.n
        lab = [0] * (2 * n)
        lab[k - 1] = label % self.m
        return LabeledMatching(n, Matching.identity(n).partner, self.m, lab)

    def generators(self) -> List[Tuple[str, object]]:
        """A generating set of the algebra (as diagrams) with names."""
        f, n = self.family, self.n
        out = []
        if f == "brauer":
            out += [(f"s{i}", self.s(i)) for i in range(1, n)]
            out += [(f"e{i}", self.e(i)) for i in range(1, n)]
        elif f == "tl":
            out += [(f"e{i}", self.e(i)) for i in range(1, n)]
        elif f == "walled":
            r, s = self.params
            out += [(f"s{i}", self.s(i)) for i in range(1, n) if i != r]
            if r >= 1 and s >= 1:
                out.append((f"e{r},{r + 1}", self.e(r, r + 1)))
        elif f == "partition":
            half = self.params[1]
            top = n - 1 if half else n
            out += [(f"s{i}", self.s(i)) for i in range(1, top)]
            kmax = 2 * n - 2 if half else 2 * n - 1
            out += [(f"p{k}", self.p(k)) for k in range(1, kmax + 1)]
        else:
            out += [(f"e{i}", self.e(i)) for i in range(1, n)]
            for k in range(1, min(self.d, n) + 1):
                for j in range(1, self.m):
                    out.append((f"a{k}:{j}", self.a(k, j)))
        return out

    def named(self, token: str) -> "AlgElem":
        """Element from the micro-grammar e<i>, e<a>,<b>, s<i>, p<i>, a<i>:<k>, id."""
        t = token.strip()
        if t == "id":
            return self.one()
        m = re.fullmatch(r"e(\d+)(?:,(\d+))?", t)
        if m:
            x = self.e(int(m.group(1)), int(m.group(2)) if m.group(2) else None)
        elif re.fullmatch(r"s(\d+)", t):
            x = self.s(int(t[1:]))
        elif re.fullmatch(r"p(\d+)", t):
            if self.family != "partition":
                raise AlgebraError("p<i> is only defined for partition algebras")
            x = self.p(int(t[1:]))
        elif re.fullmatch(r"a(\d+):(-?\d+)", t):
            if self.family != "contour":
                raise AlgebraError("a<i>:<k> is only defined for contour algebras")
            k, lab = t[1:].split(":")
            x = self.a(int(k), int(lab))
        else:
            raise AlgebraError(f"unknown generator {token!r}")
        if not self.contains_diagram(x):
            raise AlgebraError(f"{token} is not in {self.name}")
        return self.elem(x)


class AlgElem:
    """Formal R-linear combination of basis diagrams of one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: Dict[object, RingElem]):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v.terms}

    def _check(self, other: "AlgElem"):
        if not isinstance(other, AlgElem) or other.alg != self.alg:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return AlgElem(self.alg, t)

    def __neg__(self):
        return AlgElem(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, RingElem)):
            c = self.alg.scalar(other)
            return AlgElem(self.alg, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        alg = self.alg
        out: Dict[object, RingElem] = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                c, z = alg.mul_diagrams(x, y)
                v = cx * cy * c
                out[z] = out[z] + v if z in out else v
        return AlgElem(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, RingElem)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def involute(self) -> "AlgElem":
        return AlgElem(self.alg, {x.involute(): c for x, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def serialize(self) -> List[Tuple[str, str]]:
        return [(x.text(), str(c)) for x, c in self.sorted_terms()]

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for x, c in self.sorted_terms():
            parts.append(x.text() if c == 1 else f"({c})*{x.text()}")
        return " + ".join(parts)

    def __repr__(self):
        return self.text()

    def vector(self) -> Dict[int, RingElem]:
        idx = self.alg.index()
        return {idx[x]: c for x, c in self.terms.items()}

    def diagram_set(self):
        return set(self.terms)


def mul(a: AlgElem, b: AlgElem) -> AlgElem:
    return a * b


def product(alg: Algebra, tokens: Sequence[str]) -> AlgElem:
    out = alg.one()
    for t in tokens:
        out = out * alg.named(t)
    return out


# ---------------------------------------------------------------------------
# structural maps on diagrams

def _add_strand_right(x, left: bool = False):
    n = x.n
    if isinstance(x, SetPartition):
        if left:
            raise AlgebraError("left insertion is not used for partitions")
        shift = lambda v: v if v < n else v + 1
        blocks = [[shift(v) for v in b] for b in x.blocks] + [[n, 2 * n + 1]]
        return SetPartition(n + 1, blocks)
    if left:
        shift = lambda v: v + 1 if v < n else v + 2
        pairs = [(shift(a), shift(b)) for a, b in x.pairs] + [(0, n + 1)]
    else:
        shift = lambda v: v if v < n else v + 1
        pairs = [(shift(a), shift(b)) for a, b in x.pairs] + [(n, 2 * n + 1)]
    y = Matching.from_pairs(n + 1, pairs)
    if isinstance(x, LabeledMatching):
        lab = [0] * (2 * n + 2)
        for a, b in x.pairs:
            lab[min(shift(a), shift(b))] = x.labels[a]
        return LabeledMatching(n + 1, y.partner, x.m, lab)
    return y


def _reflect(x):
    """Left-right mirror of a matching (the map rho)."""
    n = x.n
    f = lambda v: n - 1 - v if v < n else 3 * n - 1 - v
    y = Matching.from_pairs(n, [(f(a), f(b)) for a, b in x.pairs])
    if isinstance(x, LabeledMatching):
        lab = [0] * (2 * n)
        for a, b in x.pairs:
            lab[min(f(a), f(b))] = x.labels[a]
        return LabeledMatching(n, y.partner, x.m, lab)
    return y


def _close_matching(x):
    """Join T_n to B_n.  Returns (loop_data, diagram of rank n-1)."""
    n = x.n
    p = x.partner
    t, b = n - 1, 2 * n - 1
    labeled = isinstance(x, LabeledMatching)
    lab = x.labels if labeled else None
    newp = {}
    loop = None
    if p[t] == b:
        loop = lab[t] if labeled else 0
        for a, c in x.pairs:
            if a != t:
                newp[a] = c
        merged_label = None
    else:
        u, v = p[t], p[b]
        for a, c in x.pairs:
            if a in (t, b) or c in (t, b):
                continue
            newp[a] = c
        newp[min(u, v)] = max(u, v)
        merged_label = ((lab[min(t, u)] + lab[min(b, v)]) if labeled else 0, min(u, v))
    shift = lambda v: v if v < n else v - 1
    pairs = [(shift(a), shift(c)) for a, c in newp.items()]
    y = Matching.from_pairs(n - 1, pairs)
    if not labeled:
        return (1 if loop is not None else 0), y
    newlab = [0] * (2 * n - 2)
    for a, c in newp.items():
        if merged_label and a == merged_label[1]:
            k = merged_label[0]
        else:
            k = lab[a]
        newlab[min(shift(a), shift(c))] = k
    data = (loop % x.m,) if loop is not None else ()
    return data, LabeledMatching(n - 1, y.partner, x.m, newlab)


def _close_partition_even(x: SetPartition) -> SetPartition:
    n = x.n
    idx = x.block_index()
    i, j = idx[n - 1], idx[2 * n - 1]
    blocks = [list(b) for k, b in enumerate(x.blocks) if k not in (i, j)]
    blocks.append(sorted(set(x.blocks[i]) | set(x.blocks[j])))
    return SetPartition(n, blocks)


def _close_partition_odd(x: SetPartition) -> Tuple[int, SetPartition]:
    n = x.n
    shift = lambda v: v if v < n else v - 1
    out, r = [], 0
    for b in x.blocks:
        if b == (n - 1, 2 * n - 1):
            r = 1
            continue
        rest = [shift(v) for v in b if v not in (n - 1, 2 * n - 1)]
        if rest:
            out.append(rest)
    return r, SetPartition(n - 1, out)


def iota(a: AlgElem, target: Optional[Algebra] = None) -> AlgElem:
    """Add a strand on the right (partition: odd level to even level is the
    plain inclusion X'_n in X_n)."""
    alg = a.alg
    f = alg.family
    if f == "partition":
        n, half = alg.params
        if half:
            tgt = Algebra("partition", n, False)
            return AlgElem(tgt, dict(a.terms))
        tgt = Algebra("partition", n + 1, True)
        return AlgElem(tgt, {_add_strand_right(x): c for x, c in a.terms.items()})
    if f == "walled":
        r, s = alg.params
        tgt = Algebra("walled", r, s + 1)
    elif f == "contour":
        tgt = Algebra("contour", alg.n + 1, alg.m, alg.d)
    else:
        tgt = Algebra(f, alg.n + 1)
    if target is not None:
        tgt = target
    return AlgElem(tgt, {_add_strand_right(x): c for x, c in a.terms.items()})


def iota_left(a: AlgElem, target: Optional[Algebra] = None) -> AlgElem:
    """Walled inclusion B_{r,s} -> B_{r+1,s}: shift right, new leftmost strand."""
    alg = a.alg
    if alg.family != "walled":
        raise AlgebraError("iota_left is defined for walled Brauer algebras")
    r, s = alg.params
    tgt = target or Algebra("walled", r + 1, s)
    return AlgElem(tgt, {_add_strand_right(x, left=True): c for x, c in a.terms.items()})


def closure(a: AlgElem) -> AlgElem:
    """Partially close the rightmost strand (rank n -> n-1)."""
    alg = a.alg
    f = alg.family
    if alg.n < 1:
        raise AlgebraError("cannot close a rank-0 diagram")
    out: Dict[object, RingElem] = {}

    def acc(tgt, z, c):
        out[z] = out[z] + c if z in out else c

    if f == "partition":
        n, half = alg.params
        if not half:
            tgt = Algebra("partition", n, True)
            for x, c in a.terms.items():
                acc(tgt, _close_partition_even(x), c)
        else:
            tgt = Algebra("partition", n - 1, False)
            d = alg.delta()
            for x, c in a.terms.items():
                r, z = _close_partition_odd(x)
                acc(tgt, z, c * d if r else c)
        return AlgElem(tgt, out)
    if f == "walled":
        r, s = alg.params
        if s < 1:
            raise AlgebraError("no right-hand strand to close")
        tgt = Algebra("walled", r, s - 1)
    elif f == "contour":
        tgt = Algebra("contour", alg.n - 1, alg.m, alg.d)
    else:
        tgt = Algebra(f, alg.n - 1)
    for x, c in a.terms.items():
        data, z = _close_matching(x)
        acc(tgt, z, c * alg.loop_scalar(data))
    return AlgElem(tgt, out)


def closure_left(a: AlgElem) -> AlgElem:
    """cl' = rho o cl o rho for walled algebras: close the leftmost strand."""
    alg = a.alg
    if alg.family != "walled":
        raise AlgebraError("closure_left is defined for walled Brauer algebras")
    r, s = alg.params
    if r < 1:
        raise AlgebraError("no left-hand strand to close")
    mirrored = Algebra("walled", s, r)
    b = AlgElem(mirrored, {_reflect(x): c for x, c in a.terms.items()})
    cb = closure(b)
    tgt = Algebra("walled", r - 1, s)
    return AlgElem(tgt, {_reflect(x): c for x, c in cb.terms.items()})


def conditional_expectation(a: AlgElem) -> AlgElem:
    """epsilon_n: (1/delta) cl, except cl itself on even partition levels."""
    alg = a.alg
    if alg.family == "walled" and alg.params[1] == 0:
        c = closure_left(a)
    else:
        c = closure(a)
    if alg.family == "partition" and not alg.params[1]:
        return c
    inv = alg.delta(-1)
    return c * inv


def trace(a: AlgElem) -> RingElem:
    """Normalized trace, evaluated diagram by diagram in closed form."""
    alg = a.alg
    total = RingElem(alg.ring)
    for x, c in a.terms.items():
        total = total + c * trace_diagram(alg, x)
    return total


def trace_diagram(alg: Algebra, x) -> RingElem:
    n = x.n
    f = alg.family
    if f == "partition":
        uf = dg._UF(2 * n)
        for b in x.blocks:
            for v in b[1:]:
                uf.union(b[0], v)
        for j in range(n):
            uf.union(j, n + j)
        r = len({uf.find(v) for v in range(2 * n)})
        return alg.delta(r - n)
    # close every strand: glue T_j to B_j, count loops and their labels
    p = x.partner
    seen = [False] * (2 * n)
    loops = []
    labeled = isinstance(x, LabeledMatching)
    for s in range(2 * n):
        if seen[s]:
            continue
        total = 0
        v = s
        while True:
            seen[v] = True
            w = p[v]
            seen[w] = True
            if labeled:
                total += x.labels[min(v, w)]
            v = w + n if w < n else w - n
            if v == s:
                break
        loops.append(total)
    if f == "contour":
        c = alg.loop_scalar(tuple(sorted(k % alg.m for k in loops)))
        return c * alg.delta(-n)
    return alg.delta(len(loops) - n)


def trace_by_expectations(a: AlgElem) -> RingElem:
    """epsilon_1 o ... o epsilon_n, used to cross-check ``trace``."""
    x = a
    while x.alg.n > 0 or (x.alg.family == "partition" and x.alg.params[1]):
        x = conditional_expectation(x)
    return x.terms.get(x.alg.identity_diagram(), RingElem(x.alg.ring))


# ---------------------------------------------------------------------------
# spans

class SpanBasis:
    """F-span of a set of elements of one algebra, kept in echelon form."""

    def __init__(self, alg: Algebra, elems: Iterable[AlgElem] = ()):
        self.alg = alg
        self.ech = Echelon(alg.ring)
        self.gens: List[AlgElem] = []
        for e in elems:
            self.add(e)

    @property
    def rank(self) -> int:
        return self.ech.rank

    def add(self, e: AlgElem) -> bool:
        if e.alg != self.alg:
            raise AlgebraError("element from another algebra")
        if self.ech.add(e.vector()):
            self.gens.append(e)
            return True
        return False

    def contains(self, e: AlgElem) -> bool:
        return self.ech.contains(e.vector())

    def contains_all(self, other: "SpanBasis") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "SpanBasis") -> bool:
        return self.rank == other.rank and self.contains_all(other)

    def coordinates(self, e: AlgElem) -> Optional[List[FracElem]]:
        return solve_in_span([g.vector() for g in self.gens], e.vector(), self.alg.ring)

    def diagrams(self):
        return {x for g in self.gens for x in g.terms}


def span_equal(s1: SpanBasis, s2: SpanBasis) -> bool:
    return s1.equals(s2)


def elem_in_span(a: AlgElem, s: SpanBasis) -> bool:
    return s.contains(a)


def closure_span(alg: Algebra, seeds: Iterable[AlgElem], left=True, right=True,
                 gens: Optional[Sequence[AlgElem]] = None) -> SpanBasis:
    """Smallest F-subspace containing the seeds and closed under left/right
    multiplication by the algebra generators."""
    if gens is None:
        gens = [alg.elem(x) for _, x in alg.generators()]
    span = SpanBasis(alg)
    queue = []
    for s in seeds:
        if span.add(s):
            queue.append(s)
    while queue:
        v = queue.pop()
        for g in gens:
            cands = []
            if left:
                cands.append(g * v)
            if right:
                cands.append(v * g)
            for w in cands:
                if not w.is_zero() and span.add(w):
                    queue.append(w)
    return span


def ideal_span(alg: Algebra, generators: Optional[Sequence[AlgElem]] = None,
               through_bound: Optional[int] = None, exhaustive: bool = False) -> SpanBasis:
    """Two-sided ideal as an F-span.

    With ``through_bound`` r, the span of all diagrams with at most r through
    strands (propagating blocks).  With generators, the ideal they generate,
    computed as the closure under multiplication by algebra generators, or
    with ``exhaustive=True`` as the span of every product x g y over basis
    diagrams x, y.
    """
    if through_bound is not None:
        return SpanBasis(alg, [alg.elem(x) for x in alg.basis()
                               if x.through_count() <= through_bound])
    if exhaustive:
        span = SpanBasis(alg)
        basis = [alg.elem(x) for x in alg.basis()]
        for g in generators:
            for x in basis:
                xg = x * g
                for y in basis:
                    span.add(xg * y)
        return span
    return closure_span(alg, generators)
