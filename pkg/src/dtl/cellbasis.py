"""Cell modules, Gram matrices and path-indexed cellular bases.

A basis diagram is cut into a bottom half (a dangle), a top half and the
permutation pairing their marked points.  Cell modules are spanned by
dangles tensored with a Specht module of the quotient group; the cellular
basis lifts Murphy's basis of the group ring through the same cut.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import algebra as al
from .algebra import AlgElem, Algebra
from .diagram import Matching, SetPartition
from .ring import (DELTA_RING, Echelon, RingElem, bareiss_det, nullspace)
from .symgroup import (kron, murphy_basis, specht_build,
                       specht_gram, standard_tableaux)
from .tower import TowerSpec


class CellError(RuntimeError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


# ---------------------------------------------------------------------------
# halves

def halves(x):
    """(bottom dangle, top dangle, sigma): the i-th marked bottom point or
    block is joined to the sigma[i]-th marked top one."""
    if isinstance(x, SetPartition):
        return _halves_partition(x)
    n, p = x.n, x.partner
    barcs = tuple(sorted((a - n, p[a] - n) for a in range(n, 2 * n) if p[a] > a))
    tarcs = tuple(sorted((a, p[a]) for a in range(n) if a < p[a] < n))
    bfree = tuple(a - n for a in range(n, 2 * n) if p[a] < n)
    tfree = tuple(a for a in range(n) if p[a] >= n)
    tpos = {c: i for i, c in enumerate(tfree)}
    sigma = tuple(tpos[p[c + n]] for c in bfree)
    return (barcs, bfree), (tarcs, tfree), sigma


def _halves_partition(x: SetPartition):
    n = x.n
    bun, tun, marked = [], [], []
    for b in x.blocks:
        bot = tuple(v - n for v in b if v >= n)
        top = tuple(v for v in b if v < n)
        if bot and top:
            marked.append((bot, top))
        elif bot:
            bun.append(bot)
        else:
            tun.append(top)
    # the block through column n (always propagating on X'_n) goes last
    key = lambda q: (n - 1 in q, q[0])
    bm = sorted((m[0] for m in marked), key=key)
    tm = sorted((m[1] for m in marked), key=key)
    tpos = {q: i for i, q in enumerate(tm)}
    link = dict(marked)
    sigma = tuple(tpos[link[q]] for q in bm)
    return (tuple(sorted(bun)), tuple(bm)), (tuple(sorted(tun)), tuple(tm)), sigma


def assemble(alg: Algebra, bot, sigma, top):
    n = alg.n
    if alg.family == "partition":
        blocks = [tuple(v + n for v in q) for q in bot[0]] + list(top[0])
        blocks += [tuple(v + n for v in bot[1][i]) + top[1][sigma[i]] for i in range(len(sigma))]
        return SetPartition(n, blocks)
    pairs = [(a + n, b + n) for a, b in bot[0]] + list(top[0])
    pairs += [(bot[1][i] + n, top[1][sigma[i]]) for i in range(len(sigma))]
    return Matching.from_pairs(n, pairs)


def _dangle_key(d):
    return repr(d)


# ---------------------------------------------------------------------------
# cell modules

class CellModule:
    """Cell module Delta^(label, level) realized on dangles (x) Specht."""

    def __init__(self, tower: TowerSpec, level: int, label):
        if label not in tower.labels(level):
            raise CellError(f"label {label!r} is not on level {level}")
        self.tower = tower
        self.level = level
        self.label = label
        self.alg = alg = tower.algebra(level)
        k, sizes, shapes = tower.label_info(level, label)
        self.k, self.sizes, self.shapes = k, sizes, shapes
        self.planar = tower.family == "tl"
        found = set()
        for x in alg.basis():
            if x.through_count() != k:
                continue
            bot, _, _ = halves(x)
            if alg.family == "walled":
                r = alg.params[0]
                if sum(1 for c in bot[1] if c < r) != sizes[0]:
                    continue
            found.add(bot)
        self.dangles = sorted(found, key=_dangle_key)
        self.dindex = {d: i for i, d in enumerate(self.dangles)}
        self.spechts = [specht_build(sh) if sum(sh) else None for sh in shapes]
        vd = 1
        for S in self.spechts:
            vd *= S.dim if S else 1
        self.vdim = vd
        self.rank = len(self.dangles) * vd
        self._act: Dict[Tuple[object, int], Optional[tuple]] = {}
        self._rho: Dict[tuple, List[List[int]]] = {}
        self._ring = alg.ring

    def __repr__(self):
        return f"CellModule({self.tower.family}, level={self.level}, label={self.label!r}, rank={self.rank})"

    # group factor -----------------------------------------------------------
    def rho(self, sigma: tuple) -> List[List[int]]:
        """Matrix of the quotient group element sigma on the Specht factor."""
        if self.planar:
            if sigma != tuple(range(len(sigma))):
                raise CellError("non-planar permutation in a planar module")
            return [[1]]
        m = self._rho.get(sigma)
        if m is None:
            m = [[1]]
            off = 0
            for size, S in zip(self.sizes, self.spechts):
                part = sigma[off:off + size]
                if sorted(part) != list(range(off, off + size)):
                    raise CellError("permutation does not preserve the quotient blocks", sigma)
                if S is not None:
                    m = kron(m, S.matrix(tuple(v - off for v in part)))
                off += size
            self._rho[sigma] = m
        return m

    def _group_elements_ok(self, sigma: tuple) -> bool:
        off = 0
        for size in self.sizes:
            if sorted(sigma[off:off + size]) != list(range(off, off + size)):
                return False
            off += size
        return True

    # action ---------------------------------------------------------------
    def act_dangle(self, x, b: int):
        """x . dangle_b = coef * dangle_{b'} with permutation pi, or None."""
        key = (x, b)
        if key in self._act:
            return self._act[key]
        d = self.dangles[b]
        ident = tuple(range(self.k))
        D = assemble(self.alg, d, ident, d)
        c, Z = self.alg.mul_diagrams(x, D)
        res = None
        if Z.through_count() == self.k:
            bot, top, sigma = halves(Z)
            if top != d:
                raise CellError("left action changed the top half", (x, d))
            res = (c, self.dindex[bot], sigma)
        self._act[key] = res
        return res

    def matrix(self, a) -> List[List[RingElem]]:
        """Action matrix (columns are images of basis vectors)."""
        if not isinstance(a, AlgElem):
            a = self.alg.elem(a)
        n, vd = self.rank, self.vdim
        zero = RingElem(self._ring)
        out = [[zero] * n for _ in range(n)]
        for x, cx in a.terms.items():
            for b in range(len(self.dangles)):
                r = self.act_dangle(x, b)
                if r is None:
                    continue
                c, b2, pi = r
                rho = self.rho(pi)
                f = cx * c
                for v in range(vd):
                    col = b * vd + v
                    for i in range(vd):
                        if rho[i][v]:
                            row = b2 * vd + i
                            out[row][col] = out[row][col] + f * rho[i][v]
        return out

    def generator_matrices(self) -> Dict[str, List[List[RingElem]]]:
        return {name: self.matrix(x) for name, x in self.alg.generators()}

    # bilinear form ----------------------------------------------------------
    def _specht_gram(self) -> List[List[int]]:
        g = [[1]]
        if not self.planar:
            for sh in self.shapes:
                if sum(sh):
                    g = kron(g, specht_gram(sh))
        return g

    def gram(self) -> List[List[RingElem]]:
        """<(d1,v1),(d2,v2)> = coefficient * <v1, pi v2> when i(X2) X1 keeps
        all marked points, with X_j the diagram (d_j, id, d_0)."""
        alg, vd = self.alg, self.vdim
        ident = tuple(range(self.k))
        ref = self.dangles[0]
        G = self._specht_gram()
        X = [assemble(alg, d, ident, ref) for d in self.dangles]
        zero = RingElem(self._ring)
        out = [[zero] * self.rank for _ in range(self.rank)]
        for b1, x1 in enumerate(X):
            for b2, x2 in enumerate(X):
                c, Z = alg.mul_diagrams(x2.involute(), x1)
                if Z.through_count() != self.k:
                    continue
                _, _, pi = halves(Z)
                rho = self.rho(pi)
                GR = [[sum(G[i][k] * rho[k][j] for k in range(vd)) for j in range(vd)]
                      for i in range(vd)]
                for v1 in range(vd):
                    for v2 in range(vd):
                        if GR[v1][v2]:
                            out[b1 * vd + v1][b2 * vd + v2] = c * GR[v1][v2]
        return out


def build_cell_module(tower: TowerSpec, level: int, label) -> CellModule:
    return CellModule(tower, level, label)


def gram_matrix(M: CellModule) -> List[List[RingElem]]:
    return M.gram()


def trace_gram_det(alg: Algebra, max_dim: int = 60) -> RingElem:
    """det[eps(x i(y))] over all basis diagrams."""
    basis = alg.basis()
    if len(basis) > max_dim:
        raise CellError(f"trace Gram determinant of size {len(basis)} exceeds the guard {max_dim}")
    rows = []
    for x in basis:
        row = []
        for y in basis:
            c, z = alg.mul_diagrams(x, y.involute())
            row.append(c * al.trace_diagram(alg, z))
        rows.append(row)
    return bareiss_det(rows)


# ---------------------------------------------------------------------------
# matrices over R

def mat_mul_r(A, B, spec=DELTA_RING):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    zero = RingElem(spec)
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            a = A[i][k]
            if not a.terms:
                continue
            row = B[k]
            for j in range(p):
                if row[j].terms:
                    out[i][j] = out[i][j] + a * row[j]
    return out


def mat_eq(A, B) -> bool:
    return all(x == y for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def mat_trace(A):
    t = A[0][0] - A[0][0] if A else None
    for i in range(len(A)):
        t = t + A[i][i]
    return t


# ---------------------------------------------------------------------------
# path-indexed cellular basis

class CellDatum:
    """Cellular basis c^lam_{s,t} of A_level with verified axioms.

    ``index[lam]`` lists the paths in T(lam); the s-th path labels the s-th
    basis vector (dangle, standard tableau) of the cell module.
    """

    def __init__(self, tower: TowerSpec, level: int):
        self.tower = tower
        self.level = level
        self.alg = tower.algebra(level)
        self.labels = tower.linear_order(level)
        self.modules = {lam: CellModule(tower, level, lam) for lam in self.labels}
        self.index = {lam: tower.paths(level, lam) for lam in self.labels}
        for lam in self.labels:
            if len(self.index[lam]) != self.modules[lam].rank:
                raise CellError("path count differs from cell module rank", lam)
        self.keys: List[tuple] = []
        self.elems: Dict[tuple, AlgElem] = {}
        for lam in self.labels:
            self._lift(lam)
        self._coord_setup()

    def greater(self, a, b) -> bool:
        return self.tower.label_greater(self.level, a, b)

    # lifts -----------------------------------------------------------------
    def _group_basis(self, M: CellModule):
        """Murphy basis of the quotient group ring as {(S, T): {perm: int}}
        with S, T indexing the Specht factor basis (Kronecker order)."""
        k = M.k
        out = {(0, 0): {(): 1}}
        if M.planar:
            return {(0, 0): {tuple(range(k)): 1}}
        off = 0
        for size, sh in zip(M.sizes, M.shapes):
            if size == 0:
                continue
            mb = murphy_basis(size)
            nt = len(standard_tableaux(sh))
            new = {}
            for (s0, t0), e0 in out.items():
                for i in range(nt):
                    for j in range(nt):
                        e1 = mb.elements[(sh, i, j)]
                        new[(s0 * nt + i, t0 * nt + j)] = {
                            w0 + tuple(off + v for v in w1): c0 * c1
                            for w0, c0 in e0.items() for w1, c1 in e1.items()}
            out = new
            off += size
        return out

    def _lift(self, lam):
        M = self.modules[lam]
        vd = M.vdim
        gb = self._group_basis(M)
        alg = self.alg
        for s in range(M.rank):
            bs, S = divmod(s, vd)
            for t in range(M.rank):
                bt, T = divmod(t, vd)
                terms = {}
                for w, c in gb[(S, T)].items():
                    x = assemble(alg, M.dangles[bs], w, M.dangles[bt])
                    terms[x] = alg.scalar(c)
                key = (lam, s, t)
                self.keys.append(key)
                self.elems[key] = AlgElem(alg, terms)

    # coordinates -----------------------------------------------------------
    def _coord_setup(self):
        alg = self.alg
        idx = alg.index()
        n = alg.dim()
        if len(self.keys) != n:
            raise CellError(f"basis has {len(self.keys)} elements, algebra has dimension {n}")
        M = [[Fraction(0)] * n for _ in range(n)]
        for r, key in enumerate(self.keys):
            for x, c in self.elems[key].terms.items():
                M[r][idx[x]] = Fraction(c.constant_value())
        inv = _invert_sparse(M)
        if inv is None:
            raise CellError("lifted elements are linearly dependent")
        # coordinates: row vector y (over diagrams) times inv
        self._inv = []
        for d in range(n):
            row = {}
            for j, f in inv[d].items():
                if f.denominator != 1:
                    raise CellError("cellular basis is not an R-basis (non-integral change of basis)")
                row[j] = int(f)
            self._inv.append(row)

    def coords(self, y: AlgElem) -> Dict[tuple, RingElem]:
        idx = self.alg.index()
        acc: Dict[int, RingElem] = {}
        for x, c in y.terms.items():
            for j, f in self._inv[idx[x]].items():
                v = c.scale(f) if f != 1 else c
                acc[j] = acc[j] + v if j in acc else v
        return {self.keys[j]: v for j, v in acc.items() if v.terms}

    # verification ------------------------------------------------------------
    def left_coefficients(self, a: AlgElem, lam, t: int):
        """r_a(s', s) for fixed t, checking a c_{s,t} is in the right layer."""
        M = self.modules[lam]
        out = {}
        for s in range(M.rank):
            y = a * self.elems[(lam, s, t)]
            for (mu, s2, t2), v in self.coords(y).items():
                if mu == lam:
                    if t2 != t:
                        raise CellError("left product leaves the column", (lam, s, t))
                    out[(s2, s)] = v
                elif not self.greater(mu, lam):
                    raise CellError("left product leaves the ideal", (lam, s, t, mu))
        return out

    def verify(self, generators: Optional[Sequence[Tuple[str, object]]] = None) -> dict:
        """Check the three cellularity axioms exhaustively; raise CellError
        with a witness on failure."""
        alg = self.alg
        gens = generators if generators is not None else alg.generators()
        # (1) basis: count and independence were checked in _coord_setup
        checked = 0
        for name, g in gens:
            a = g if isinstance(g, AlgElem) else alg.elem(g)
            for lam in self.labels:
                M = self.modules[lam]
                ref = None
                for t in range(M.rank):
                    r = self.left_coefficients(a, lam, t)
                    if ref is None:
                        ref = r
                    elif r != ref:
                        raise CellError("left coefficients depend on t", (name, lam, t))
                    checked += M.rank
        # (3) involution
        for key in self.keys:
            lam, s, t = key
            y = self.elems[key].involute() - self.elems[(lam, t, s)]
            for (mu, _, _), v in self.coords(y).items():
                if not self.greater(mu, lam):
                    raise CellError("involution axiom fails", key)
        return {"dimension": alg.dim(), "labels": len(self.labels),
                "products_checked": checked, "status": "pass"}

    def layer_matrix(self, a: AlgElem, lam) -> List[List[RingElem]]:
        """Matrix of a on the layer lam, read from column t = 0."""
        M = self.modules[lam]
        r = self.left_coefficients(a, lam, 0)
        zero = RingElem(self.alg.ring)
        out = [[zero] * M.rank for _ in range(M.rank)]
        for (s2, s), v in r.items():
            out[s2][s] = v
        return out

    def to_json(self) -> dict:
        from .branching import label_to_json
        return {
            "algebra": self.alg.name,
            "poset": [label_to_json(l) for l in self.labels],
            "order": [[label_to_json(a), label_to_json(b)] for a in self.labels
                      for b in self.labels if self.greater(a, b)],
            "paths": {json_key(l): [[label_to_json(x) for x in p] for p in self.index[l]]
                      for l in self.labels},
            "basis": [{"label": label_to_json(lam), "s": s, "t": t,
                       "element": self.elems[(lam, s, t)].serialize()}
                      for lam, s, t in self.keys],
        }


def json_key(label) -> str:
    import json
    from .branching import label_to_json
    return json.dumps(label_to_json(label))


def _invert_sparse(M: List[List[Fraction]]) -> Optional[List[Dict[int, Fraction]]]:
    """Inverse of a square rational matrix as sparse rows, or None."""
    n = len(M)
    A = [{j: v for j, v in enumerate(r) if v} for r in M]
    B = [{i: Fraction(1)} for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i].get(c)), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        B[c], B[p] = B[p], B[c]
        piv = A[c][c]
        if piv != 1:
            A[c] = {j: v / piv for j, v in A[c].items()}
            B[c] = {j: v / piv for j, v in B[c].items()}
        for i in range(n):
            if i != c and A[i].get(c):
                f = A[i][c]
                for j, v in A[c].items():
                    nv = A[i].get(j, 0) - f * v
                    if nv:
                        A[i][j] = nv
                    else:
                        A[i].pop(j, None)
                for j, v in B[c].items():
                    nv = B[i].get(j, 0) - f * v
                    if nv:
                        B[i][j] = nv
                    else:
                        B[i].pop(j, None)
    return B


def build_path_cellular_basis(tower: TowerSpec, level: int) -> CellDatum:
    datum = CellDatum(tower, level)
    datum.verify()
    return datum


# ---------------------------------------------------------------------------
# cell nets

def _up_sets(labels, greater) -> List[frozenset]:
    out = []
    n = len(labels)
    for mask in range(1 << n):
        s = {labels[i] for i in range(n) if mask >> i & 1}
        if all(m in s for l in s for m in labels if greater(m, l)):
            out.append(frozenset(s))
    return out


def verify_cell_net(datum: CellDatum, exhaustive_limit: int = 8) -> dict:
    """Check the cell-net conditions on every order ideal (up-set) of the
    label poset, or on a maximal chain when the poset is large."""
    labels = datum.labels
    alg = datum.alg
    greater = datum.greater
    if len(labels) <= exhaustive_limit:
        ideals = _up_sets(labels, greater)
        mode = "all order ideals"
    else:
        ideals = [frozenset(labels[:j]) for j in range(len(labels) + 1)]
        mode = "maximal chain"
    gens = [alg.elem(g) for _, g in alg.generators()]

    def support(y):
        return {k[0] for k in datum.coords(y)}

    # labels reached from each layer by generators and by the involution
    reach = {lam: set() for lam in labels}
    for key, c in datum.elems.items():
        lam = key[0]
        reach[lam] |= support(c.involute())
        for g in gens:
            reach[lam] |= support(g * c) | support(c * g)
    for G in ideals:
        for lam in G:
            bad = reach[lam] - G
            if bad:
                return {"status": "fail", "mode": mode,
                        "reason": "A_Gamma is not an i-invariant two-sided ideal",
                        "witness": [repr(sorted(G, key=repr)), repr(lam), repr(sorted(bad, key=repr))]}
    if frozenset() not in ideals:
        return {"status": "fail", "reason": "empty ideal missing"}
    for lam in labels:
        above = frozenset(m for m in labels if greater(m, lam))
        ge = {m: frozenset(x for x in labels if x == m or greater(x, m)) for m in labels}
        union = frozenset().union(*[ge[m] for m in above]) if above else frozenset()
        if union != above:
            return {"status": "fail", "reason": "A_{>lam} is not the span of the A_{>=mu}",
                    "witness": repr(lam)}
    if frozenset().union(*(frozenset(x for x in labels if x == m or greater(x, m)) for m in labels)) != frozenset(labels):
        return {"status": "fail", "reason": "the A_{>=mu} do not span A"}
    # layers: bimodule structure, involution and identification with Delta
    pairs = 0
    for G in ideals:
        for lam in labels:
            if lam in G:
                continue
            G2 = G | {lam}
            if G2 not in ideals:
                continue
            pairs += 1
            err = _check_layer(datum, lam, G, gens)
            if err:
                return {"status": "fail", "mode": mode, "reason": err,
                        "witness": [repr(sorted(G, key=repr)), repr(lam)]}
    for lam in labels:
        err = _check_layer_iso(datum, lam)
        if err:
            return {"status": "fail", "reason": err, "witness": repr(lam)}
    return {"status": "pass", "mode": mode, "ideals": len(ideals), "layers": pairs}


def _check_layer(datum: CellDatum, lam, G, gens) -> Optional[str]:
    """Layer Gamma + lam over Gamma: left action independent of the column,
    right action independent of the row and equal to the involuted left
    action, and alpha commuting with the involution."""
    M = datum.modules[lam]
    G2 = G | {lam}
    for g in gens:
        gi = g.involute()
        ref_left = datum.left_coefficients(g, lam, 0)
        ref_right = datum.left_coefficients(gi, lam, 0)
        for s in range(M.rank):
            for t in range(M.rank):
                c = datum.elems[(lam, s, t)]
                for side, y in (("left", g * c), ("right", c * g)):
                    coeffs = {}
                    for (mu, s2, t2), v in datum.coords(y).items():
                        if mu not in G2:
                            return f"{side} product leaves the ideal"
                        if mu != lam:
                            continue
                        if side == "left":
                            if t2 != t:
                                return "left action mixes columns"
                            coeffs[(s2, s)] = v
                        else:
                            if s2 != s:
                                return "right action mixes rows"
                            coeffs[(t2, t)] = v
                    want = {k: v for k, v in (ref_left if side == "left" else ref_right).items()
                            if k[1] == (s if side == "left" else t)}
                    if coeffs != want:
                        return f"{side} action is not the module action"
    for s in range(M.rank):
        for t in range(M.rank):
            y = datum.elems[(lam, s, t)].involute() - datum.elems[(lam, t, s)]
            for (mu, _, _), v in datum.coords(y).items():
                if mu not in G:
                    return "alpha does not commute with the involution"
    return None


def _check_layer_iso(datum: CellDatum, lam) -> Optional[str]:
    """The layer module and the dangle module have equal characters on
    every basis diagram; over F (semisimple) this identifies them."""
    M = datum.modules[lam]
    alg = datum.alg
    for x in alg.basis():
        a = alg.elem(x)
        t1 = mat_trace(datum.layer_matrix(a, lam))
        t2 = mat_trace(M.matrix(a))
        if t1 != t2:
            return f"layer and cell module characters differ on {x.text()}"
    return None


# ---------------------------------------------------------------------------
# restriction, induction, globalization

def hom_space(src: Sequence[List[List[RingElem]]], tgt: Sequence[List[List[RingElem]]],
              dsrc: int, dtgt: int, spec=DELTA_RING) -> List[List[List[RingElem]]]:
    """Basis over F of {T : T S_g = R_g T for all g}, T of shape dtgt x dsrc."""
    cols = []
    for i in range(dtgt):
        for j in range(dsrc):
            col = {}
            for g, (S, Rm) in enumerate(zip(src, tgt)):
                for q in range(dsrc):
                    v = S[j][q]
                    if v.terms:
                        key = (g, i, q)
                        col[key] = col[key] + v if key in col else v
                for p in range(dtgt):
                    v = Rm[p][i]
                    if v.terms:
                        key = (g, p, j)
                        col[key] = col[key] - v if key in col else -v
            cols.append({k: v for k, v in col.items() if v.terms})
    zero = RingElem(spec)
    out = []
    for vec in nullspace(cols, spec):
        T = [[zero] * dsrc for _ in range(dtgt)]
        for u, v in vec.items():
            T[u // dsrc][u % dsrc] = v
        out.append(T)
    return out


def restricted_matrices(M: CellModule) -> List[List[List[RingElem]]]:
    tower, level = M.tower, M.level
    prev = tower.algebra(level - 1)
    mats = []
    for _, g in prev.generators():
        mats.append(M.matrix(tower.include(prev.elem(g), level - 1)))
    return mats


def restriction_filtration(M: CellModule) -> dict:
    """Flag 0 = M_0 < M_1 < ... < M_r = Res M of A_{level-1}-submodules with
    M_j / M_{j-1} a cell module; returns the subquotient labels in order."""
    tower, level = M.tower, M.level
    if level < 1:
        raise CellError("no restriction below level 0")
    spec = M.alg.ring
    tgt = restricted_matrices(M)
    ech = Echelon(spec)
    labels, dims = [], []
    for mu in tower.linear_order(level - 1):
        N = CellModule(tower, level - 1, mu)
        src = [N.matrix(g) for _, g in N.alg.generators()]
        for T in hom_space(src, tgt, N.rank, M.rank, spec):
            before = ech.rank
            for j in range(N.rank):
                ech.add({i: T[i][j] for i in range(M.rank) if T[i][j].terms})
            gained = ech.rank - before
            if gained == 0:
                continue
            if gained != N.rank:
                raise CellError("homomorphic image is not a copy of the cell module",
                                (mu, gained, N.rank))
            labels.append(mu)
            dims.append(ech.rank)
    if ech.rank != M.rank:
        raise CellError("cell submodules do not fill the restriction", (ech.rank, M.rank))
    return {"labels": labels, "flag_ranks": dims}


def tensor_quotient_dim(left_basis: Sequence, right_mult, right_dim: int, right_act,
                        ngens: int, spec=DELTA_RING) -> int:
    """dim over F of L (x)_B N, with L spanned by left_basis (right B-module
    via right_mult(l, g) -> {l': coef}) and N of dimension right_dim (left
    B-module via right_act(g) -> matrix); g runs over B's generators."""
    index = {l: i for i, l in enumerate(left_basis)}
    ech = Echelon(spec)
    for g in range(ngens):
        A = right_act(g)
        for l in left_basis:
            lg = right_mult(l, g)
            li = index[l]
            for j in range(right_dim):
                row: Dict[tuple, RingElem] = {}
                for l2, c in lg.items():
                    key = (index[l2], j)
                    row[key] = row[key] + c if key in row else c
                for i in range(right_dim):
                    v = A[i][j]
                    if v.terms:
                        key = (li, i)
                        row[key] = row[key] - v if key in row else -v
                row = {k: v for k, v in row.items() if v.terms}
                if row:
                    ech.add(row)
    return len(left_basis) * right_dim - ech.rank


def induced_dim(M: CellModule) -> int:
    """dim over F of A_{level+1} (x)_{A_level} M."""
    tower, level = M.tower, M.level
    big = tower.algebra(level + 1)
    gens = [tower.include(M.alg.elem(g), level) for _, g in M.alg.generators()]
    mats = [M.matrix(g) for _, g in M.alg.generators()]

    def right_mult(l, g):
        c, z = _single(big.elem(l) * gens[g])
        return {z: c} if z is not None else {}

    return tensor_quotient_dim(big.basis(), right_mult, M.rank, lambda g: mats[g],
                               len(gens), big.ring)


def _single(a: AlgElem):
    if not a.terms:
        return None, None
    if len(a.terms) != 1:
        raise CellError("expected a single diagram")
    (z, c), = a.terms.items()
    return c, z


def left_ideal_diagrams(tower: TowerSpec, n: int) -> list:
    """Distinct diagrams spanning A_n e_n inside A_{n+1}."""
    e = tower.idempotent(n)
    out = {}
    for x in tower.algebra(n).basis():
        y = tower.include(tower.algebra(n).elem(x), n) * e
        for z in y.terms:
            out[z] = True
    return sorted(out, key=lambda z: z.sort_key())


def globalization_dim(tower: TowerSpec, level: int, label) -> int:
    """dim over F of A_{level-1} e_{level-1} (x)_{A_{level-2}} Delta^(label, level-2)."""
    n = level - 1
    if n < 1:
        raise CellError("globalization needs level >= 2")
    N = CellModule(tower, n - 1, label)
    small = tower.algebra(n - 1)
    big = tower.algebra(n + 1)
    L = left_ideal_diagrams(tower, n)
    gens = [tower.include_to(small.elem(g), n - 1, n + 1) for _, g in small.generators()]
    mats = [N.matrix(g) for _, g in small.generators()]

    def right_mult(l, g):
        c, z = _single(big.elem(l) * gens[g])
        return {z: c} if z is not None else {}

    return tensor_quotient_dim(L, right_mult, N.rank, lambda g: mats[g], len(gens), big.ring)
