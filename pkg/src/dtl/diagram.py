"""Diagram bases of the Brauer-type and partition algebras.

Vertices of a rank-n diagram are encoded as integers: top vertex T_i is
``i - 1`` and bottom vertex B_i is ``n + i - 1``.  Products follow the
convention that ``x * y`` stacks ``y`` on top of ``x``: the top row of ``x``
is glued to the bottom row of ``y``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

FAMILIES = ("brauer", "tl", "walled", "partition", "contour")


class DiagramError(ValueError):
    pass


def vertex_name(v: int, n: int) -> str:
    return f"T{v + 1}" if v < n else f"B{v - n + 1}"


def boundary_position(v: int, n: int) -> int:
    """Position in the cyclic order T1..Tn, Bn..B1 (west side between B1 and T1)."""
    return v if v < n else 3 * n - 1 - v


class Matching:
    """Perfect matching on the 2n vertices (Brauer, TL and walled diagrams)."""

    __slots__ = ("n", "partner", "_hash")

    def __init__(self, n: int, partner: Sequence[int]):
        self.n = n
        self.partner = tuple(partner)
        self._hash = hash(("M", self.partner))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Matching":
        p = [-1] * (2 * n)
        for a, b in pairs:
            if a == b or p[a] != -1 or p[b] != -1:
                raise DiagramError("pairs do not form a perfect matching")
            p[a], p[b] = b, a
        if -1 in p:
            raise DiagramError("some vertex is unmatched")
        return cls(n, p)

    @classmethod
    def identity(cls, n: int) -> "Matching":
        return cls(n, [i + n for i in range(n)] + list(range(n)))

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((a, b) for a, b in enumerate(self.partner) if a < b)

    def __eq__(self, other):
        return (isinstance(other, Matching) and type(other) is type(self)
                and self.partner == other.partner)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return self.pairs

    def through_count(self) -> int:
        n = self.n
        return sum(1 for a, b in self.pairs if a < n <= b)

    def is_planar(self) -> bool:
        n = self.n
        chords = [tuple(sorted((boundary_position(a, n), boundary_position(b, n))))
                  for a, b in self.pairs]
        for i, (a, b) in enumerate(chords):
            for c, d in chords[i + 1:]:
                if a < c < b < d or c < a < d < b:
                    return False
        return True

    def is_walled(self, r: int) -> bool:
        n = self.n
        for a, b in self.pairs:
            ca = a if a < n else a - n
            cb = b if b < n else b - n
            vertical = (a < n) != (b < n)
            same_side = (ca < r) == (cb < r)
            if vertical and not same_side:
                return False
            if not vertical and same_side:
                return False
        return True

    def involute(self) -> "Matching":
        n = self.n
        sw = lambda v: v + n if v < n else v - n
        return type(self)(n, [sw(self.partner[sw(v)]) for v in range(2 * n)])

    def text(self) -> str:
        n = self.n
        return "[" + ",".join(f"[{vertex_name(a, n)},{vertex_name(b, n)}]"
                              for a, b in self.pairs) + "]"

    def __repr__(self):
        return self.text()

    def permutation(self) -> Optional[Tuple[int, ...]]:
        """For a permutation diagram, the map w with B_i joined to T_{w(i)} (0-based)."""
        n = self.n
        if self.through_count() != n:
            return None
        return tuple(self.partner[n + i] for i in range(n))


def perm_diagram(w: Sequence[int]) -> Matching:
    """Diagram with bottom vertex i joined to top vertex w[i] (0-based)."""
    n = len(w)
    return Matching.from_pairs(n, [(w[i], n + i) for i in range(n)])


class LabeledMatching(Matching):
    """Planar matching with Z_m labels on strands (contour diagrams).

    ``labels[v]`` holds the label of the strand whose smaller endpoint is v;
    entries at larger endpoints are zero.
    """

    __slots__ = ("m", "labels")

    def __init__(self, n: int, partner: Sequence[int], m: int, labels: Sequence[int]):
        super().__init__(n, partner)
        self.m = m
        lab = [0] * (2 * n)
        for v, k in enumerate(labels):
            if k % m:
                lab[min(v, self.partner[v])] = k % m
        self.labels = tuple(lab)
        self._hash = hash(("L", self.partner, self.labels))

    def __eq__(self, other):
        return (isinstance(other, LabeledMatching) and self.partner == other.partner
                and self.labels == other.labels)

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.pairs, tuple(self.labels[a] for a, _ in self.pairs))

    def strand_label(self, v: int) -> int:
        return self.labels[min(v, self.partner[v])]

    def underlying(self) -> Matching:
        return Matching(self.n, self.partner)

    def involute(self) -> "LabeledMatching":
        n = self.n
        sw = lambda v: v + n if v < n else v - n
        partner = [sw(self.partner[sw(v)]) for v in range(2 * n)]
        labels = [0] * (2 * n)
        for a, b in self.pairs:
            k = self.labels[a]
            if k:
                labels[min(sw(a), sw(b))] = (-k) % self.m
        return LabeledMatching(n, partner, self.m, labels)

    def text(self) -> str:
        n = self.n
        return "[" + ",".join(
            f"[{vertex_name(a, n)},{vertex_name(b, n)}]:{self.labels[a]}"
            for a, b in self.pairs) + "]"


class SetPartition:
    """Set partition of the 2n vertices (partition algebra diagrams)."""

    __slots__ = ("n", "blocks", "_hash")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        self.n = n
        bl = sorted(tuple(sorted(b)) for b in blocks if b)
        self.blocks = tuple(bl)
        self._hash = hash(("P", n, self.blocks))

    @classmethod
    def identity(cls, n: int) -> "SetPartition":
        return cls(n, [(i, i + n) for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return self.blocks

    def validate(self):
        seen = sorted(v for b in self.blocks for v in b)
        if seen != list(range(2 * self.n)):
            raise DiagramError("blocks do not partition the vertex set")

    def block_index(self) -> List[int]:
        idx = [0] * (2 * self.n)
        for i, b in enumerate(self.blocks):
            for v in b:
                idx[v] = i
        return idx

    def through_count(self) -> int:
        n = self.n
        return sum(1 for b in self.blocks if b[0] < n <= b[-1])

    def involute(self) -> "SetPartition":
        n = self.n
        sw = lambda v: v + n if v < n else v - n
        return SetPartition(n, [[sw(v) for v in b] for b in self.blocks])

    def in_half_family(self) -> bool:
        """Membership in X'_n: T_n and B_n lie in a common block."""
        n = self.n
        if n == 0:
            return True
        idx = self.block_index()
        return idx[n - 1] == idx[2 * n - 1]

    def text(self) -> str:
        n = self.n
        return "{" + ",".join("{" + ",".join(vertex_name(v, n) for v in b) + "}"
                              for b in self.blocks) + "}"

    def __repr__(self):
        return self.text()


Diagram = object  # Matching | LabeledMatching | SetPartition


# ---------------------------------------------------------------------------
# composition

@lru_cache(maxsize=1 << 18)
def _compose_matching(xp: Tuple[int, ...], yp: Tuple[int, ...], n: int):
    res = [-1] * (2 * n)
    seen = [False] * n
    for start in range(2 * n):
        if res[start] != -1:
            continue
        # start at a result vertex: top -> in y at top, bottom -> in x at bottom
        if start < n:
            side, v = 1, start
        else:
            side, v = 0, start
        while True:
            if side == 1:
                w = yp[v]
                if w < n:
                    end = w
                    break
                m = w - n
                seen[m] = True
                side, v = 0, m
            else:
                w = xp[v]
                if w >= n:
                    end = w
                    break
                seen[w] = True
                side, v = 1, w + n
        res[start] = end
        res[end] = start
    loops = 0
    for m in range(n):
        if seen[m]:
            continue
        loops += 1
        v = m
        while True:
            seen[v] = True
            w = yp[v + n] - n          # y: bottom v -> bottom w
            seen[w] = True
            v = xp[w]                  # x: top w -> top v
            if v == m:
                break
    return tuple(res), loops


def _compose_labeled(x: LabeledMatching, y: LabeledMatching):
    n, m = x.n, x.m
    xp, yp = x.partner, y.partner
    res = [-1] * (2 * n)
    lab = [0] * (2 * n)
    seen = [False] * n
    for start in range(2 * n):
        if res[start] != -1:
            continue
        total = 0
        side, v = (1, start) if start < n else (0, start)
        while True:
            if side == 1:
                w = yp[v]
                total += y.labels[min(v, w)]
                if w < n:
                    end = w
                    break
                seen[w - n] = True
                side, v = 0, w - n
            else:
                w = xp[v]
                total += x.labels[min(v, w)]
                if w >= n:
                    end = w
                    break
                seen[w] = True
                side, v = 1, w + n
        res[start], res[end] = end, start
        lab[min(start, end)] = total % m
    loops = []
    for s in range(n):
        if seen[s]:
            continue
        total = 0
        v = s
        while True:
            seen[v] = True
            w = yp[v + n]
            total += y.labels[min(v + n, w)]
            w -= n
            seen[w] = True
            v = xp[w]
            total += x.labels[min(w, v)]
            if v == s:
                break
        loops.append(total % m)
    return tuple(sorted(loops)), LabeledMatching(n, res, m, lab)


class _UF:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@lru_cache(maxsize=1 << 18)
def _compose_partition(xb: Tuple[Tuple[int, ...], ...], yb: Tuple[Tuple[int, ...], ...], n: int):
    # nodes: result top 0..n-1, result bottom n..2n-1, middle 2n..3n-1
    uf = _UF(3 * n)
    for b in xb:       # x: top i -> middle, bottom i -> result bottom
        nodes = [2 * n + v if v < n else v for v in b]
        for u in nodes[1:]:
            uf.union(nodes[0], u)
    for b in yb:       # y: top i -> result top, bottom i -> middle
        nodes = [v if v < n else n + v for v in b]
        for u in nodes[1:]:
            uf.union(nodes[0], u)
    classes: Dict[int, List[int]] = {}
    for v in range(3 * n):
        classes.setdefault(uf.find(v), []).append(v)
    r = 0
    blocks = []
    for members in classes.values():
        outer = [v for v in members if v < 2 * n]
        if outer:
            blocks.append(outer)
        else:
            r += 1
    return r, SetPartition(n, blocks)


def compose(x, y):
    """Stack y over x.  Returns (loop_data, diagram).

    loop_data is the number of closed loops (matchings), the number of
    absorbed middle classes (partitions), or the sorted tuple of loop labels
    (labeled matchings).
    """
    if x.n != y.n or type(x) is not type(y):
        raise DiagramError("family or rank mismatch")
    if isinstance(x, LabeledMatching):
        if x.m != y.m:
            raise DiagramError("label modulus mismatch")
        return _compose_labeled(x, y)
    if isinstance(x, Matching):
        p, loops = _compose_matching(x.partner, y.partner, x.n)
        return loops, Matching(x.n, p)
    if isinstance(x, SetPartition):
        return _compose_partition(x.blocks, y.blocks, x.n)
    raise DiagramError(f"unknown diagram type {type(x)}")


def involute(x):
    return x.involute()


def through_count(x) -> int:
    return x.through_count()


# ---------------------------------------------------------------------------
# depth of strands in planar diagrams

def strand_depths(x: Matching) -> Dict[Tuple[int, int], int]:
    """Depth of every strand: 1 plus the number of strands separating it from
    the west edge of the rectangle."""
    n = x.n
    chords = {}
    for a, b in x.pairs:
        pa, pb = boundary_position(a, n), boundary_position(b, n)
        chords[(a, b)] = (min(pa, pb), max(pa, pb))
    out = {}
    for s, (c, d) in chords.items():
        out[s] = 1 + sum(1 for t, (a, b) in chords.items() if t != s and a < c and d < b)
    return out


def strand_depth(x: Matching, strand) -> int:
    """Depth of the strand given as a vertex or as a pair of vertices."""
    if isinstance(strand, int):
        strand = (strand, x.partner[strand])
    a, b = sorted(strand)
    if x.partner[a] != b:
        raise DiagramError("not a strand of the diagram")
    return strand_depths(x)[(a, b)]


def depth(x: LabeledMatching) -> int:
    """Maximum depth of a strand carrying a nonzero label (0 if none)."""
    ds = strand_depths(x)
    return max((ds[(a, b)] for a, b in x.pairs if x.labels[a]), default=0)


# ---------------------------------------------------------------------------
# enumeration

def _perfect_matchings(verts: List[int]):
    if not verts:
        yield []
        return
    a = verts[0]
    for i in range(1, len(verts)):
        rest = verts[1:i] + verts[i + 1:]
        for m in _perfect_matchings(rest):
            yield [(a, verts[i])] + m


def _noncrossing(positions: List[int]):
    """Noncrossing perfect matchings of consecutive boundary positions."""
    if not positions:
        yield []
        return
    a = positions[0]
    for i in range(1, len(positions), 2):
        inside = positions[1:i]
        outside = positions[i + 1:]
        for m1 in _noncrossing(inside):
            for m2 in _noncrossing(outside):
                yield [(a, positions[i])] + m1 + m2


def enum_brauer(n: int) -> List[Matching]:
    out = [Matching.from_pairs(n, m) for m in _perfect_matchings(list(range(2 * n)))]
    out.sort(key=Matching.sort_key)
    return out


def enum_tl(n: int) -> List[Matching]:
    inv = {}
    for v in range(2 * n):
        inv[boundary_position(v, n)] = v
    out = []
    for m in _noncrossing(list(range(2 * n))):
        out.append(Matching.from_pairs(n, [(inv[a], inv[b]) for a, b in m]))
    out.sort(key=Matching.sort_key)
    return out


def enum_walled(r: int, s: int) -> List[Matching]:
    """Walled diagrams of B_{r,s}, generated through the bijection with
    permutations of r+s points (flip the right-hand columns)."""
    n = r + s
    out = set()
    for w in permutations(range(n)):
        pairs = []
        # permutation diagram joining bottom i to top w[i]; then swap the
        # top and bottom rows in the right-hand columns
        for i in range(n):
            a, b = w[i], n + i
            a = a + n if a >= r else a
            b = b - n if (b - n) >= r else b
            pairs.append((min(a, b), max(a, b)))
        out.add(Matching.from_pairs(n, pairs))
    return sorted(out, key=Matching.sort_key)


def _set_partitions(items: List[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def enum_partition(n: int, half: bool = False) -> List[SetPartition]:
    """All set partitions of the 2n vertices; with half=True only X'_n."""
    if half and n == 0:
        raise DiagramError("X'_0 is not defined")
    out = []
    if half:
        # treat T_n and B_n as one item
        items = [v for v in range(2 * n) if v != 2 * n - 1]
        for p in _set_partitions(items):
            blocks = [list(b) + ([2 * n - 1] if n - 1 in b else []) for b in p]
            out.append(SetPartition(n, blocks))
    else:
        for p in _set_partitions(list(range(2 * n))):
            out.append(SetPartition(n, p))
    out.sort(key=SetPartition.sort_key)
    return out


def enum_contour(n: int, m: int, d: int) -> List[LabeledMatching]:
    out = []
    for x in enum_tl(n):
        ds = strand_depths(x)
        slots = [a for a, b in x.pairs if ds[(a, b)] <= d]
        for labs in _label_choices(len(slots), m):
            lab = [0] * (2 * n)
            for a, k in zip(slots, labs):
                lab[a] = k
            out.append(LabeledMatching(n, x.partner, m, lab))
    out.sort(key=LabeledMatching.sort_key)
    return out


def _label_choices(k: int, m: int):
    if k == 0:
        yield ()
        return
    for rest in _label_choices(k - 1, m):
        for c in range(m):
            yield rest + (c,)


def enumerate_family(family: str, **params) -> list:
    if family == "brauer":
        return enum_brauer(params["n"])
    if family == "tl":
        return enum_tl(params["n"])
    if family == "walled":
        return enum_walled(params["r"], params["s"])
    if family == "partition":
        return enum_partition(params["n"], params.get("half", False))
    if family == "contour":
        return enum_contour(params["n"], params["m"], params["d"])
    raise DiagramError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# text parsing

class DiagramParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_VERTEX = re.compile(r"\s*([TB])(\d+)\s*")


def _parse_vertex(s: str, pos: int, n: Optional[int]):
    m = _VERTEX.match(s, pos)
    if not m:
        raise DiagramParseError("expected a vertex like T1 or B2", pos)
    return (m.group(1), int(m.group(2)), m.start(1)), m.end()


def _expect(s: str, pos: int, ch: str) -> int:
    while pos < len(s) and s[pos].isspace():
        pos += 1
    if pos >= len(s) or s[pos] != ch:
        raise DiagramParseError(f"expected {ch!r}", pos)
    return pos + 1


def _peek(s: str, pos: int) -> Tuple[str, int]:
    while pos < len(s) and s[pos].isspace():
        pos += 1
    return (s[pos] if pos < len(s) else ""), pos


def _groups(s: str, open_: str, close: str, labeled: bool):
    pos = _expect(s, 0, open_)
    groups = []
    c, p = _peek(s, pos)
    if c == close:
        pos = p + 1
    else:
        while True:
            pos = _expect(s, pos, open_)
            verts = []
            while True:
                v, pos = _parse_vertex(s, pos, None)
                verts.append(v)
                c, p = _peek(s, pos)
                if c == ",":
                    pos = p + 1
                    continue
                pos = _expect(s, pos, close)
                break
            label = 0
            c, p = _peek(s, pos)
            if c == ":" and labeled:
                m = re.compile(r"\s*(-?\d+)").match(s, p + 1)
                if not m:
                    raise DiagramParseError("expected an integer label", p + 1)
                label = int(m.group(1))
                pos = m.end()
            groups.append((verts, label))
            c, p = _peek(s, pos)
            if c == ",":
                pos = p + 1
                continue
            pos = _expect(s, pos, close)
            break
    c, p = _peek(s, pos)
    if c:
        raise DiagramParseError("trailing characters", p)
    return groups


def _rank_of(groups, n: Optional[int]) -> int:
    top = max((i for g, _ in groups for _, i, _ in g), default=0)
    if n is None:
        n = top
    for g, _ in groups:
        for side, i, p in g:
            if i < 1 or i > n:
                raise DiagramParseError(f"vertex index {i} out of range 1..{n}", p)
    return n


def _vid(side: str, i: int, n: int) -> int:
    return i - 1 if side == "T" else n + i - 1


def parse_diagram(text: str, family: str, n: Optional[int] = None, m: int = 2):
    """Parse the canonical text form of a diagram of the given family."""
    s = text.strip()
    if family == "partition":
        groups = _groups(s, "{", "}", False)
        n = _rank_of(groups, n)
        blocks = [[_vid(side, i, n) for side, i, _ in g] for g, _ in groups]
        x = SetPartition(n, blocks)
        try:
            x.validate()
        except DiagramError as e:
            raise DiagramParseError(str(e), 0)
        return x
    labeled = family == "contour"
    groups = _groups(s, "[", "]", labeled)
    n = _rank_of(groups, n)
    pairs = []
    labels = [0] * (2 * n)
    for g, lab in groups:
        if len(g) != 2:
            raise DiagramParseError("a strand needs exactly two vertices", g[0][2])
        a, b = (_vid(side, i, n) for side, i, _ in g)
        pairs.append((a, b))
        labels[min(a, b)] = lab
    try:
        x = Matching.from_pairs(n, pairs)
    except DiagramError as e:
        raise DiagramParseError(str(e), 0)
    if labeled:
        return LabeledMatching(n, x.partner, m, labels)
    return x
