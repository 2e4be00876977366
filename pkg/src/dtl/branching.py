"""Leveled branching diagrams, reflection, and path enumeration.

Labels are hashable: Young diagrams are tuples of row lengths, walled
labels are pairs of Young diagrams, TL labels are integers (the base chain
level) and contour labels are ``(level, characters)`` pairs.
"""
from __future__ import annotations

import json
from functools import lru_cache
from itertools import product
from typing import Hashable, List, Optional, Sequence, Tuple

from .symgroup import add_box, label_key, partitions


class BranchingError(ValueError):
    pass


class BranchingDiagram:
    """levels[j] is a list of labels; edges[j] lists (lo, hi) index pairs
    joining levels j and j+1.  ``offset`` shifts row numbers to tower
    levels (nonzero only for the augmented walled diagram)."""

    def __init__(self, levels: Sequence[Sequence[Hashable]],
                 edges: Sequence[Sequence[Tuple[int, int]]], offset: int = 0):
        self.levels = [list(l) for l in levels]
        self.edges = [sorted(set(map(tuple, e))) for e in edges]
        self.offset = offset
        self._pos = [{lab: i for i, lab in enumerate(l)} for l in self.levels]
        if len(self.edges) != max(0, len(self.levels) - 1):
            raise BranchingError("need one edge list per pair of adjacent levels")
        self._down = [[[] for _ in l] for l in self.levels]
        self._up = [[[] for _ in l] for l in self.levels]
        for j, es in enumerate(self.edges):
            for lo, hi in es:
                self._up[j][lo].append(hi)
                self._down[j + 1][hi].append(lo)
        self._counts: Optional[List[List[int]]] = None

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def index(self, level: int, label) -> int:
        try:
            return self._pos[level][label]
        except (KeyError, IndexError):
            raise BranchingError(f"no vertex {label!r} on level {level}") from None

    def has_vertex(self, level: int, label) -> bool:
        return 0 <= level < len(self.levels) and label in self._pos[level]

    def down(self, level: int, label) -> List:
        i = self.index(level, label)
        return [self.levels[level - 1][k] for k in self._down[level][i]]

    def up(self, level: int, label) -> List:
        i = self.index(level, label)
        return [self.levels[level + 1][k] for k in self._up[level][i]]

    def adjacent(self, level: int, a, b) -> bool:
        return b in self.up(level, a)

    def validate(self, singleton_root: bool = True):
        if singleton_root and len(self.levels[0]) != 1:
            raise BranchingError("level 0 must be a singleton")
        for j in range(1, len(self.levels)):
            for i, lab in enumerate(self.levels[j]):
                if not self._down[j][i]:
                    raise BranchingError(f"vertex {lab!r} on level {j} has no lower neighbour")

    # paths -------------------------------------------------------------
    def _path_counts(self) -> List[List[int]]:
        if self._counts is None:
            counts = [[1] * len(self.levels[0])]
            for j in range(1, len(self.levels)):
                prev = counts[-1]
                counts.append([sum(prev[k] for k in self._down[j][i])
                               for i in range(len(self.levels[j]))])
            self._counts = counts
        return self._counts

    def count_paths(self, level: int, label) -> int:
        return self._path_counts()[level][self.index(level, label)]

    def enum_paths(self, level: int, label) -> List[Tuple]:
        """All paths from level 0 to the vertex, as label tuples, ordered
        lexicographically by the position of labels within their levels."""
        target = self.index(level, label)
        out: List[Tuple] = []

        def rec(j, i, suffix):
            if j == 0:
                out.append(tuple([self.levels[0][i]] + suffix))
                return
            for k in self._down[j][i]:
                rec(j - 1, k, [self.levels[j][i]] + suffix)

        rec(level, target, [])
        pos = self._pos
        out.sort(key=lambda p: [pos[j][x] for j, x in enumerate(p)])
        return out

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {"levels": [[label_to_json(x) for x in l] for l in self.levels],
                "edges": [[list(e) for e in es] for es in self.edges],
                "offset": self.offset}

    @classmethod
    def from_json(cls, data: dict) -> "BranchingDiagram":
        return cls([[label_from_json(x) for x in l] for l in data["levels"]],
                   [[tuple(e) for e in es] for es in data["edges"]],
                   data.get("offset", 0))

    def __eq__(self, other):
        return (isinstance(other, BranchingDiagram) and self.levels == other.levels
                and self.edges == other.edges and self.offset == other.offset)


def label_to_json(x):
    if isinstance(x, tuple):
        return [label_to_json(y) for y in x]
    return x


def label_from_json(x):
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


def label_text(x) -> str:
    if isinstance(x, int):
        return str(x)
    if x == ():
        return "∅"
    if all(isinstance(y, int) for y in x):
        return "(" + ",".join(map(str, x)) + ")"
    return "(" + ",".join(label_text(y) for y in x) + ")"


def parse_vertex(text: str) -> Tuple[object, int]:
    """Parse ``label@level``; labels use parentheses or brackets, ``∅`` or
    ``()`` for the empty diagram, and bare integers for TL."""
    if "@" not in text:
        raise BranchingError("vertex must look like <label>@<level>")
    lab, _, lev = text.rpartition("@")
    try:
        level = int(lev)
    except ValueError:
        raise BranchingError(f"bad level {lev!r}") from None
    s = lab.strip().replace("∅", "()").replace("(", "[").replace(")", "]")
    try:
        val = json.loads(s)
    except json.JSONDecodeError as exc:
        raise BranchingError(f"bad label {lab!r} at position {exc.pos}") from None
    return label_from_json(val), level


# ---------------------------------------------------------------------------
# construction

def reflect(base: BranchingDiagram, n_levels: int) -> BranchingDiagram:
    """Reflected diagram: level k holds the base labels of levels
    k, k-2, ... (lowest base level first); (x,k) and (y,k+1) are joined iff
    their base levels differ by one and x, y are adjacent in the base."""
    if base.depth < n_levels:
        raise BranchingError("base diagram too shallow")
    levels, origin = [], []
    for k in range(n_levels + 1):
        labs, orig = [], []
        for i in range(k % 2, k + 1, 2):
            for x in base.levels[i]:
                labs.append(x)
                orig.append(i)
        levels.append(labs)
        origin.append(orig)
    edges = []
    for k in range(n_levels):
        es = []
        for a, (x, i) in enumerate(zip(levels[k], origin[k])):
            for b, (y, j) in enumerate(zip(levels[k + 1], origin[k + 1])):
                if j == i + 1 and y in base.up(i, x):
                    es.append((a, b))
                elif j == i - 1 and x in base.up(j, y):
                    es.append((a, b))
        edges.append(es)
    return BranchingDiagram(levels, edges)


def _from_rule(levels, rule) -> BranchingDiagram:
    edges = []
    for j in range(len(levels) - 1):
        edges.append([(a, b) for a, x in enumerate(levels[j])
                      for b, y in enumerate(levels[j + 1]) if rule(j, x, y)])
    return BranchingDiagram(levels, edges)


def young_lattice(n_levels: int) -> BranchingDiagram:
    levels = [sorted(partitions(j), key=label_key) for j in range(n_levels + 1)]
    return _from_rule(levels, lambda j, x, y: y in add_box(x))


def chain(n_levels: int) -> BranchingDiagram:
    return _from_rule([[j] for j in range(n_levels + 1)], lambda j, x, y: True)


def _upto(n: int) -> List[tuple]:
    return [lam for j in range(n + 1) for lam in sorted(partitions(j), key=label_key)]


def partition_branching(n_levels: int) -> BranchingDiagram:
    levels = [_upto(k // 2) for k in range(n_levels + 1)]

    def rule(j, x, y):
        if j % 2 == 0:      # level 2n -> 2n+1: y equals x or loses a box
            return x == y or x in add_box(y)
        return x == y or y in add_box(x)

    return _from_rule(levels, rule)


def walled_base(t: int, n_levels: int) -> BranchingDiagram:
    """Branching diagram of the quotients S_k x S_{k+t} (even levels) and
    S_k x S_{k+t+1} (odd levels)."""
    levels = []
    for i in range(n_levels + 1):
        a, b = i // 2, (i + 1) // 2 + t
        levels.append([(x, y) for x in sorted(partitions(a), key=label_key)
                       for y in sorted(partitions(b), key=label_key)])

    def rule(j, x, y):
        if j % 2 == 0:
            return x[0] == y[0] and y[1] in add_box(x[1])
        return x[1] == y[1] and y[0] in add_box(x[0])

    return _from_rule(levels, rule)


def walled_branching(t: int, n_levels: int) -> BranchingDiagram:
    """Reflected walled diagram augmented by Young's lattice below level 0;
    row j corresponds to tower level j - t, i.e. to rank r + s = j."""
    refl = reflect(walled_base(t, n_levels), n_levels)
    aug = [[((), y) for y in sorted(partitions(j), key=label_key)] for j in range(t)]
    levels = aug + refl.levels
    edges = []
    for j in range(t):
        lo, hi = levels[j], levels[j + 1]
        edges.append([(a, b) for a, x in enumerate(lo) for b, y in enumerate(hi)
                      if y[1] in add_box(x[1]) and y[0] == ()])
    edges += refl.edges
    return BranchingDiagram(levels, edges, offset=t)


def contour_base(m: int, d: int, n_levels: int) -> BranchingDiagram:
    """Base diagram for the quotients Z[Z_m]^{(x) min(n,d)} over characters;
    only m <= 2 is split over the rationals."""
    if m > 2:
        raise BranchingError("contour branching needs m <= 2 to be split over Q")
    levels = []
    for i in range(n_levels + 1):
        w = min(i, d)
        levels.append([(i, c) for c in product(range(m), repeat=w)])

    def rule(j, x, y):
        if j < d:
            return y[1][:-1] == x[1]
        return y[1] == x[1]

    return _from_rule(levels, rule)


@lru_cache(maxsize=None)
def family_branching(family: str, params: tuple, n_levels: int) -> BranchingDiagram:
    """Generic branching diagram of a tower up to tower level n_levels.

    params: () for brauer/tl/partition, (t,) for walled, (m, d) for contour.
    """
    if family == "brauer":
        return reflect(young_lattice(n_levels), n_levels)
    if family == "tl":
        return reflect(chain(n_levels), n_levels)
    if family == "partition":
        return partition_branching(n_levels)
    if family == "walled":
        return walled_branching(params[0], n_levels)
    if family == "contour":
        m, d = params
        return reflect(contour_base(m, d, n_levels), n_levels)
    raise BranchingError(f"unknown family {family!r}")


def tower_row(family: str, params: tuple, level: int) -> int:
    if family == "walled":
        return level + params[0]
    return level


def count_paths(bd: BranchingDiagram, vertex) -> int:
    label, level = vertex
    return bd.count_paths(level, label)


def enum_paths(bd: BranchingDiagram, vertex) -> List[Tuple]:
    label, level = vertex
    return bd.enum_paths(level, label)
