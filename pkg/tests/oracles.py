"""Brute-force reference computations, written independently of the package.

Everything here works on plain tuples and ints; the tests compare package
output against these and against values frozen from them.
"""
from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial


def laplace_det(M):
    """Cofactor expansion along the first row; entries need +, -, *."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * laplace_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def fixed_point_free_involutions(points):
    """Perfect matchings of ``points`` by filtering all permutations."""
    pts = list(points)
    seen = set()
    for w in permutations(pts):
        m = dict(zip(pts, w))
        if all(m[p] != p and m[m[p]] == p for p in pts):
            key = frozenset(frozenset((p, m[p])) for p in pts)
            seen.add(key)
    return seen


def matchings(points):
    pts = list(points)
    if not pts:
        return [frozenset()]
    a = pts[0]
    out = []
    for i in range(1, len(pts)):
        rest = pts[1:i] + pts[i + 1:]
        for m in matchings(rest):
            out.append(m | {frozenset((a, pts[i]))})
    return out


def brauer_vertices(n):
    return [("T", i) for i in range(1, n + 1)] + [("B", i) for i in range(1, n + 1)]


def cyclic_position(v, n):
    side, i = v
    return i - 1 if side == "T" else 2 * n - i


def is_noncrossing(m, n):
    chords = [sorted(cyclic_position(v, n) for v in pair) for pair in m]
    for (a, b), (c, d) in product(chords, chords):
        if a < c < b < d:
            return False
    return True


def is_walled(m, r):
    for pair in m:
        (s1, i1), (s2, i2) = sorted(pair)
        left1, left2 = i1 <= r, i2 <= r
        if s1 != s2 and left1 != left2:
            return False      # vertical strand crossing the wall
        if s1 == s2 and left1 == left2:
            return False      # horizontal strand on one side
    return True


def brauer_count(n):
    return len(matchings(brauer_vertices(n)))


def tl_count(n):
    return sum(1 for m in matchings(brauer_vertices(n)) if is_noncrossing(m, n))


def walled_count(r, s):
    return sum(1 for m in matchings(brauer_vertices(r + s)) if is_walled(m, r))


def walled_formula(r, s):
    return sum((comb(r, k) * comb(s, k) * factorial(k)) ** 2 * factorial(r - k) * factorial(s - k)
               for k in range(min(r, s) + 1))


def set_partitions_rgs(n):
    """Set partitions of range(n) via restricted growth strings."""
    if n == 0:
        yield ()
        return

    def rec(prefix, mx):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(mx + 2):
            yield from rec(prefix + [v], max(mx, v))

    yield from rec([0], 0)


def partition_level_count(k):
    """dim A_k: set partitions of 2n points, with T_n ~ B_n for odd k."""
    n = (k + 1) // 2
    total = 0
    for rgs in set_partitions_rgs(2 * n):
        if k % 2 and n and rgs[n - 1] != rgs[2 * n - 1]:
            continue
        total += 1
    return total


def nesting_depths(m, n):
    """Depth of each chord: 1 + number of chords enclosing it when the
    boundary is cut open at the west basepoint."""
    chords = {pair: tuple(sorted(cyclic_position(v, n) for v in pair)) for pair in m}
    out = {}
    for p, (a, b) in chords.items():
        out[p] = 1 + sum(1 for q, (c, d) in chords.items() if q != p and c < a and b < d)
    return out


def contour_count(n, m, d):
    total = 0
    for x in matchings(brauer_vertices(n)):
        if not is_noncrossing(x, n):
            continue
        shallow = sum(1 for v in nesting_depths(x, n).values() if v <= d)
        total += m ** shallow
    return total


def standard_tableaux_count(shape):
    """Count fillings by brute force over placement orders."""
    n = sum(shape)
    count = 0

    def rec(filled, k):
        nonlocal count
        if k == n:
            count += 1
            return
        for r in range(len(shape)):
            c = filled[r]
            if c < shape[r] and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                rec(filled, k + 1)
                filled[r] -= 1

    rec([0] * len(shape), 0)
    return count


def partitions_of(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - k, k):
            out.append((k,) + rest)
    return out


def polytabloid_gram(shape):
    """Gram matrix of the standard polytabloids of ``shape`` in the
    orthonormal tabloid basis, built from column-group signed sums."""
    n = sum(shape)
    rows = []
    start = 0
    for r in shape:
        rows.append(list(range(start, start + r)))
        start += r
    cols = [[rows[i][j] for i in range(len(shape)) if j < shape[i]] for j in range(shape[0])]

    def tabloid(fill):
        return tuple(frozenset(fill[c] for c in row) for row in rows)

    def sign(w):
        w = list(w)
        s = 1
        for i in range(len(w)):
            while w[i] != i:
                j = w[i]
                w[i], w[j] = w[j], w[i]
                s = -s
        return s

    def standard(fill):
        return all(fill[a] < fill[b] for row in rows for a, b in zip(row, row[1:])) and \
            all(fill[a] < fill[b] for col in cols for a, b in zip(col, col[1:]))

    fills = [f for f in permutations(range(n)) if standard(f)]
    vecs = []
    for f in fills:
        v = {}
        for choice in product(*[list(permutations(range(len(c)))) for c in cols]):
            g = list(f)
            sg = 1
            for col, w in zip(cols, choice):
                vals = [f[c] for c in col]
                for c, k in zip(col, w):
                    g[c] = vals[k]
                sg *= sign(w)
            t = tabloid(g)
            v[t] = v.get(t, 0) + sg
        vecs.append(v)
    return [[sum(a.get(t, 0) * b.get(t, 0) for t in a) for b in vecs] for a in vecs]


def frac_det(M):
    return laplace_det([[Fraction(x) for x in row] for row in M])


def young_paths(level_sets, adjacent, target, level):
    """Count paths by explicit walking (no dynamic programming)."""
    def walk(path):
        if len(path) == level + 1:
            return 1 if path[-1] == target else 0
        j = len(path)
        return sum(walk(path + [y]) for y in level_sets[j] if adjacent(path[-1], y))
    return walk([level_sets[0][0]])
