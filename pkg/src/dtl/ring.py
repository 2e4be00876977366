"""Exact arithmetic in integer Laurent polynomial rings.

The ground ring is Z[delta^{+-1}], optionally extended by further variables
``delta_1 .. delta_k`` (used by the contour algebras).  Elements are sparse
maps from exponent vectors to nonzero Python integers, stored in graded-lex
descending order so that equality and hashing are structural.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

Exp = Tuple[int, ...]


class SpecMismatch(ValueError):
    pass


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    variables: Tuple[str, ...] = ("delta",)

    def __post_init__(self):
        if "delta" not in self.variables:
            raise ValueError("ring must contain the variable 'delta'")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def zero_exp(self) -> Exp:
        return (0,) * len(self.variables)


DELTA_RING = RingSpec(("delta",))


def contour_ring(m: int) -> RingSpec:
    k = m // 2
    return RingSpec(("delta",) + tuple(f"delta_{j}" for j in range(1, k + 1)))


def _grlex_key(e: Exp):
    return (sum(e), e)


class RingElem:
    """Sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("spec", "terms", "_hash")

    def __init__(self, spec: RingSpec, terms=None):
        self.spec = spec
        if terms is None:
            self.terms: Tuple[Tuple[Exp, int], ...] = ()
        elif isinstance(terms, dict):
            self.terms = tuple(
                sorted(((e, c) for e, c in terms.items() if c),
                       key=lambda t: _grlex_key(t[0]), reverse=True))
        else:
            self.terms = tuple(terms)
        self._hash = None

    # constructors
    @classmethod
    def const(cls, spec: RingSpec, c: int) -> "RingElem":
        return cls(spec, ((spec.zero_exp(), int(c)),) if c else ())

    @classmethod
    def monomial(cls, spec: RingSpec, exp: Sequence[int], c: int = 1) -> "RingElem":
        exp = tuple(int(x) for x in exp)
        if len(exp) != spec.nvars:
            raise ShapeError("exponent vector has wrong length")
        return cls(spec, ((exp, int(c)),) if c else ())

    @classmethod
    def var(cls, spec: RingSpec, name: str = "delta", power: int = 1) -> "RingElem":
        e = [0] * spec.nvars
        e[spec.index(name)] = power
        return cls.monomial(spec, e)

    # basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """Units of a Laurent ring over Z are +-monomials."""
        return len(self.terms) == 1 and abs(self.terms[0][1]) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_value(self) -> int:
        for e, c in self.terms:
            if not any(e):
                return c
        return 0

    def leading(self) -> Tuple[Exp, int]:
        return self.terms[0]

    def degree(self, var: str = "delta") -> int:
        i = self.spec.index(var)
        return max(e[i] for e, _ in self.terms)

    def low_degree(self, var: str = "delta") -> int:
        i = self.spec.index(var)
        return min(e[i] for e, _ in self.terms)

    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for _, c in self.terms), 0)

    def coefficient(self, exp: Sequence[int]) -> int:
        exp = tuple(exp)
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    # arithmetic
    def _check(self, other: "RingElem"):
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec.variables} vs {other.spec.variables}")

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            self._check(other)
            return other
        if isinstance(other, int):
            return RingElem.const(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return RingElem(self.spec, d)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.spec, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return RingElem(self.spec)
        if len(a) == 1 and len(b) == 1:
            (ea, ca), (eb, cb) = a[0], b[0]
            return RingElem(self.spec, ((tuple(x + y for x, y in zip(ea, eb)), ca * cb),))
        if len(b) == 1:
            eb, cb = b[0]
            # multiplying by a monomial preserves the term order
            return RingElem(self.spec, tuple(
                (tuple(x + y for x, y in zip(e, eb)), c * cb) for e, c in a))
        if len(a) == 1:
            return other * self
        d: Dict[Exp, int] = {}
        for ea, ca in a:
            for eb, cb in b:
                e = tuple(x + y for x, y in zip(ea, eb))
                d[e] = d.get(e, 0) + ca * cb
        return RingElem(self.spec, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units may be raised to negative powers")
            e, c = self.terms[0]
            return RingElem(self.spec, ((tuple(k * x for x in e), c ** (-k)),))
        result = RingElem.const(self.spec, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "RingElem":
        if not c:
            return RingElem(self.spec)
        return RingElem(self.spec, tuple((e, x * c) for e, x in self.terms))

    def shift(self, exp: Sequence[int]) -> "RingElem":
        return RingElem(self.spec, tuple(
            (tuple(x + y for x, y in zip(e, exp)), c) for e, c in self.terms))

    def inverse_unit(self) -> "RingElem":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        e, c = self.terms[0]
        return RingElem(self.spec, ((tuple(-x for x in e), c),))

    def min_exponents(self) -> Exp:
        return tuple(min(e[i] for e, _ in self.terms) for i in range(self.spec.nvars))

    def max_exponents(self) -> Exp:
        return tuple(max(e[i] for e, _ in self.terms) for i in range(self.spec.nvars))

    def exact_div(self, other: "RingElem") -> "RingElem":
        """Exact quotient in the Laurent ring; raises ArithmeticError if inexact."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero")
        if not self.terms:
            return self
        if other.is_monomial():
            eb, cb = other.terms[0]
            out = []
            for e, c in self.terms:
                q, r = divmod(c, cb)
                if r:
                    raise ArithmeticError("inexact division")
                out.append((tuple(x - y for x, y in zip(e, eb)), q))
            return RingElem(self.spec, tuple(out))
        lo = tuple(x - y for x, y in zip(self.min_exponents(), other.min_exponents()))
        hi = tuple(x - y for x, y in zip(self.max_exponents(), other.max_exponents()))
        eb, cb = other.terms[0]
        rem = dict(self.terms)
        quot: Dict[Exp, int] = {}
        while rem:
            ea = max(rem, key=_grlex_key)
            ca = rem[ea]
            q, r = divmod(ca, cb)
            e = tuple(x - y for x, y in zip(ea, eb))
            if r or any(x < l or x > h for x, l, h in zip(e, lo, hi)):
                raise ArithmeticError("inexact division")
            quot[e] = q
            for ee, cc in other.terms:
                k = tuple(x + y for x, y in zip(e, ee))
                v = rem.get(k, 0) - q * cc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return RingElem(self.spec, quot)

    def evaluate(self, values: Sequence[int], p: Optional[int] = None) -> int:
        """Evaluate at integer point; modulo p when given (p must not divide values)."""
        total = 0
        for e, c in self.terms:
            t = c
            for v, k in zip(values, e):
                if k >= 0:
                    t *= pow(v, k, p) if p else v ** k
                else:
                    if p is None:
                        raise ValueError("negative exponents need a modulus")
                    t *= pow(v, k, p)
            total += t
        return total % p if p else total

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == RingElem.const(self.spec, other).terms
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec.variables, self.terms))
        return self._hash

    # text
    def _mono_str(self, e: Exp) -> str:
        parts = []
        for name, k in zip(self.spec.variables, e):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.terms):
            m = self._mono_str(e)
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = m
            else:
                body = f"{a}*{m}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"RingElem({self})"


class RingParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^-?\d+)|([+\-*()]))")


def parse_ring(text: str, spec: RingSpec = DELTA_RING) -> RingElem:
    """Parse the textual form, e.g. ``3*delta^2 - delta^-1``.

    Supports sums of signed products of integers and powered variables, plus
    parenthesised sub-expressions.
    """
    toks: List[Tuple[str, str, int]] = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise RingParseError(f"unexpected character {s[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("var", m.group(2), start))
        elif m.group(3):
            toks.append(("pow", m.group(3)[1:], start))
        else:
            toks.append(("op", m.group(4), start))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    idx = 0

    def peek():
        return toks[idx] if idx < len(toks) else None

    def expr() -> RingElem:
        nonlocal idx
        total = RingElem(spec)
        sign = 1
        first = True
        while True:
            t = peek()
            if t and t[0] == "op" and t[1] in "+-":
                sign = -1 if t[1] == "-" else 1
                idx += 1
            elif not first:
                break
            total = total + product().scale(sign)
            sign = 1
            first = False
            t = peek()
            if not t or not (t[0] == "op" and t[1] in "+-"):
                break
        return total

    def product() -> RingElem:
        nonlocal idx
        val = factor()
        while True:
            t = peek()
            if t and t[0] == "op" and t[1] == "*":
                idx += 1
                val = val * factor()
            else:
                return val

    def factor() -> RingElem:
        nonlocal idx
        t = peek()
        if t is None:
            raise RingParseError("unexpected end of input", len(s))
        kind, val, p = t
        if kind == "int":
            idx += 1
            return RingElem.const(spec, int(val))
        if kind == "var":
            if val not in spec.variables:
                raise RingParseError(f"unknown variable {val!r}", p)
            idx += 1
            k = 1
            t2 = peek()
            if t2 and t2[0] == "pow":
                k = int(t2[1])
                idx += 1
            return RingElem.var(spec, val, k)
        if kind == "op" and val == "(":
            idx += 1
            inner = expr()
            t2 = peek()
            if not t2 or t2[1] != ")":
                raise RingParseError("expected ')'", t2[2] if t2 else len(s))
            idx += 1
            return inner
        raise RingParseError(f"unexpected token {val!r}", p)

    if not toks:
        raise RingParseError("empty expression", 0)
    out = expr()
    if idx != len(toks):
        raise RingParseError(f"unexpected token {toks[idx][1]!r}", toks[idx][2])
    return out


def one(spec: RingSpec = DELTA_RING) -> RingElem:
    return RingElem.const(spec, 1)


def zero(spec: RingSpec = DELTA_RING) -> RingElem:
    return RingElem(spec)


def delta(spec: RingSpec = DELTA_RING, power: int = 1) -> RingElem:
    return RingElem.var(spec, "delta", power)


def poly_arith(a: RingElem, b: RingElem, op: str) -> RingElem:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec.variables} vs {b.spec.variables}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op}")


# ---------------------------------------------------------------------------
# fraction field

class FracElem:
    """Element num/den of the fraction field F; normalized by integer content,
    monomial shift and the sign of the leading coefficient of den."""

    __slots__ = ("num", "den")

    def __init__(self, num: RingElem, den: Optional[RingElem] = None):
        spec = num.spec
        if den is None:
            den = RingElem.const(spec, 1)
        if den.spec != spec:
            raise SpecMismatch("numerator and denominator rings differ")
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        if not num.terms:
            self.num, self.den = num, RingElem.const(spec, 1)
            return
        g = math.gcd(num.content(), den.content())
        if den.terms[0][1] < 0:
            g = -g
        shift = tuple(-x for x in den.terms[0][0])
        if g != 1:
            num = RingElem(spec, tuple((e, c // g) for e, c in num.terms))
            den = RingElem(spec, tuple((e, c // g) for e, c in den.terms))
        if any(shift):
            num = num.shift(shift)
            den = den.shift(shift)
        self.num, self.den = num, den

    @property
    def spec(self):
        return self.num.spec

    @classmethod
    def of(cls, x) -> "FracElem":
        if isinstance(x, FracElem):
            return x
        if isinstance(x, int):
            x = RingElem.const(DELTA_RING, x)
        return cls(x)

    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def __add__(self, o):
        o = self._coerce(o)
        if self.den == o.den:
            return FracElem(self.num + o.num, self.den)
        return FracElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FracElem(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        return FracElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in F")
        return FracElem(self.num * o.den, self.den * o.num)

    def _coerce(self, o) -> "FracElem":
        if isinstance(o, FracElem):
            return o
        if isinstance(o, RingElem):
            return FracElem(o)
        if isinstance(o, int):
            return FracElem(RingElem.const(self.spec, o))
        raise TypeError(type(o))

    def __eq__(self, o):
        if isinstance(o, (int, RingElem)):
            o = self._coerce(o)
        if not isinstance(o, FracElem):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("FracElem is not hashable (no canonical form)")

    def in_ring(self) -> Optional[RingElem]:
        """Return the element as a RingElem when the quotient is exact."""
        try:
            return self.num.exact_div(self.den)
        except ArithmeticError:
            return None

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# determinants

def _as_matrix(M) -> List[List[RingElem]]:
    rows = [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("matrix is not square")
    return rows


def _matrix_spec(rows, default=DELTA_RING) -> RingSpec:
    for r in rows:
        for x in r:
            if isinstance(x, RingElem):
                return x.spec
    return default


def bareiss_det(M, method: str = "kronecker") -> RingElem:
    """Determinant of a square matrix of RingElem by fraction-free elimination.

    ``method="direct"`` runs Bareiss on the polynomial entries themselves.
    ``method="kronecker"`` maps the matrix through a Kronecker substitution
    into Z, runs integer Bareiss there and decodes.  The substitution base is
    chosen from a bound on the coefficients and degrees of the determinant,
    so the decoded result is exact.
    """
    rows = _as_matrix(M)
    n = len(rows)
    spec = _matrix_spec(rows)
    if n == 0:
        return RingElem.const(spec, 1)
    rows = [[x if isinstance(x, RingElem) else RingElem.const(spec, x) for x in r]
            for r in rows]
    # clear negative exponents row by row
    total_shift = [0] * spec.nvars
    cleared = []
    for r in rows:
        nz = [x for x in r if x.terms]
        if not nz:
            return RingElem(spec)
        lo = [min(x.min_exponents()[i] for x in nz) for i in range(spec.nvars)]
        sh = tuple(-v for v in lo)
        cleared.append([x.shift(sh) if x.terms else x for x in r])
        for i in range(spec.nvars):
            total_shift[i] += lo[i]
    if method == "direct":
        det = _bareiss_poly(cleared)
    elif method == "kronecker":
        det = _bareiss_kronecker(cleared, spec)
    else:
        raise ValueError(method)
    return det.shift(total_shift) if det.terms else det


def _bareiss_poly(a: List[List[RingElem]]) -> RingElem:
    n = len(a)
    a = [list(r) for r in a]
    spec = _matrix_spec(a)
    sign = 1
    prev = RingElem.const(spec, 1)
    for k in range(n - 1):
        if not a[k][k].terms:
            for i in range(k + 1, n):
                if a[i][k].terms:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return RingElem(spec)
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pk * a[i][j] - aik * a[k][j]).exact_div(prev)
            a[i][k] = RingElem(spec)
        prev = pk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _bareiss_int(a: List[List[int]]) -> int:
    n = len(a)
    a = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            if aik:
                for j in range(k + 1, n):
                    ri[j] = (pk * ri[j] - aik * rk[j]) // prev
            elif pk != prev:
                for j in range(k + 1, n):
                    ri[j] = (pk * ri[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def _kronecker_params(rows: List[List[RingElem]], nvars: int):
    """Return (bits, radices) for an injective substitution of every minor."""
    bound = 1
    degs = [0] * nvars
    for r in rows:
        s = sum(sum(abs(c) for _, c in x.terms) for x in r)
        bound *= max(s, 1)
        for i in range(nvars):
            degs[i] += max((x.max_exponents()[i] for x in r if x.terms), default=0)
    bits = bound.bit_length() + 2
    radices = []
    acc = 1
    for i in range(nvars):
        radices.append(acc)
        acc *= degs[i] + 1
    return bits, radices, acc


def _kron_encode(x: RingElem, bits: int, radices) -> int:
    v = 0
    for e, c in x.terms:
        slot = sum(k * r for k, r in zip(e, radices))
        v += c << (bits * slot)
    return v


def _kron_decode(v: int, bits: int, radices, nslots: int, spec: RingSpec) -> RingElem:
    terms = {}
    base = 1 << bits
    half = base >> 1
    slot = 0
    while v and slot < nslots:
        digit = v & (base - 1)
        if digit >= half:
            digit -= base
        v = (v - digit) >> bits
        if digit:
            e = []
            rem = slot
            for r in reversed(radices):
                e.append(rem // r)
                rem %= r
            terms[tuple(reversed(e))] = digit
        slot += 1
    if v:
        raise ArithmeticError("kronecker decoding overflow")
    return RingElem(spec, terms)


def _bareiss_kronecker(rows: List[List[RingElem]], spec: RingSpec) -> RingElem:
    bits, radices, nslots = _kronecker_params(rows, spec.nvars)
    ints = [[_kron_encode(x, bits, radices) for x in r] for r in rows]
    d = _bareiss_int(ints)
    return _kron_decode(d, bits, radices, nslots, spec)


def laplace_det(M) -> RingElem:
    """Cofactor expansion along the first row (oracle for small matrices)."""
    rows = _as_matrix(M)
    spec = _matrix_spec(rows)
    n = len(rows)
    if n == 0:
        return RingElem.const(spec, 1)
    if n == 1:
        x = rows[0][0]
        return x if isinstance(x, RingElem) else RingElem.const(spec, x)
    total = RingElem(spec)
    for j in range(n):
        x = rows[0][j]
        if isinstance(x, int):
            x = RingElem.const(spec, x)
        if not x.terms:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        t = x * laplace_det(minor)
        total = total + (t if j % 2 == 0 else -t)
    return total


# ---------------------------------------------------------------------------
# rank and membership over F

class Tag(tuple):
    """Bookkeeping column: never chosen as a pivot."""
    __slots__ = ()


class Echelon:
    """Incremental sparse row echelon form over F with entries kept in R.

    Rows are dicts column -> RingElem.  A row is reduced against existing
    pivots by fraction-free updates; pivots whose entry is a unit of R
    (a +-monomial) need no scaling at all, which keeps the typical diagram
    spans free of coefficient growth.  Columns that are ``Tag`` instances
    are carried along but never pivoted on.
    """

    def __init__(self, spec: RingSpec = DELTA_RING):
        self.spec = spec
        self.pivots: Dict[object, Dict[object, RingElem]] = {}
        self.order: List[object] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Dict[object, RingElem]) -> Dict[object, RingElem]:
        """Reduce row modulo the pivot rows.  The result is an R-multiple of
        the true remainder, so it is empty (on non-tag columns) iff the row
        lies in the F-span."""
        row = {k: v for k, v in row.items() if v.terms}
        pivots = self.pivots
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                return row
            c = hits[0]
            prow = pivots[c]
            pv = prow[c]
            rv = row[c]
            if pv.is_unit():
                f = rv * pv.inverse_unit()
                for k, v in prow.items():
                    nv = row.get(k)
                    nv = -(f * v) if nv is None else nv - f * v
                    if nv.terms:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                new = {k: pv * v for k, v in row.items()}
                for k, v in prow.items():
                    nv = new.get(k)
                    nv = -(rv * v) if nv is None else nv - rv * v
                    if nv.terms:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                row = _normalize_row(new)

    def add(self, row: Dict[object, RingElem]) -> bool:
        """Insert a row; returns True when it increased the rank."""
        r = self.reduce(row)
        c = _choose_pivot(r)
        if c is None:
            return False
        self.pivots[c] = r
        self.order.append(c)
        return True

    def contains(self, row: Dict[object, RingElem]) -> bool:
        r = self.reduce(row)
        return all(isinstance(k, Tag) for k in r)


def _normalize_row(row: Dict[object, RingElem]) -> Dict[object, RingElem]:
    if not row:
        return row
    g = reduce(math.gcd, (v.content() for v in row.values()), 0)
    vals = list(row.values())
    nv = vals[0].spec.nvars
    lo = [min(v.min_exponents()[i] for v in vals) for i in range(nv)]
    if g == 1 and not any(lo):
        return row
    sh = tuple(-x for x in lo)
    out = {}
    for k, v in row.items():
        if g != 1:
            v = RingElem(v.spec, tuple((e, c // g) for e, c in v.terms))
        out[k] = v.shift(sh) if any(sh) else v
    return out


def _choose_pivot(row: Dict[object, RingElem]):
    best = None
    for k, v in row.items():
        if isinstance(k, Tag):
            continue
        score = (0 if v.is_unit() else 1, len(v.terms))
        if best is None or score < best[0]:
            best = (score, k)
            if score == (0, 1):
                break
    return None if best is None else best[1]


def _frac_rows_to_ring(M) -> List[Dict[int, RingElem]]:
    """Clear denominators row by row (scaling a row does not change spans)."""
    rows = []
    for r in M:
        spec = next((x.spec for x in r if not isinstance(x, int)), DELTA_RING)
        fr = [x if isinstance(x, FracElem) else
              FracElem(x if isinstance(x, RingElem) else RingElem.const(spec, x))
              for x in r]
        den = RingElem.const(spec, 1)
        for f in fr:
            if not f.is_zero() and not f.den.is_unit():
                den = den * f.den
        row = {}
        for j, f in enumerate(fr):
            if f.is_zero():
                continue
            row[j] = (f.num * den).exact_div(f.den)
        rows.append(row)
    return rows


def _row_spec(rows) -> RingSpec:
    for r in rows:
        for v in r.values():
            return v.spec
    return DELTA_RING


def frac_rank(M) -> int:
    """Rank over the fraction field of a matrix of RingElem/FracElem/int."""
    M = [list(r) for r in M]
    if M and any(len(r) != len(M[0]) for r in M):
        raise ShapeError("ragged matrix")
    rows = _frac_rows_to_ring(M)
    ech = Echelon(_row_spec(rows))
    for r in sorted(rows, key=len):
        ech.add(r)
    return ech.rank


def solve_in_span(ech_rows: Sequence[Dict[object, RingElem]],
                  target: Dict[object, RingElem], spec: RingSpec):
    """Coordinates c with target = sum_i c_i rows[i] over F, or None."""
    ech = Echelon(spec)
    one_ = RingElem.const(spec, 1)
    for i, r in enumerate(ech_rows):
        row = dict(r)
        row[Tag(("src", i))] = one_
        ech.add(row)
    t = dict(target)
    t[Tag(("tgt",))] = one_
    red = ech.reduce(t)
    if any(not isinstance(k, Tag) for k in red):
        return None
    # red = a*(target) - sum b_i rows_i on main columns, tags record a and -b_i
    a = red.get(Tag(("tgt",)))
    coords = []
    for i in range(len(ech_rows)):
        b = red.get(Tag(("src", i)))
        coords.append(FracElem(RingElem(spec)) if b is None else FracElem(-b, a))
    return coords


def frac_solve_membership(v, S) -> Tuple[bool, Optional[List[FracElem]]]:
    """Decide whether vector v lies in the F-span of the rows of S.

    Returns (True, coords) with v = sum_i coords[i] * S[i], else (False, None).
    """
    S = [list(s) for s in S]
    v = list(v)
    if any(len(s) != len(v) for s in S):
        raise ShapeError("dimension mismatch")
    rows = _frac_rows_to_ring(S)
    tgt_frac = [x if isinstance(x, FracElem) else None for x in v]
    # keep the target exact: scale it by a common denominator and undo later
    trow = _frac_rows_to_ring([v])[0]
    spec = _row_spec(rows + [trow])
    scale = RingElem.const(spec, 1)
    for x in tgt_frac:
        if x is not None and not x.is_zero() and not x.den.is_unit():
            scale = scale * x.den
    coords = solve_in_span(rows, trow, spec)
    if coords is None:
        return False, None
    # undo the per-row denominator clearing of S and of the target
    out = []
    for c, s in zip(coords, S):
        rden = RingElem.const(spec, 1)
        for x in s:
            if isinstance(x, FracElem) and not x.is_zero() and not x.den.is_unit():
                rden = rden * x.den
        out.append(c * FracElem(rden, scale))
    return True, out


def nullspace(columns: Sequence[Dict[object, RingElem]], spec: RingSpec = DELTA_RING
              ) -> List[Dict[int, RingElem]]:
    """Basis of {x : sum_j x_j columns[j] = 0} over F, scaled into R.

    Each column is a sparse vector (equation key -> coefficient); the result
    vectors are dicts unknown index -> RingElem.
    """
    ech = Echelon(spec)
    one_ = RingElem.const(spec, 1)
    out = []
    for j, col in enumerate(columns):
        row = dict(col)
        row[Tag(("x", j))] = one_
        red = ech.reduce(row)
        if all(isinstance(k, Tag) for k in red):
            out.append({k[1]: v for k, v in red.items()})
        else:
            c = _choose_pivot(red)
            ech.pivots[c] = red
            ech.order.append(c)
    return out


class SpanSolver:
    """Coordinates of many targets in the F-span of fixed rows."""

    def __init__(self, rows: Sequence[Dict[object, RingElem]], spec: RingSpec = DELTA_RING):
        self.spec = spec
        self.n = len(rows)
        self.ech = Echelon(spec)
        self._one = RingElem.const(spec, 1)
        for i, r in enumerate(rows):
            row = dict(r)
            row[Tag(("src", i))] = self._one
            self.ech.add(row)

    def coordinates(self, target: Dict[object, RingElem]) -> Optional[List[FracElem]]:
        t = dict(target)
        t[Tag(("tgt",))] = self._one
        red = self.ech.reduce(t)
        if any(not isinstance(k, Tag) for k in red):
            return None
        a = red.get(Tag(("tgt",)))
        zero = FracElem(RingElem(self.spec))
        out = []
        for i in range(self.n):
            b = red.get(Tag(("src", i)))
            out.append(zero if b is None else FracElem(-b, a))
        return out
