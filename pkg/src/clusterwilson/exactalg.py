"""Exact rational arithmetic: Laurent polynomials and small dense matrices.

Coefficients are Python ints or ``fractions.Fraction``; a Fraction whose
denominator is 1 is stored as an int so the common integer case stays fast.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence


class NotDivisible(ArithmeticError):
    """Raised when an exact Laurent quotient does not exist."""


def rat(x) -> Fraction | int:
    """Normalize to int when integral, else Fraction. Accepts "p/q" strings."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def rat_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Multivariate Laurent polynomial over Q in ``nvars`` variables A1..Ak."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = rat(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: rat(c) for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, nvars: int, c=1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "LaurentPoly":
        """The variable A_{i+1} (0-based index i)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    # basic queries
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order: exponent tuples in decreasing lex order."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return other

    # ring operations
    def __add__(self, other):
        other = self._check(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = rat(v)
            else:
                t.pop(e, None)
        return LaurentPoly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if len(other._terms) == 1 and len(self._terms) > 1:
            return other * self
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.nvars, {e: rat(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly._raw(self.nvars, {tuple(k * v for v in e): rat(Fraction(1) / c ** (-k))})
        result = LaurentPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        return laurent_exact_div(self, self._check(other))

    def shift(self, exps: Sequence[int], c=1) -> "LaurentPoly":
        """Multiply by the monomial c * A^exps."""
        exps = tuple(exps)
        return LaurentPoly._raw(self.nvars, {_add_exp(e, exps): rat(v * c) for e, v in self._terms.items()})

    def min_exponents(self) -> tuple:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def __call__(self, point):
        return laurent_eval(self, point)

    # text
    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else [f"A{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            mag = abs(Fraction(c))
            factors = [] if mag == 1 and any(e) else [rat_str(mag)]
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            text = " * ".join(factors)
            if not out:
                out.append(("-" if c < 0 else "") + text)
            else:
                out.append((" - " if c < 0 else " + ") + text)
        return "".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.to_str()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int | None = None, names: Sequence[str] | None = None) -> "LaurentPoly":
        """Parse the printed form (or any expression whose value is a Laurent polynomial)."""
        num, den = parse_rational_expr(text, nvars=nvars, names=names)
        return laurent_exact_div(num, den)

    def substitute(self, images: Sequence["LaurentPoly"]):
        """Substitute A_i -> images[i]; returns (numerator, denominator) Laurent polys.

        Negative powers of non-monomial images are moved to the denominator.
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        low = [min(0, v) for v in self.min_exponents()]
        den = LaurentPoly.const(target, 1)
        for img, d in zip(images, low):
            if d:
                den = den * img ** (-d) if not img.is_monomial() else den
        num = LaurentPoly._raw(target, {})
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        for e, c in self._terms.items():
            term = LaurentPoly.const(target, c)
            for i, k in enumerate(e):
                if images[i].is_monomial():
                    if k:
                        term = term * power(i, k)
                else:
                    kk = k - low[i]
                    if kk:
                        term = term * power(i, kk)
            num = num + term
        return num, den


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return q with q*b == a in the Laurent ring, or raise NotDivisible."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    n = a.nvars
    if a.is_zero():
        return a
    if b.is_monomial():
        (e, c), = b._terms.items()
        inv = Fraction(1) / c
        return a.shift([-v for v in e], inv)
    # Strip monomial content; b0 then has no variable factor, so divisibility
    # in the Laurent ring is equivalent to polynomial divisibility a0 | b0.
    mb = b.min_exponents()
    ma = a.min_exponents()
    b0 = {tuple(x - y for x, y in zip(e, mb)): c for e, c in b._terms.items()}
    rem = {tuple(x - y for x, y in zip(e, ma)): c for e, c in a._terms.items()}
    lead_b = max(b0)
    cb = Fraction(b0[lead_b])
    b_rest = [(e, c) for e, c in b0.items() if e != lead_b]
    heap = [tuple(-v for v in e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while rem:
        lead = tuple(-v for v in heapq.heappop(heap))
        c = rem.get(lead)
        if c is None:
            continue
        qe = tuple(x - y for x, y in zip(lead, lead_b))
        if min(qe) < 0:
            raise NotDivisible("no exact Laurent quotient")
        qc = rat(c / cb)
        quot[qe] = qc
        del rem[lead]
        for e, cc in b_rest:
            t = _add_exp(qe, e)
            v = rem.get(t, 0) - qc * cc
            if v:
                if t not in rem:
                    heapq.heappush(heap, tuple(-x for x in t))
                rem[t] = rat(v)
            else:
                rem.pop(t, None)
    shift = tuple(x - y for x, y in zip(ma, mb))
    return LaurentPoly._raw(n, {_add_exp(e, shift): c for e, c in quot.items()})


def laurent_eval(p: LaurentPoly, point: Sequence) -> Fraction | int:
    """Exact value of p at a point with nonzero rational coordinates."""
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    pt = [Fraction(x) for x in point]
    if any(x == 0 for x in pt):
        raise ZeroDivisionError("Laurent evaluation needs nonzero coordinates")
    powers = [dict() for _ in pt]
    total = Fraction(0)
    for e, c in p._terms.items():
        v = Fraction(c)
        for i, k in enumerate(e):
            if k:
                pw = powers[i].get(k)
                if pw is None:
                    pw = pt[i] ** k
                    powers[i][k] = pw
                v *= pw
        total += v
    return rat(total)


# ---------------------------------------------------------------------------
# Rational expressions (numerator, denominator) for parsing and membership
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^\{?-?\d+\}?)|(.))")


def parse_rational_expr(text: str, nvars: int | None = None, names: Sequence[str] | None = None):
    """Parse +, -, *, /, ^int, parentheses over variables into (num, den).

    Variables are named by ``names`` (if given) or A1..Ak.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, ident, power, other = m.groups()
        pos = m.end()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif ident is not None:
            tokens.append(("id", ident))
        elif power is not None:
            tokens.append(("pow", int(power.strip("^{}"))))
        elif other.strip():
            tokens.append(("op", other))
    lookup = {}
    if names is not None:
        lookup = {nm: i for i, nm in enumerate(names)}
        n = len(names)
    else:
        idx = [int(t[1][1:]) for t in tokens if t[0] == "id" and re.fullmatch(r"A\d+", t[1])]
        n = nvars if nvars is not None else max(idx, default=0)
    if nvars is not None and nvars != n:
        raise ValueError("nvars disagrees with names")

    def resolve(name):
        if name in lookup:
            return lookup[name]
        m = re.fullmatch(r"A(\d+)", name)
        if m and 1 <= int(m.group(1)) <= n:
            return int(m.group(1)) - 1
        raise ValueError(f"unknown variable {name!r}")

    one = LaurentPoly.const(n, 1)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def expr():
        nonlocal i
        sign = 1
        if peek() == ("op", "-"):
            i += 1
            sign = -1
        elif peek() == ("op", "+"):
            i += 1
        a, b = term()
        a = a * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = tokens[i][1]
            i += 1
            c, d = term()
            if op == "+":
                a, b = a * d + c * b, b * d
            else:
                a, b = a * d - c * b, b * d
            a, b = _reduce(a, b)
        return a, b

    def term():
        nonlocal i
        a, b = factor()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = tokens[i][1]
            i += 1
            c, d = factor()
            if op == "*":
                a, b = a * c, b * d
            else:
                if c.is_zero():
                    raise ZeroDivisionError("division by zero in expression")
                a, b = a * d, b * c
            a, b = _reduce(a, b)
        return a, b

    def factor():
        nonlocal i
        kind, val = peek()
        if kind == "op" and val == "-":
            i += 1
            a, b = factor()
            return -a, b
        if kind == "num":
            i += 1
            base = (one * val, one)
        elif kind == "id":
            i += 1
            base = (LaurentPoly.var(n, resolve(val)), one)
        elif kind == "op" and val == "(":
            i += 1
            base = expr()
            if peek() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            i += 1
        else:
            raise ValueError(f"unexpected token {val!r} in {text!r}")
        if peek()[0] == "pow":
            k = tokens[i][1]
            i += 1
            a, b = base
            base = (a ** k, b ** k) if k >= 0 else (b ** (-k), a ** (-k))
        return base

    if not tokens:
        raise ValueError("empty expression")
    result = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def _reduce(a: LaurentPoly, b: LaurentPoly):
    """Cancel when the denominator divides exactly; keeps expressions small."""
    if b.is_monomial():
        return laurent_exact_div(a, b), LaurentPoly.const(a.nvars, 1)
    try:
        return laurent_exact_div(a, b), LaurentPoly.const(a.nvars, 1)
    except NotDivisible:
        return a, b


# ---------------------------------------------------------------------------
# Dense rational matrices
# ---------------------------------------------------------------------------

class RatMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "_a", "_hash")

    def __init__(self, entries: Iterable[Iterable]):
        a = tuple(tuple(rat(x) for x in row) for row in entries)
        if not a or not a[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(a[0]) for r in a):
            raise ValueError("ragged matrix")
        self._a = a
        self.rows = len(a)
        self.cols = len(a[0])
        self._hash = None

    @classmethod
    def _raw(cls, a):
        m = cls.__new__(cls)
        m._a = a
        m.rows = len(a)
        m.cols = len(a[0])
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._raw(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values) -> "RatMatrix":
        values = [rat(v) for v in values]
        n = len(values)
        return cls._raw(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        return cls([[Fraction(str(x)) for x in row] for row in data])

    def to_json(self):
        return [[rat_str(x) for x in row] for row in self._a]

    def __getitem__(self, ij):
        i, j = ij
        return self._a[i][j]

    def row(self, i):
        return self._a[i]

    def tolist(self):
        return [list(r) for r in self._a]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self._a == other._a

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._a)
        return self._hash

    def __repr__(self):
        return "RatMatrix(" + str(self.to_json()) + ")"

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bt = list(zip(*other._a))
        out = []
        for r in self._a:
            out.append(tuple(rat(sum(x * y for x, y in zip(r, c) if x and y)) for c in bt))
        return RatMatrix._raw(tuple(out))

    def __mul__(self, c):
        return RatMatrix._raw(tuple(tuple(rat(x * c) for x in r) for r in self._a))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __add__(self, other):
        return RatMatrix._raw(tuple(tuple(rat(x + y) for x, y in zip(r, s)) for r, s in zip(self._a, other._a)))

    def __sub__(self, other):
        return self + (-other)

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(zip(*self._a)))

    def submatrix(self, rows, cols) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(self._a[i][j] for j in cols) for i in rows))

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows <= 3:
            return det_cofactor(self._a)
        return det_bareiss(self._a)

    def inverse(self) -> "RatMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._a)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return RatMatrix([r[n:] for r in a])

    def rank(self) -> int:
        return rank(self._a)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._a for x in r)


def det_cofactor(a) -> Fraction | int:
    """Laplace expansion along the first row; used for n <= 3 and as a cross-check."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return rat(a[0][0] * a[1][1] - a[0][1] * a[1][0])
    total = 0
    for j in range(n):
        if a[0][j]:
            sub = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * a[0][j] * det_cofactor(sub)
    return rat(total)


def det_bareiss(a) -> Fraction | int:
    """Fraction-free Bareiss elimination after clearing row denominators."""
    n = len(a)
    scale = Fraction(1)
    m = []
    for row in a:
        den = 1
        for x in row:
            d = Fraction(x).denominator
            den = den * d // _gcd(den, d)
        scale *= den
        m.append([int(Fraction(x) * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return rat(Fraction(sign * m[n - 1][n - 1]) / scale)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank(a) -> int:
    m = [[Fraction(x) for x in r] for r in a]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def mat_minor(M: RatMatrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the submatrix on 0-based ``rows`` x ``cols``."""
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column index sets differ in size")
    if not rows:
        return 1
    for i in rows:
        if not 0 <= i < M.rows:
            raise IndexError(f"row index {i} out of range")
    for j in cols:
        if not 0 <= j < M.cols:
            raise IndexError(f"column index {j} out of range")
    return M.submatrix(rows, cols).det()


def leibniz_det(a) -> Fraction | int:
    """Permutation-sum determinant; slow, only for cross-checks."""
    n = len(a)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = 1
        for i in range(n):
            prod *= a[i][p[i]]
            if not prod:
                break
        total += -prod if inv % 2 else prod
    return rat(total)
