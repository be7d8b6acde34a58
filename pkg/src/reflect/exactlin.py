"""Exact integer/rational linear algebra and polynomials in one variable ``q``.

Matrices are plain tuples of integer tuples (row-major).  A matrix with no
rows is ``()``; functions that need the column count of such a matrix take it
as an explicit argument.  Rationals are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

IntMat = tuple  # tuple[tuple[int, ...], ...]


def as_mat(rows: Iterable[Iterable[int]]) -> IntMat:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMat:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def integer_inverse(m: Sequence[Sequence[int]]) -> IntMat:
    inv = rational_inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return as_mat(inv)


def rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


# -- normal forms ---------------------------------------------------------

def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None
                      ) -> tuple[IntMat, IntMat, IntMat]:
    """Return ``(d, p, q)`` with ``p*m*q == d`` diagonal, ``d[i][i] | d[i+1][i+1]``.

    ``p`` and ``q`` are unimodular; diagonal entries are nonnegative.
    """
    nr = len(m)
    nc = len(m[0]) if nr else (ncols or 0)
    a = [list(map(int, r)) for r in m]
    p = [list(r) for r in identity(nr)]
    q = [list(r) for r in identity(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        p[dst] = [x + f * y for x, y in zip(p[dst], p[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in q:
            row[dst] += f * row[src]

    for t in range(min(nr, nc)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < nr and t < nc and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            p[t] = [-x for x in p[t]]
    return as_mat(a), as_mat(p), as_mat(q)


def smith_diagonal(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    d, _, _ = smith_normal_form(m)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)))


def hermite_normal_form(m: Sequence[Sequence[int]]) -> IntMat:
    """Row-style HNF of the row lattice: echelon, positive pivots, entries
    above each pivot reduced into ``[0, pivot)``, zero rows dropped."""
    a = [list(map(int, r)) for r in m]
    if not a:
        return ()
    nc = len(a[0])
    r = 0
    pivots = []
    for c in range(nc):
        rows = [i for i in range(r, len(a)) if a[i][c]]
        if not rows:
            continue
        while True:
            rows = [i for i in range(r, len(a)) if a[i][c]]
            i0 = min(rows, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            others = [i for i in range(r + 1, len(a)) if a[i][c]]
            if not others:
                break
            for i in others:
                f = a[i][c] // a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            f = a[i][c] // a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return as_mat(a[:r])


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMat:
    """Z-basis (in HNF) of ``{v in Z^ncols : m v = 0}``; always saturated."""
    nc = len(m[0]) if m else (ncols or 0)
    if not m:
        return identity(nc)
    d, _, q = smith_normal_form(m)
    rk = sum(1 for i in range(min(len(d), nc)) if d[i][i])
    basis = [tuple(q[i][j] for i in range(nc)) for j in range(rk, nc)]
    return hermite_normal_form(basis)


def lattice_complement(sub: Sequence[Sequence[int]], ambient_rank: int) -> IntMat:
    """Rows completing the saturated lattice ``sub`` to a basis of Z^n."""
    if not sub:
        return identity(ambient_rank)
    d, _, q = smith_normal_form(sub)
    k = len(sub)
    diag = [d[i][i] for i in range(k)]
    if any(x != 1 for x in diag):
        raise ValueError(f"sublattice is not saturated (elementary divisors {diag})")
    qinv = integer_inverse(q)
    return tuple(qinv[k:])


# -- polynomials ------------------------------------------------------------

@dataclass(frozen=True)
class Poly:
    """Polynomial in ``q`` with rational coefficients, lowest degree first."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def q(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly((1,))
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        for i in range(len(quo) - 1, -1, -1):
            f = rem[i + other.degree] / lead
            quo[i] = f
            if f:
                for j, y in enumerate(other.coeffs):
                    rem[i + j] -= f * y
        return Poly(tuple(quo)), Poly(tuple(rem))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly((x,))


def format_poly(coeffs: Sequence, var: str = "q") -> str:
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[deg])
        if c == 0:
            continue
        mono = "" if deg == 0 else (var if deg == 1 else f"{var}^{deg}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += sign + body
    return out


def characteristic_polynomial(m: Sequence[Sequence]) -> Poly:
    """``det(q*I - m)`` by Faddeev-LeVerrier."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c[n - k + 1]
        mk = prod
        am = sum(sum(a[i][t] * mk[t][i] for t in range(n)) for i in range(n))
        c[n - k] = -am / k
    return Poly(tuple(c))


def euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    f = Poly((-1,) + (0,) * (d - 1) + (1,))
    for e in range(1, d):
        if d % e == 0:
            f, r = f.divmod(cyclotomic(e))
            assert r.is_zero()
    return f


@dataclass(frozen=True)
class CycProduct:
    """``sign * q^q_power * prod(Phi_d^mult)``; ``factors`` sorted by ``d``."""

    sign: int
    q_power: int
    factors: tuple  # tuple[tuple[int, int], ...]

    def expand(self) -> Poly:
        out = Poly((self.sign,)) * (Poly.q() ** self.q_power)
        for d, mult in self.factors:
            out = out * cyclotomic(d) ** mult
        return out

    def multiplicity(self, d: int) -> int:
        return dict(self.factors).get(d, 0)

    def support(self) -> set[int]:
        return {d for d, _ in self.factors}

    def __str__(self) -> str:
        parts = []
        if self.q_power:
            parts.append("q" if self.q_power == 1 else f"q^{self.q_power}")
        for d, mult in self.factors:
            body = format_poly(cyclotomic(d).coeffs)
            parts.append(f"({body})" + (f"^{mult}" if mult > 1 else ""))
        s = "*".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + s


def cyclotomic_factorization(f: Poly) -> CycProduct:
    """Write ``f`` as ``sign * q^k * prod Phi_d^m``; raise if a residue remains."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if not f.is_integral():
        raise ValueError(f"non-integral polynomial {f}")
    coeffs = list(f.coeffs)
    k = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    g = Poly(tuple(coeffs))
    lead = g.coeffs[-1]
    if abs(lead) != 1:
        raise ValueError(f"residual non-cyclotomic factor {g}")
    sign = int(lead)
    g = g * sign
    factors = []
    d = 1
    bound = 2 * g.degree * g.degree + 2
    while g.degree > 0 and d <= bound:
        if euler_phi(d) <= g.degree:
            mult = 0
            phi = cyclotomic(d)
            while g.degree >= phi.degree:
                quo, rem = g.divmod(phi)
                if not rem.is_zero():
                    break
                g, mult = quo, mult + 1
            if mult:
                factors.append((d, mult))
        d += 1
    if g.degree != 0 or g.coeffs[0] != 1:
        raise ValueError(f"residual non-cyclotomic factor {g}")
    return CycProduct(sign, k, tuple(factors))


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
