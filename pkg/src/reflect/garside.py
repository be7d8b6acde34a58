"""Braid monoid of a finite Coxeter group as a Garside structure.

Simple elements are the elements of W, stored as indices of the element
table.  A braid is ``Delta^k * x_1 ... x_r`` in left normal form: every
``x_i`` is a proper simple, and ``R(x_i) \\supseteq L(x_{i+1})``.

An optional automorphism ``F`` permuting the generators (a diagram
automorphism) drives the twisted conjugation ``v -> x^-1 v F(x)``; the summit
machinery below works uniformly in the twisted and untwisted cases.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .coxeter import BudgetExceeded, CoxGroup, enumeration_budget


def _low(m: int) -> int:
    return (m & -m).bit_length() - 1


class BraidCtx:
    """Structure constants shared by all braids of one Coxeter group."""

    def __init__(self, W: CoxGroup, budget: int | None = None):
        self.W = W
        self.T = W.table(budget)
        self.n = W.rank
        self.delta = self.T.w0
        self.N = W.N

    @cached_property
    def tau(self) -> list:
        """``x -> Delta^-1 x Delta`` on simples."""
        return self.T.conjugation_all(self.delta).tolist()

    @cached_property
    def _right_comp(self) -> list:
        # x -> x^-1 w0
        T = self.T
        return T.right_mult_all(self.delta)[T.inverse].tolist()

    @cached_property
    def _left_comp_inv(self) -> list:
        # y -> w0 y^-1
        T = self.T
        return T.left_mult_all(self.delta)[T.inverse].tolist()

    def atom(self, label: int) -> int:
        return self.T.rm[0][label - 1]

    def complement(self, x: int) -> int:
        """``x^-1 Delta``."""
        return self._right_comp[x]

    def simple_mul(self, a: int, b: int) -> int:
        return self.T.mul(a, b)

    def weight(self, a: int, b: int) -> tuple[int, int]:
        """Left-weight the pair ``(a, b)`` of simples."""
        ld, rd, rm, lm = self.T.ld, self.T.rd, self.T.rm, self.T.lm
        while True:
            m = ld[b] & ~rd[a]
            if not m:
                return a, b
            s = _low(m)
            a, b = rm[a][s], lm[b][s]

    def simple_gcd(self, a: int, b: int) -> int:
        ld, rm, lm = self.T.ld, self.T.rm, self.T.lm
        g = 0
        while True:
            m = ld[a] & ld[b]
            if not m:
                return g
            s = _low(m)
            g, a, b = rm[g][s], lm[a][s], lm[b][s]

    def simple_right_gcd(self, a: int, b: int) -> int:
        rd, rm, lm = self.T.rd, self.T.rm, self.T.lm
        g = 0
        while True:
            m = rd[a] & rd[b]
            if not m:
                return g
            s = _low(m)
            g, a, b = lm[g][s], rm[a][s], rm[b][s]

    def simple_lcm(self, a: int, b: int) -> int:
        rc = self._right_comp
        return self._left_comp_inv[self.simple_right_gcd(rc[a], rc[b])]

    def is_prefix(self, a: int, b: int) -> bool:
        """``a`` left-divides ``b`` (both simple)."""
        return self.simple_gcd(a, b) == a

    def tau_power(self, x: int, k: int) -> int:
        return self.tau[x] if k % 2 else x

    # constructors --------------------------------------------------------------

    def identity(self) -> "Braid":
        return Braid(self, 0, ())

    def Delta(self, k: int = 1) -> "Braid":
        return Braid(self, k, ())

    def simple(self, x: int) -> "Braid":
        return left_normal_form(self, 0, [x])

    def __call__(self, *word: int) -> "Braid":
        if len(word) == 1 and not isinstance(word[0], int):
            word = tuple(word[0])
        return positive_lift(self, word)


@dataclass(frozen=True)
class Braid:
    ctx: BraidCtx = field(compare=False, repr=False)
    k: int
    factors: tuple

    def __mul__(self, other: "Braid") -> "Braid":
        return braid_product(self, other)

    def __pow__(self, e: int) -> "Braid":
        base = self if e >= 0 else braid_inverse(self)
        out = self.ctx.identity()
        for _ in range(abs(e)):
            out = out * base
        return out

    def inverse(self) -> "Braid":
        return braid_inverse(self)

    def __str__(self) -> str:
        return format_braid(self)

    def __repr__(self) -> str:
        return f"Braid({format_braid(self)})"

    @property
    def inf(self) -> int:
        return self.k

    @property
    def sup(self) -> int:
        return self.k + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_positive(self) -> bool:
        return self.k >= 0

    def frobenius(self, c) -> "Braid":
        from .cosets import Coset

        table = (c if isinstance(c, Coset) else c.parent).sigma_table
        if table is None:
            return self
        return apply_automorphism(self, table.tolist())


def left_normal_form(ctx: BraidCtx, k: int, raw: Iterable[int]) -> Braid:
    """Normal form of ``Delta^k * raw[0] * raw[1] ...`` for simples ``raw``."""
    facs: list[int] = []
    for f in raw:
        _push(ctx, facs, f)
    while facs and facs[0] == ctx.delta:
        facs.pop(0)
        k += 1
    return Braid(ctx, k, tuple(facs))


def _push(ctx: BraidCtx, facs: list, f: int) -> None:
    if f == 0:
        return
    facs.append(f)
    i = len(facs) - 2
    while i >= 0:
        a, b = ctx.weight(facs[i], facs[i + 1])
        if a == facs[i]:
            break
        facs[i], facs[i + 1] = a, b
        i -= 1
    while facs and facs[-1] == 0:
        facs.pop()


def positive_lift(ctx: BraidCtx, word: Sequence[int]) -> Braid:
    for s in word:
        if not 1 <= s <= ctx.n:
            raise ValueError(f"generator label {s} out of range 1..{ctx.n}")
    return left_normal_form(ctx, 0, [ctx.atom(s) for s in word])


def lift_element(ctx: BraidCtx, x: int) -> Braid:
    """Lift of an element of W (table index) as a simple braid."""
    return left_normal_form(ctx, 0, [x])


def _check_ctx(a: Braid, b: Braid) -> None:
    if a.ctx is not b.ctx:
        raise ValueError("braids belong to different braid monoids")


def braid_product(a: Braid, b: Braid) -> Braid:
    _check_ctx(a, b)
    ctx = a.ctx
    facs = [ctx.tau_power(x, b.k) for x in a.factors]
    for f in b.factors:
        _push(ctx, facs, f)
    k = a.k + b.k
    while facs and facs[0] == ctx.delta:
        facs.pop(0)
        k += 1
    return Braid(ctx, k, tuple(facs))


def braid_inverse(a: Braid) -> Braid:
    ctx = a.ctx
    r = len(a.factors)
    raw = [ctx.tau_power(ctx.complement(x), i + 1 + a.k) for i, x in reversed(list(enumerate(a.factors)))]
    return left_normal_form(ctx, -(r + a.k), raw)


def apply_automorphism(b: Braid, table: Sequence[int]) -> Braid:
    """Image under an automorphism of W permuting the generators."""
    return Braid(b.ctx, b.k, tuple(table[x] for x in b.factors))


def image_in_w(b: Braid) -> int:
    """Image in W as a table index."""
    ctx = b.ctx
    x = ctx.delta if b.k % 2 else 0
    for f in b.factors:
        x = ctx.simple_mul(x, f)
    return x


# lattice operations on positive braids ------------------------------------------


def _head(b: Braid) -> int:
    if b.k > 0:
        return b.ctx.delta
    return b.factors[0] if b.factors else 0


def left_divide(a: Braid, b: Braid) -> Braid:
    """``a^-1 b``."""
    return braid_inverse(a) * b


def left_gcd(a: Braid, b: Braid) -> Braid:
    _check_ctx(a, b)
    if a.k < 0 or b.k < 0:
        raise ValueError("left_gcd is defined for positive braids")
    ctx = a.ctx
    g = ctx.identity()
    while True:
        d = ctx.simple_gcd(_head(a), _head(b))
        if d == 0:
            return g
        s = ctx.simple(d)
        g = g * s
        si = braid_inverse(s)
        a, b = si * a, si * b


def _lcm_simple(a: Braid, s: int) -> Braid:
    """``a v s`` for a positive braid ``a`` and a simple ``s``."""
    ctx = a.ctx
    heads: list[int] = []
    rest = a
    while s and (rest.k or rest.factors):
        h = _head(rest)
        m = ctx.simple_lcm(h, s)
        heads.append(h)
        s = ctx.simple_mul(ctx.T.inv_l[h], m)
        rest = braid_inverse(ctx.simple(h)) * rest
    out = left_normal_form(ctx, 0, heads)
    return out * rest * ctx.simple(s)


def left_lcm(a: Braid, b: Braid) -> Braid:
    _check_ctx(a, b)
    if a.k < 0 or b.k < 0:
        raise ValueError("left_lcm is defined for positive braids")
    ctx = a.ctx
    prefix = ctx.identity()
    pieces = [ctx.delta] * b.k + list(b.factors)
    for y in pieces:
        m = _lcm_simple(a, y)
        prefix = prefix * ctx.simple(y)
        a = left_divide(ctx.simple(y), m)
    return prefix * a


def as_reduced_fraction(b: Braid) -> tuple[Braid, Braid]:
    """``(num, den)`` positive with ``b = den^-1 num`` and no common left divisor."""
    ctx = b.ctx
    if b.k >= 0:
        return b, ctx.identity()
    den = ctx.Delta(-b.k)
    num = Braid(ctx, 0, b.factors)
    g = left_gcd(den, num)
    gi = braid_inverse(g)
    return gi * num, gi * den


def _word_str(ctx: BraidCtx, b: Braid) -> str:
    labels = [s for x in [ctx.delta] * b.k + list(b.factors) for s in ctx.T.word(x)]
    if ctx.n >= 10:
        return "(" + ",".join(map(str, labels)) + ")" if labels else ""
    return "".join(map(str, labels))


def format_braid(b: Braid) -> str:
    ctx = b.ctx
    if b.k >= 0:
        parts = ["w0^%d" % b.k if b.k > 1 else "w0"] if b.k else []
        pos = Braid(ctx, 0, b.factors)
        if pos.factors:
            parts.append(_word_str(ctx, pos))
        return ".".join(parts) if parts else "."
    num, den = as_reduced_fraction(b)
    out = f"({_word_str(ctx, den)})^-1"
    if num.k or num.factors:
        out += "." + _word_str(ctx, num)
    return out


# cycling, decycling and summit sets ----------------------------------------------


def _twist(F: Sequence[int] | None, x: int) -> int:
    return x if F is None else F[x]


def _untwist(Finv: Sequence[int] | None, x: int) -> int:
    return x if Finv is None else Finv[x]


def twisted_conjugate(b: Braid, c: Braid, F: Sequence[int] | None = None) -> Braid:
    """``c^-1 b F(c)``."""
    Fc = c if F is None else apply_automorphism(c, F)
    return braid_inverse(c) * b * Fc


def cycling(b: Braid, F: Sequence[int] | None = None) -> tuple[Braid, Braid]:
    """Conjugate by the first factor (moved through Delta^k); returns
    ``(cycled, conjugator)``."""
    ctx = b.ctx
    if not b.factors:
        return b, ctx.identity()
    c = ctx.simple(ctx.tau_power(b.factors[0], b.k))
    return twisted_conjugate(b, c, F), c


def decycling(b: Braid, F: Sequence[int] | None = None) -> tuple[Braid, Braid]:
    """Conjugate the last factor to the front."""
    ctx = b.ctx
    if not b.factors:
        return b, ctx.identity()
    Finv = None if F is None else np.argsort(np.asarray(F)).tolist()
    c = braid_inverse(ctx.simple(_untwist(Finv, b.factors[-1])))
    return twisted_conjugate(b, c, F), c


def inf(b: Braid) -> int:
    return b.inf


def sup(b: Braid) -> int:
    return b.sup


def canonical_length(b: Braid) -> int:
    return b.canonical_length


def to_super_summit(b: Braid, F: Sequence[int] | None = None) -> tuple[Braid, Braid]:
    """An element of the super summit set of ``b`` and a conjugator ``c``
    with ``c^-1 b F(c)`` equal to it."""
    ctx = b.ctx
    bound = ctx.N
    conj = ctx.identity()
    for step in (cycling, decycling):
        better = (lambda x, y: y.inf > x.inf) if step is cycling else (lambda x, y: y.sup < x.sup)
        idle = 0
        while idle < bound and b.factors:
            nb, c = step(b, F)
            conj = conj * c
            if better(b, nb):
                idle = 0
            else:
                idle += 1
            b = nb
    return b, conj


def minimal_simple(b: Braid, s: int, F: Sequence[int] | None = None) -> int:
    """Least simple ``c`` with ``s <= c`` and ``c^-1 b F(c)`` in the super
    summit set (``b`` is assumed to lie in it)."""
    ctx = b.ctx
    p, r = b.k, len(b.factors)
    xp = Braid(ctx, 0, b.factors)
    z = left_divide(xp, ctx.Delta(r))
    Finv = None if F is None else np.argsort(np.asarray(F)).tolist()
    c = s
    while True:
        Fc = ctx.simple(_twist(F, c))
        # inf condition: tau^p(c) <= x' F(c)
        m = left_divide(xp, _lcm_simple(xp * Fc, ctx.tau_power(c, p)))
        lower1 = _untwist(Finv, _simple_of(m))
        # sup condition: F(c) <= z tau^(p+r)(c)
        zs = z * ctx.simple(ctx.tau_power(c, p + r))
        m2 = left_divide(z, _lcm_simple(zs, _twist(F, c)))
        lower2 = ctx.tau_power(_simple_of(m2), p + r)
        new = ctx.simple_lcm(ctx.simple_lcm(c, lower1), lower2)
        if new == c:
            return c
        c = new


def _simple_of(b: Braid) -> int:
    if b.k == 1 and not b.factors:
        return b.ctx.delta
    if b.k != 0 or len(b.factors) > 1:
        raise AssertionError(f"expected a simple braid, got {b}")
    return b.factors[0] if b.factors else 0


@dataclass
class SummitGraph:
    vertices: list  # Braids; vertices[0] is the base point
    edges: list  # (source index, simple conjugator, target index)
    conjugator: Braid  # c with c^-1 b F(c) = vertices[0]
    F: list | None = None


def summit_conjugacy_graph(b: Braid, F: Sequence[int] | None = None,
                           budget: int | None = None) -> SummitGraph:
    """Super summit set of ``b`` under (twisted) conjugation, with the
    minimal simple conjugators as edges."""
    ctx = b.ctx
    limit = enumeration_budget(budget) if budget is None or budget > 0 else budget
    F = None if F is None else list(F)
    start, conj = to_super_summit(b, F)
    index = {start: 0}
    verts, edges = [start], []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        v = verts[i]
        seen = set()
        for s in range(ctx.n):
            c = minimal_simple(v, ctx.atom(s + 1), F)
            if c in seen:
                continue
            seen.add(c)
            u = twisted_conjugate(v, ctx.simple(c), F)
            j = index.get(u)
            if j is None:
                j = index[u] = len(verts)
                verts.append(u)
                queue.append(j)
                if len(verts) > limit:
                    raise BudgetExceeded(f"summit set exceeds {limit} vertices")
            edges.append((i, c, j))
    return SummitGraph(verts, edges, conj, F)


def centralizer_generators(b: Braid, F: Sequence[int] | None = None,
                           budget: int | None = None, graph: SummitGraph | None = None) -> list:
    """Generators of ``{x : x b = b F(x)}``."""
    ctx = b.ctx
    g = graph or summit_conjugacy_graph(b, F, budget)
    F = g.F
    path: list = [None] * len(g.vertices)
    path[0] = ctx.identity()
    tree = set()
    adj: dict = {}
    for e, (i, c, j) in enumerate(g.edges):
        adj.setdefault(i, []).append((e, c, j))
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for e, c, j in adj.get(i, ()):
            if path[j] is None:
                path[j] = path[i] * ctx.simple(c)
                tree.add(e)
                queue.append(j)
    y = g.conjugator
    yi = braid_inverse(y)
    out, seen = [], set()
    for e, (i, c, j) in enumerate(g.edges):
        if e in tree:
            continue
        x = path[i] * ctx.simple(c) * braid_inverse(path[j])
        x = y * x * yi
        if (x.k, x.factors) != (0, ()) and x not in seen:
            seen.add(x)
            out.append(x)
    for x in out:
        if x * b != b * (x if F is None else apply_automorphism(x, F)):
            raise AssertionError(f"{x} does not centralize {b}")
    return out


def image_subgroup_order(ctx: BraidCtx, elements: Iterable[int]) -> int:
    """Order of the subgroup of W generated by the given table indices."""
    T = ctx.T
    maps = [T.right_mult_all(x) for x in set(elements) if x]
    if not maps:
        return 1
    _, labels = T.components(maps)
    return int(np.count_nonzero(labels == labels[0]))
