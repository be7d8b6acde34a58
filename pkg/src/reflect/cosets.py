"""Coxeter cosets W.phi, twisted classes, twistings of Levi subgroups,
torus orders and factors of phi on invariants."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .rootsys import enumerate_roots
from .coxeter import (ClassInfo, CoxGroup, Perm, ReflSubgroup, _component_type, classes_from_table,
                      isomorphism_type, set_stabilizer)
from .exactlin import (CycProduct, IntMat, Poly, as_mat, characteristic_polynomial,
                       cyclotomic_factorization, identity, integer_kernel, mat_mul,
                       rational_inverse, transpose)


def _parse_sigma(W: CoxGroup, sigma) -> tuple:
    n = W.rank
    if sigma is None:
        return tuple(range(1, n + 1))
    if isinstance(sigma, dict):
        img = [sigma.get(i, i) for i in range(1, n + 1)]
    elif sigma and isinstance(sigma[0], (tuple, list)):
        img = list(range(1, n + 1))
        for cyc in sigma:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                img[a - 1] = b
    else:
        img = list(sigma)
    if sorted(img) != list(range(1, n + 1)):
        raise ValueError(f"{sigma!r} is not a permutation of the simple roots")
    return tuple(img)


def _phi_on_y(W: CoxGroup, img: tuple) -> IntMat:
    """Matrix on Y sending coroot i to coroot sigma(i) and fixing the
    annihilator of the roots."""
    d = W.datum
    r, n = d.rank, W.rank
    ker = integer_kernel(d.R, r) if n < r else ()
    basis = [list(d.Rv[i]) for i in range(n)] + [list(k) for k in ker]
    images = [list(d.Rv[img[i] - 1]) for i in range(n)] + [list(k) for k in ker]
    # P * B^T = I^T  =>  P = I^T (B^T)^-1
    inv = rational_inverse(transpose(basis))
    P = mat_mul(transpose(images), inv)
    if any(Fraction(x).denominator != 1 for row in P for x in row):
        raise ValueError("diagram automorphism does not preserve Y")
    return as_mat([[int(x) for x in row] for row in P])


@dataclass
class Coset:
    W: CoxGroup
    sigma: tuple  # sigma[i-1] = image of simple label i
    phiY: IntMat
    name: str = ""

    @cached_property
    def root_perm(self) -> tuple:
        sysm = self.W.system
        out = []
        for r in sysm.roots:
            img = [0] * len(r)
            for i, c in enumerate(r):
                img[self.sigma[i] - 1] = c
            out.append(sysm.index[tuple(img)])
        return tuple(out)

    @cached_property
    def sigma_table(self) -> np.ndarray | None:
        if self.is_trivial:
            return None
        return self.W.table().automorphism_table(self.root_perm)

    @property
    def is_trivial(self) -> bool:
        return self.sigma == tuple(range(1, self.W.rank + 1))

    @cached_property
    def order(self) -> int:
        k, cur = 1, self.sigma
        ident = tuple(range(1, len(cur) + 1))
        while cur != ident:
            cur = tuple(self.sigma[c - 1] for c in cur)
            k += 1
        return k

    def sigma_orbits(self) -> list[set[int]]:
        seen, out = set(), []
        for i in range(1, self.W.rank + 1):
            if i not in seen:
                orb, j = set(), i
                while j not in orb:
                    orb.add(j)
                    j = self.sigma[j - 1]
                seen |= orb
                out.append(orb)
        return out


def make_coset(W: CoxGroup, sigma=None, phiY: IntMat | None = None) -> Coset:
    img = _parse_sigma(W, sigma)
    c = W.datum.cartan
    n = W.rank
    for i in range(n):
        for j in range(n):
            if c[img[i] - 1][img[j] - 1] != c[i][j]:
                raise ValueError(f"{sigma!r} does not preserve the Cartan matrix")
    phi = as_mat(phiY) if phiY is not None else _phi_on_y(W, img)
    coset = Coset(W, img, phi)
    base = isomorphism_type(ReflSubgroup(W, range(n)))
    coset.name = base if coset.is_trivial else f"{coset.order}{base}"
    return coset


@dataclass
class SubCoset:
    """The coset W_L.w.phi, with w.phi normalizing W_L."""

    L: ReflSubgroup
    w: Perm
    parent: Coset

    @cached_property
    def root_perm(self) -> tuple:
        return CoxGroup.mul(self.w, self.parent.root_perm)

    @cached_property
    def matrix(self) -> IntMat:
        """Matrix of w.phi on Y."""
        return mat_mul(self.parent.W.y_matrix(self.w), self.parent.phiY)

    def check(self) -> None:
        image = {self.root_perm[j] for j in self.L.roots}
        if image != set(self.L.roots):
            raise ValueError("w.phi does not stabilize the root system of L")


def _apply_root_perm(a: Sequence[int], x: Perm) -> Perm:
    inv = CoxGroup.inv(tuple(a))
    return tuple(a[x[inv[j]]] for j in range(len(a)))


def frobenius_apply(c: Coset | SubCoset, x):
    """Apply the automorphism of c to a word, element, braid or torsion point."""
    from .garside import Braid
    from .semisimple import SSElt

    coset = c if isinstance(c, Coset) else c.parent
    W = coset.W
    if isinstance(x, SSElt):
        m = coset.phiY if isinstance(c, Coset) else c.matrix
        r = len(m)
        return SSElt(tuple(sum(m[i][j] * x.v[j] for j in range(r)) for i in range(r)))
    if isinstance(x, Braid):
        return x.frobenius(c)
    if isinstance(x, tuple):
        return _apply_root_perm(c.root_perm, x)
    word = list(x)
    if isinstance(c, Coset):
        return [coset.sigma[s - 1] for s in word]
    return W.reduced_word(_apply_root_perm(c.root_perm, W.element_of_word(word)))


# twisted classes ---------------------------------------------------------------


@dataclass
class FClassInfo:
    classtext: list
    classes: list
    orders: list
    elliptic: list
    reps: list
    info: ClassInfo = field(repr=False)

    def centralizer_orders(self, order: int) -> list[int]:
        return [order // c for c in self.classes]


def _is_elliptic(coset: Coset, T, members: Iterable[int]) -> bool:
    orbits = coset.sigma_orbits()
    full = (1 << coset.W.rank) - 1
    for x in members:
        supp = int(T.support[x])
        closed = 0
        for orb in orbits:
            bits = sum(1 << (i - 1) for i in orb)
            if supp & bits:
                closed |= bits
        if closed != full:
            return False
    return True


def f_conjugacy_classes(c: Coset) -> FClassInfo:
    T = c.W.table()
    info = classes_from_table(c.W, c.sigma_table)
    ell = [_is_elliptic(c, T, members) for members in info.minimal]
    return FClassInfo(info.classtext, info.classes, info.orders, ell, info.reps, info)


def elliptic_classes(c: Coset, info: FClassInfo | None = None) -> list[int]:
    info = info or f_conjugacy_classes(c)
    return [i for i, e in enumerate(info.elliptic) if e]


def twisted_centralizer_order(c: Coset, x: int) -> int:
    """Order of {w : w.x.phi(w)^-1 = x} by a direct scan of W."""
    T = c.W.table()
    left = T.right_mult_all(x)  # w -> w x
    phiw = np.arange(T.size) if c.sigma_table is None else c.sigma_table
    right = T.left_mult_all(x)[phiw]  # w -> x phi(w)
    return int(np.count_nonzero(left == right))


# twistings ---------------------------------------------------------------------


def _element_moving_set(W: CoxGroup, source: frozenset, target: frozenset) -> Perm:
    parent = {source: None}
    order = [source]
    for p in order:
        if p == target:
            w = W.identity
            while parent[p] is not None:
                p, s = parent[p]
                w = W.mul(w, W.gen_perms[s])
            return W.inv(w)
        for s, g in enumerate(W.gen_perms):
            q = frozenset(g[j] for j in p)
            if q not in parent:
                parent[q] = (p, s)
                order.append(q)
    raise ValueError("L is not conjugate to its image under phi")


def twistings(c: Coset, L: ReflSubgroup) -> list[SubCoset]:
    """One subcoset W_L.w.phi per phi-class of N_W(W_L)/W_L."""
    W = c.W
    I = frozenset(L.simple)
    phiI = frozenset(c.root_perm[j] for j in I)
    # w1 with w1 phi(I) = I; then N_I w1 phi is the set of twisting elements
    w1 = _element_moving_set(W, phiI, I) if phiI != I else W.identity
    gens, order = set_stabilizer(W, I)
    NI = sorted(W.closure(gens))
    assert len(NI) == order
    pos = {g: k for k, g in enumerate(NI)}
    psi = CoxGroup.mul(w1, c.root_perm)
    parent = list(range(len(NI)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for y in gens:
        yinv_psi = _apply_root_perm(psi, CoxGroup.inv(y))
        for k, n in enumerate(NI):
            j = pos[CoxGroup.mul(y, CoxGroup.mul(n, yinv_psi))]
            a, b = find(k), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list] = {}
    for k in range(len(NI)):
        classes.setdefault(find(k), []).append(k)
    out = []
    for members in classes.values():
        cands = [CoxGroup.mul(NI[k], w1) for k in members]
        best = min(cands, key=lambda w: (W.length(w), W.reduced_word(w)))
        out.append(SubCoset(L, best, c))
    out.sort(key=lambda sc: (_twist_key(sc), W.length(sc.w), W.reduced_word(sc.w)))
    return out


def _twist_key(sc: SubCoset) -> int:
    return 0 if sc.w == sc.parent.W.identity else 1


def torus_order_polynomial(sc: SubCoset | IntMat, lattice: Sequence[Sequence[int]]) -> CycProduct:
    """det(q.A - 1) up to sign, with A the matrix of w.phi restricted to the
    lattice spanned by the rows of ``lattice``."""
    A = sc.matrix if isinstance(sc, SubCoset) else as_mat(sc)
    L = [list(r) for r in lattice]
    k = len(L)
    if k == 0:
        return cyclotomic_factorization(Poly((1,)))
    Lt = transpose(L, len(A))
    AL = mat_mul(A, Lt)
    gram_inv = rational_inverse(mat_mul(L, Lt))
    B = mat_mul(gram_inv, mat_mul(L, AL))
    if mat_mul(Lt, B) != AL:
        raise ValueError("lattice is not stable under w.phi")
    if any(Fraction(x).denominator != 1 for row in B for x in row):
        raise ValueError("lattice is not stable under w.phi")
    return cyclotomic_factorization(characteristic_polynomial(B))


# factors of phi via the coset Molien series -----------------------------------


def _inverse_det_series(cp: Poly, order: int) -> list[Fraction]:
    """Power series of 1/det(1 - tM) to t^order from the monic charpoly of M."""
    r = cp.degree
    # det(1 - tM) = t^r cp(1/t): coefficients reversed
    den = [Fraction(cp.coeffs[r - i]) if 0 <= r - i < len(cp.coeffs) else Fraction(0)
           for i in range(r + 1)]
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / den[0]
    for m in range(1, order + 1):
        acc = sum(den[i] * out[m - i] for i in range(1, min(m, r) + 1))
        out[m] = -acc / den[0]
    return out


def _log_derivative_coeffs(series: list[Fraction]) -> list[Fraction]:
    """c_n with t f'/f = sum c_n t^n (f(0) = 1)."""
    D = len(series) - 1
    c = [Fraction(0)] * (D + 1)
    for n in range(1, D + 1):
        c[n] = n * series[n] - sum(c[k] * series[n - k] for k in range(1, n))
    return c


def _molien(mats: list, order: int) -> list[Fraction]:
    cache: dict = {}
    total = [Fraction(0)] * (order + 1)
    for m in mats:
        cp = characteristic_polynomial(m)
        key = cp.coeffs
        if key not in cache:
            cache[key] = _inverse_det_series(cp, order)
        s = cache[key]
        for i in range(order + 1):
            total[i] += s[i]
    return [x / len(mats) for x in total]


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i * frac) with frac in [0, 1)."""

    frac: Fraction

    def __str__(self) -> str:
        f = self.frac
        if f == 0:
            return "1"
        if f == Fraction(1, 2):
            return "-1"
        return f"E({f.denominator})^{f.numerator}" if f.numerator != 1 else f"E({f.denominator})"

    def as_number(self):
        if self.frac == 0:
            return 1
        if self.frac == Fraction(1, 2):
            return -1
        return complex(np.exp(2j * np.pi * float(self.frac)))


def _primitive_roots(m: int) -> list[RootOfUnity]:
    from math import gcd
    return [RootOfUnity(Fraction(k, m)) for k in range(m) if gcd(k, m) == 1]


def _power_sum(eps: list[RootOfUnity], k: int) -> Fraction:
    """Power sums of Galois-stable multisets; exact via Ramanujan sums."""
    from math import gcd
    from .exactlin import euler_phi
    total = Fraction(0)
    orders = Counter(e.frac.denominator for e in eps)
    for m, cnt in orders.items():
        g = gcd(k, m)
        mm = m // g
        total += Fraction(cnt * _mobius(mm), euler_phi(mm))
    return total


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def _roots_from_power_sums(p: list[Fraction]) -> list[RootOfUnity]:
    """Multiset of roots of unity with power sums p[1..m] (Newton)."""
    m = len(p) - 1
    e = [Fraction(1)] + [Fraction(0)] * m
    for k in range(1, m + 1):
        e[k] = sum((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1)) / k
    # prod (x - eps) = sum (-1)^k e_k x^(m-k)
    coeffs = [(-1) ** (m - j) * e[m - j] for j in range(m + 1)]
    cp = cyclotomic_factorization(Poly(tuple(coeffs)))
    out: list[RootOfUnity] = []
    for d, mult in cp.factors:
        out += _primitive_roots(d) * mult
    if len(out) != m:
        raise ArithmeticError("factor extraction failed")
    return sorted(out, key=lambda r: r.frac)


def coset_matrices(sc: SubCoset, power: int = 1) -> list:
    W = sc.parent.W
    A = sc.matrix
    Ak = identity(len(A))
    for _ in range(power):
        Ak = mat_mul(Ak, A)
    elems = sorted(W.closure(sc.L.gens)) if sc.L.simple else [W.identity]
    return [mat_mul(W.y_matrix(x), Ak) for x in elems]


def phi_factors(sc: SubCoset) -> list[tuple[int, RootOfUnity]]:
    """Pairs (degree, eps) so that the coset Molien series of W_L.w.phi equals
    prod 1/(1 - eps t^d), with degrees of W_L on the full Y (x) Q."""
    W = sc.parent.W
    r = W.datum.rank
    elems = sorted(W.closure(sc.L.gens)) if sc.L.simple else [W.identity]
    ymats = [W.y_matrix(x) for x in elems]
    # the largest degree is one more than the largest root height
    top = 1 + (max(enumerate_roots(sc.L.cartan).height(i) for i in range(sc.L.N))
               if sc.L.N else 0)
    # degrees from the untwisted series
    c0 = _log_derivative_coeffs(_molien(ymats, top))
    mult: dict[int, int] = {}
    for n in range(1, top + 1):
        val = c0[n] - sum(d * m for d, m in mult.items() if n % d == 0)
        if val % n:
            raise ArithmeticError("degree extraction failed")
        if val:
            mult[n] = int(val // n)
        if sum(mult.values()) == r:
            break
    if sum(mult.values()) != r:
        raise ArithmeticError("degree extraction failed")
    dmax = max(mult)
    A = sc.matrix
    powers = [identity(r)]
    for _ in range(max(mult.values())):
        powers.append(mat_mul(powers[-1], A))
    logs: dict[int, list] = {}
    eps: dict[int, list] = {}
    for d in sorted(mult):
        p = [Fraction(0)]
        for k in range(1, mult[d] + 1):
            if k not in logs:
                logs[k] = _log_derivative_coeffs(_molien([mat_mul(y, powers[k]) for y in ymats], dmax))
            lower = sum(d2 * _power_sum(eps[d2], k * d // d2) for d2 in eps if d % d2 == 0)
            p.append((logs[k][d] - lower) / d)
        eps[d] = _roots_from_power_sums(p)
    return [(d, e) for d in sorted(eps) for e in eps[d]]


def phi_factor_set(sc: SubCoset) -> set:
    return {e.as_number() for _, e in phi_factors(sc)}


def subcoset_name(sc: SubCoset) -> str:
    """Components of L grouped into orbits of w.phi, e.g. "(A1xA1)<2,7>xA1<5>"."""
    L, rp = sc.L, sc.root_perm
    comps = [tuple(L.simple[i] for i in c) for c in L.components]
    where = {j: k for k, c in enumerate(comps) for j in c}
    seen, parts = set(), []
    for k in sorted(range(len(comps)), key=lambda k: min(comps[k])):
        if k in seen:
            continue
        orbit, cur = [], k
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = where.get(rp[comps[cur][0]], cur)
        names = []
        for c in orbit:
            sub = [[L.cartan[L.simple.index(a)][L.simple.index(b)] for b in comps[c]] for a in comps[c]]
            fam, r = _component_type(sub)
            names.append(f"{fam}{r}")
        labels = ",".join(str(j + 1) for c in orbit for j in comps[c])
        body = "x".join(names)
        parts.append(f"({body})<{labels}>" if len(orbit) > 1 else f"{body}<{labels}>")
    return "x".join(parts)
