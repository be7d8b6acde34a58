"""Semisimple elements of finite order in a maximal torus T.

A torsion point of T is a vector of ``Y(T) (x) Q/Z``; we store it as a tuple
of Fractions in [0, 1) on the basis of Y.  The Weyl group acts through its
matrices on Y, and a root x in X pairs with s to ``sum x_i s_i mod 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .coxeter import (BudgetExceeded, CoxGroup, Perm, ReflSubgroup, double_coset_representatives,
                      enumeration_budget, isomorphism_type)
from .exactlin import (IntMat, as_mat, hermite_normal_form, integer_kernel, lattice_complement,
                       mat_mul, rank, smith_normal_form)
from .rootsys import extended_diagram


def _mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, order=True)
class SSElt:
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(_mod1(x) for x in self.v))

    def __str__(self) -> str:
        return "<" + ",".join(str(x) for x in self.v) + ">"

    def __mul__(self, other: "SSElt") -> "SSElt":
        return ss_multiply(self, other)

    def __pow__(self, n: int) -> "SSElt":
        return ss_power(self, n)

    @property
    def rank(self) -> int:
        return len(self.v)

    @property
    def order(self) -> int:
        return ss_order(self)

    def as_int(self) -> tuple[tuple, int]:
        """Numerators over the common denominator d = order."""
        d = self.order
        return tuple(int(x * d) for x in self.v), d

    @classmethod
    def parse(cls, text: str) -> "SSElt":
        body = text.strip()
        if not (body.startswith("<") and body.endswith(">")):
            raise ValueError(f"not a torsion point: {text!r}")
        return cls(tuple(Fraction(p) for p in body[1:-1].split(",")))

    @classmethod
    def identity(cls, r: int) -> "SSElt":
        return cls((0,) * r)


def ss_multiply(a: SSElt, b: SSElt) -> SSElt:
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    return SSElt(tuple(x + y for x, y in zip(a.v, b.v)))


def ss_power(a: SSElt, n: int) -> SSElt:
    return SSElt(tuple(n * x for x in a.v))


def ss_order(a: SSElt) -> int:
    return lcm(*(x.denominator for x in a.v)) if a.v else 1


def _as_matrix(W: CoxGroup, w) -> IntMat:
    if isinstance(w, tuple) and w and isinstance(w[0], tuple):
        return w
    if isinstance(w, (int, np.integer)):
        return tuple(map(tuple, W.table().ymats[int(w)].tolist()))
    return W.y_matrix(w)


def mat_act(m: Sequence[Sequence[int]], s: SSElt) -> SSElt:
    r = len(m)
    return SSElt(tuple(sum(m[i][j] * s.v[j] for j in range(r) if m[i][j]) for i in range(r)))


def weyl_act(W: CoxGroup, w, s: SSElt) -> SSElt:
    """w . s for w a permutation, a table index or a matrix on Y."""
    return mat_act(_as_matrix(W, w), s)


def root_x(W: CoxGroup, root: int) -> tuple:
    R = W.datum.R
    c = W.system.roots[root]
    return tuple(sum(c[i] * R[i][k] for i in range(len(c)) if c[i]) for k in range(W.datum.rank))


def root_pairing(W: CoxGroup, root: int, s: SSElt) -> Fraction:
    return _mod1(sum(a * b for a, b in zip(root_x(W, root), s.v)))


# centre and subtori -------------------------------------------------------------


@dataclass(frozen=True)
class CentreData:
    Z0: IntMat
    complement: IntMat
    AZ: tuple


def _roots_of(G: CoxGroup, H) -> list[int]:
    if H is None or H is G:
        return list(range(G.rank))
    return list(H.simple)


def algebraic_centre(G: CoxGroup, H: ReflSubgroup | None = None) -> CentreData:
    """Y(Z0), a complement lattice, and representatives of Z/Z0 inside the
    complement torus."""
    r = G.datum.rank
    rows = [root_x(G, j) for j in _roots_of(G, H)]
    Z0 = integer_kernel(rows, r) if rows else hermite_normal_form([[int(i == j) for j in range(r)] for i in range(r)])
    comp = lattice_complement(Z0, r) if Z0 else as_mat([[int(i == j) for j in range(r)] for i in range(r)])
    if not rows or not comp:
        return CentreData(Z0, comp, (SSElt.identity(r),))
    # pairing of complement basis vectors with the roots
    P = [[sum(a * b for a, b in zip(x, c)) for c in comp] for x in rows]
    D, U, V = smith_normal_form(P, len(comp))
    m = len(comp)
    diag = [D[k][k] if k < len(D) else 0 for k in range(m)]
    if any(d == 0 for d in diag):
        raise ArithmeticError("complement meets the centre torus")
    choices = [range(d) for d in diag]
    az = []
    for t in product(*choices):
        tt = [Fraction(t[k], diag[k]) for k in range(m)]
        coeff = [sum(V[i][k] * tt[k] for k in range(m)) for i in range(m)]
        y = tuple(sum(coeff[k] * comp[k][j] for k in range(m)) for j in range(r))
        az.append(SSElt(y))
    return CentreData(Z0, comp, tuple(sorted(set(az))))


@dataclass(frozen=True)
class SSGroup:
    rank: int
    generators: tuple

    def __str__(self) -> str:
        return "Group( " + ", ".join(map(str, self.generators)) + " )"

    def enumerate(self, limit: int | None = None) -> list[SSElt]:
        limit = enumeration_budget(limit)
        e = SSElt.identity(self.rank)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > limit:
                raise BudgetExceeded("torsion subgroup exceeds budget")
            frontier = nxt
        return sorted(seen)


def semisimple_subgroup(G: CoxGroup | int, basis: Sequence[Sequence[int]], n: int) -> SSGroup:
    """Elements of order dividing n in the subtorus with Y-lattice ``basis``."""
    r = G.datum.rank if isinstance(G, CoxGroup) else int(G)
    gens = tuple(SSElt(tuple(Fraction(x, n) for x in row)) for row in basis)
    return SSGroup(r, tuple(g for g in gens if g != SSElt.identity(r)))


# orbits, stabilizers and centralizers ---------------------------------------------


def orbit(W: CoxGroup | ReflSubgroup, s: SSElt, limit: int | None = None) -> list[SSElt]:
    """Orbit of s under W (or a reflection subgroup), in discovery order."""
    G = W.parent if isinstance(W, ReflSubgroup) else W
    mats = [G.y_matrix(g) for g in W.gens] if isinstance(W, ReflSubgroup) else list(G.gen_ymats)
    seen = {s: None}
    out = [s]
    for x in out:
        for m in mats:
            y = mat_act(m, x)
            if y not in seen:
                seen[y] = None
                out.append(y)
                if len(out) > enumeration_budget(limit):
                    raise BudgetExceeded("orbit exceeds budget")
    return out


def _images_all(W: CoxGroup, s: SSElt) -> np.ndarray:
    """Integer numerators of w.s for every w (rows = table indices)."""
    a, d = s.as_int()
    ym = W.table().ymats
    return np.mod(ym @ np.array(a, dtype=np.int64), d)


def stabilizer_indices(W: CoxGroup, s: SSElt, within: Iterable[int] | None = None) -> list[int]:
    """Table indices of the stabilizer of s (optionally inside a subset)."""
    a, d = s.as_int()
    ym = W.table().ymats
    idx = np.arange(ym.shape[0]) if within is None else np.array(sorted(within), dtype=np.int64)
    imgs = np.mod(ym[idx] @ np.array(a, dtype=np.int64), d)
    return idx[np.all(imgs == np.array(a), axis=1)].tolist()


@dataclass
class ExtRefGroup:
    group: ReflSubgroup
    diagram_auts: list  # table indices, one per coset of the reflection part
    aut_perms: list  # permutations of the subsystem's simple root labels
    stabilizer: list = None

    @property
    def aut_order(self) -> int:
        return len(self.diagram_auts)

    def generators(self) -> list:
        W = self.group.parent
        T = W.table()
        return list(self.group.gens) + [T.perm(x) for x in self.diagram_auts if x]

    def aut_generators(self) -> list:
        """A small generating set of the automorphism permutations."""
        keys = sorted(self.group.labels)
        ident = tuple(keys)
        group, gens = {ident}, []
        for p in self.aut_perms:
            img = tuple(p[k] for k in keys)
            if img in group:
                continue
            gens.append(p)
            frontier = list(group)
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = tuple(g[k] for k in x)
                        if y not in group:
                            group.add(y)
                            nxt.append(y)
                frontier = nxt
        return gens

    def __str__(self) -> str:
        labels = ", ".join(map(str, self.group.labels))
        gens = [_cycles(p) for p in self.aut_generators()]
        return f"Extended(ReflectionSubgroup({labels}),<{','.join(gens) if gens else '()'}>)"


def _cycles(perm: dict) -> str:
    seen, out = set(), []
    for a in sorted(perm):
        if a in seen or perm[a] == a:
            continue
        cyc, b = [], a
        while b not in seen:
            seen.add(b)
            cyc.append(b)
            b = perm[b]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def vanishing_roots(W: CoxGroup, s: SSElt) -> list[int]:
    return [j for j in range(2 * W.N) if root_pairing(W, j, s) == 0]


def semisimple_centralizer(W: CoxGroup, s: SSElt) -> ExtRefGroup:
    """Stabilizer of s: the Weyl group of C(s)0 extended by the automorphisms
    of its simple system induced by the full stabilizer."""
    T = W.table()
    H = ReflSubgroup(W, vanishing_roots(W, s))
    stab = stabilizer_indices(W, s)
    simple = set(H.simple)
    auts, perms = [], []
    for x in stab:
        p = T.perm(x)
        if {p[j] for j in simple} == simple:
            auts.append(x)
            perms.append({j + 1: p[j] + 1 for j in H.simple})
    if len(auts) * H.order != len(stab):
        raise AssertionError("stabilizer is not W(C0) extended by diagram automorphisms")
    return ExtRefGroup(H, auts, perms, stab)


def double_coset_orbit_representatives(G: CoxGroup, s: SSElt, H: ReflSubgroup) -> list[SSElt]:
    """Points d.s for d over W_H \\ W / Stab(s): one per W_H-orbit inside
    the W-orbit of s."""
    stab = semisimple_centralizer(G, s).generators()
    ds = double_coset_representatives(G, list(H.gens), stab)
    return [weyl_act(G, d, s) for d in ds]


def _subgroup_indices(H: CoxGroup | ReflSubgroup) -> list[int]:
    if isinstance(H, CoxGroup):
        return list(range(H.table().size))
    T = H.parent.table()
    return sorted(T.index(g) for g in H.elements())


def _fixed_dim(mats: np.ndarray, r: int) -> int:
    """Dimension of the common fixed space: the rank of the averaging sum."""
    total = mats.sum(axis=0)
    return rank([[int(x) for x in row] for row in total.tolist()]) if r else 0


def is_quasi_isolated(H: CoxGroup | ReflSubgroup, s: SSElt, _cache: dict | None = None) -> bool:
    """Fixed space of the stabilizer of s in W_H equals that of W_H."""
    G = H.parent if isinstance(H, ReflSubgroup) else H
    T = G.table()
    r = G.datum.rank
    key = id(H)
    cache = _QI_CACHE.setdefault(key, {}) if _cache is None else _cache
    if "elems" not in cache:
        elems = cache["elems"] = np.array(_subgroup_indices(H), dtype=np.int64)
        cache["ym"] = T.ymats if isinstance(H, CoxGroup) else T.ymats[elems]
        cache["flat"] = cache["ym"].reshape(len(elems), -1)
        cache["rows"] = np.ascontiguousarray(cache["ym"]).reshape(-1, r)
        cache["fix"] = _fixed_dim(cache["ym"], r)
        cache["owner"] = H
    a, d = s.as_int()
    imgs = np.mod(cache["rows"] @ np.array(a, dtype=np.int64), d).reshape(-1, r)
    stab = np.all(imgs == np.array(a), axis=1)
    total = cache["flat"][stab].sum(axis=0).reshape(r, r)
    return rank([[int(x) for x in row] for row in total.tolist()]) == cache["fix"]


_QI_CACHE: dict = {}


# quasi-isolated representatives ---------------------------------------------------


def _kac_tuples(coeffs: Sequence[int], d: int, max_nonzero: int):
    """Nonnegative (a_0, ..., a_n) with sum a_i m_i = d (m_0 = 1)."""
    m = [1] + list(coeffs)
    n = len(m)

    def rec(i, rest, nz, acc):
        if i == n:
            if rest == 0:
                yield tuple(acc)
            return
        top = rest // m[i]
        for a in range(top + 1):
            nz2 = nz + (a > 0)
            if nz2 > max_nonzero:
                break
            acc.append(a)
            yield from rec(i + 1, rest - a * m[i], nz2, acc)
            acc.pop()

    yield from rec(0, d, 0, [])


def quasi_isolated_representatives(G: CoxGroup) -> list[SSElt]:
    """One point per W-orbit of quasi-isolated torsion points, from the
    alcove points of order dividing d <= h.  Each orbit is represented by its
    lexicographically least alcove point; the list is sorted."""
    d = G.datum
    if not d.is_semisimple():
        raise ValueError("quasi-isolated search requires a semisimple datum")
    if len(G.system.components) != 1:
        raise ValueError("quasi-isolated search requires an irreducible group")
    from .exactlin import determinant, rational_inverse
    omega = abs(determinant(d.Rv))  # |Y / Z R^vee|
    Rinv = rational_inverse(d.R)
    theta = G.system.roots[G.system.highest_root(0)]
    h = G.coxeter_number
    found: dict[SSElt, tuple] = {}
    for dd in range(1, h + 1):
        for kac in _kac_tuples(theta, dd, omega):
            if gcd(*kac) > 1:  # the same point arises for a smaller order
                continue
            a = [Fraction(x, dd) for x in kac[1:]]
            # R x = a (pairings with simple roots), x on the basis of Y
            x = [sum(Rinv[i][j] * a[j] for j in range(len(a))) for i in range(len(a))]
            s = SSElt(tuple(x))
            if s not in found and is_quasi_isolated(G, s):
                found[s] = kac
    reps: list[SSElt] = []
    seen: set = set()
    for s in sorted(found):
        if s in seen:
            continue
        orb = set(orbit(G, s))
        seen |= orb
        reps.append(min(p for p in found if p in orb))
    return sorted(reps)


# centralizer types from the extended diagram -------------------------------------


def _canonical_subsystem(W: CoxGroup, roots: frozenset) -> frozenset:
    """A W-conjugacy invariant of a root subsystem that separates classes.

    Conjugate v = (sum of positive subsystem roots) to the dominant chamber,
    then take the least member of the resulting set's orbit under the
    stabilizer of v, which is the standard parabolic W_K."""
    sysm = W.system
    n, N = W.rank, W.N
    c = sysm.cartan
    v = [0] * n
    for j in roots:
        if j < N:
            for k, x in enumerate(sysm.roots[j]):
                v[k] += x
    cur = set(roots)
    while True:
        pair = [sum(v[k] * c[i][k] for k in range(n)) for i in range(n)]
        neg = [i for i in range(n) if pair[i] < 0]
        if not neg:
            break
        i = neg[0]
        v[i] -= pair[i]
        g = W.gen_perms[i]
        cur = {g[j] for j in cur}
    K = [i for i in range(n) if pair[i] == 0]
    start = frozenset(cur)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for i in K:
                g = W.gen_perms[i]
                q = frozenset(g[j] for j in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return min(seen, key=lambda s: sorted(s))


def survives_characteristic(W: CoxGroup, H: ReflSubgroup, p: int) -> bool:
    """Every Smith invariant of the simple-root coordinate matrix of H is 0
    or prime to p."""
    if p == 0 or not H.simple:
        return True
    rows = [W.system.roots[j] for j in H.simple]
    D, _, _ = smith_normal_form(rows, W.rank)
    diag = [D[k][k] for k in range(min(len(D), W.rank))]
    return all(x == 0 or x % p for x in diag)


def centralizer_class_representatives(W: CoxGroup, p: int = 0, budget: str = "default"
                                      ) -> list[ReflSubgroup]:
    """Reflection subgroups generated by subsets of the extended diagram, one
    per W-class, filtered by the characteristic p."""
    if len(W.system.components) != 1:
        raise ValueError("W must be irreducible")
    if W.rank >= 8 and budget != "extended":
        raise BudgetExceeded("rank-8 extended-diagram search needs budget 'extended'")
    nodes = extended_diagram(W.system)[0]
    classes: dict[frozenset, ReflSubgroup] = {}
    for mask in range(1 << len(nodes)):
        J = [nodes[k] for k in range(len(nodes)) if mask >> k & 1]
        H = ReflSubgroup(W, J)
        key = _canonical_subsystem(W, H.roots)
        classes.setdefault(key, H)
    out = [H for H in classes.values() if survives_characteristic(W, H, p)]
    out.sort(key=lambda H: (-H.N, isomorphism_type(H), H.labels))
    return out
