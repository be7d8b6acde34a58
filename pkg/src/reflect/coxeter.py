"""Weyl groups as permutation groups on their roots.

An element is a tuple ``w`` of length 2N with ``w[j]`` the index of the image
of root ``j``.  Composition is ``(u*v)[j] = u[v[j]]``.  Simple reflection
labels are 1-based in words; root indices are 0-based internally.

Groups of moderate size can be fully tabulated (``CoxGroup.table()``), which
makes products with generators, descents, lengths and inverses array lookups.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .exactlin import IntMat, as_mat, identity as id_mat, mat_mul
from .rootsys import RootDatum, RootSystem, enumerate_roots, parse_type, root_datum_preset

DEFAULT_BUDGET = 4_000_000

Perm = tuple


class BudgetExceeded(RuntimeError):
    pass


def enumeration_budget(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("REFLECT_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


class CoxGroup:
    """The Weyl group of a root datum, acting on roots, on X and on Y."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.system: RootSystem = enumerate_roots(datum.cartan)
        self.N = self.system.N
        self.rank = self.system.rank
        sysm = self.system
        self.gen_perms: tuple = tuple(
            tuple(sysm.reflect(i, j) for j in range(2 * self.N)) for i in range(self.rank))
        r = datum.rank
        # s_i(y) = y - <alpha_i, y> alpha_i^vee on column vectors of Y
        self.gen_ymats: tuple = tuple(
            as_mat([[int(a == b) - datum.Rv[i][a] * datum.R[i][b] for b in range(r)]
                    for a in range(r)])
            for i in range(self.rank))
        self._table = None

    @classmethod
    def of_type(cls, t, isogeny: str = "adjoint") -> "CoxGroup":
        return cls(root_datum_preset(parse_type(t), isogeny))

    def __repr__(self) -> str:
        return f"CoxGroup({self.datum.name or self.datum.cartan})"

    # basic element arithmetic -------------------------------------------------

    @cached_property
    def identity(self) -> Perm:
        return tuple(range(2 * self.N))

    def gen(self, label: int) -> Perm:
        return self.gen_perms[label - 1]

    @staticmethod
    def mul(u: Perm, v: Perm) -> Perm:
        return tuple(u[j] for j in v)

    @staticmethod
    def inv(w: Perm) -> Perm:
        out = [0] * len(w)
        for j, k in enumerate(w):
            out[k] = j
        return tuple(out)

    def element_of_word(self, word: Iterable[int]) -> Perm:
        w = self.identity
        for s in word:
            if not 1 <= s <= self.rank:
                raise ValueError(f"invalid generator label {s}")
            w = self.mul(w, self.gen_perms[s - 1])
        return w

    def length(self, w: Perm) -> int:
        N = self.N
        return sum(1 for j in range(N) if w[j] >= N)

    def right_descent_set(self, w: Perm) -> set[int]:
        return {s + 1 for s in range(self.rank) if w[s] >= self.N}

    def left_descent_set(self, w: Perm) -> set[int]:
        return self.right_descent_set(self.inv(w))

    def first_left_descent(self, w: Perm) -> int | None:
        d = self.left_descent_set(w)
        return min(d) if d else None

    def reduced_word(self, w: Perm) -> list[int]:
        """Lexicographically first reduced word."""
        word = []
        while True:
            s = self.first_left_descent(w)
            if s is None:
                return word
            word.append(s)
            w = self.mul(self.gen_perms[s - 1], w)

    @cached_property
    def longest_element(self) -> Perm:
        w = self.identity
        while True:
            asc = [s for s in range(self.rank) if w[s] < self.N]
            if not asc:
                return w
            w = self.mul(w, self.gen_perms[asc[0]])

    def element_order(self, w: Perm) -> int:
        k, x = 1, w
        while x != self.identity:
            x = self.mul(x, w)
            k += 1
        return k

    def y_matrix(self, w: Perm) -> IntMat:
        """Matrix of w on Y (acting on column vectors)."""
        m = id_mat(self.datum.rank)
        for s in self.reduced_word(w):
            m = mat_mul(m, self.gen_ymats[s - 1])
        return m

    def reflection(self, root: int) -> Perm:
        sysm = self.system
        return tuple(sysm.reflect(root, j) for j in range(2 * self.N))

    # invariants ---------------------------------------------------------------

    @cached_property
    def degrees(self) -> tuple:
        """Reflection degrees via the dual partition of root heights."""
        count = Counter(self.system.height(i) for i in range(self.N))
        hmax = max(count) if count else 0
        exps = []
        for m in range(1, hmax + 1):
            exps += [m] * (count[m] - count.get(m + 1, 0))
        return tuple(sorted(e + 1 for e in exps))

    @cached_property
    def order(self) -> int:
        return prod(self.degrees)

    @cached_property
    def coxeter_number(self) -> int:
        return max(self.degrees) if self.degrees else 1

    # tabulation ---------------------------------------------------------------

    def table(self, budget: int | None = None) -> "ElementTable":
        if self._table is None:
            limit = enumeration_budget(budget)
            if self.order > limit:
                raise BudgetExceeded(f"|W| = {self.order} exceeds enumeration budget {limit}")
            self._table = ElementTable(self)
        return self._table

    def has_table(self, budget: int | None = None) -> bool:
        return self._table is not None or self.order <= enumeration_budget(budget)

    # orbit/closure helpers on small subgroups ---------------------------------

    def closure(self, gens: Sequence[Perm], limit: int | None = None) -> set:
        """All elements generated by ``gens`` (as a set of permutations)."""
        limit = enumeration_budget(limit)
        elems = {self.identity}
        frontier = [self.identity]
        gens = [g for g in gens if g != self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            if len(elems) > limit:
                raise BudgetExceeded("subgroup closure exceeded budget")
            frontier = nxt
        return elems


class ElementTable:
    """All elements of W, indexed 0..|W|-1 by (length, key).  Index 0 is the
    identity and the last index is the longest element."""

    def __init__(self, W: CoxGroup):
        self.W = W
        N, n = W.N, W.rank
        two_n = 2 * N
        self.dtype = np.uint8 if two_n <= 256 else np.uint16
        gens = np.array(W.gen_perms, dtype=np.int64)
        self._neg = np.concatenate([np.arange(N, two_n), np.arange(0, N)]).astype(self.dtype)
        self._radix = np.array([two_n ** i for i in range(n)], dtype=np.uint64)
        neg = self._neg

        levels = [np.arange(N, dtype=self.dtype)[None, :]]
        parents = [np.array([-1], dtype=np.int64)]
        pgens = [np.array([-1], dtype=np.int64)]
        offset = 0
        while True:
            F = levels[-1]
            m = len(F)
            cands, cpar, cgen = [], [], []
            for s in range(n):
                keep = np.nonzero(F[:, s] < N)[0]
                if not len(keep):
                    continue
                rows = F[keep]
                cols = gens[s][:N]
                new = np.where(cols < N, rows[:, np.minimum(cols, N - 1)],
                               neg[rows[:, np.clip(cols - N, 0, N - 1)]])
                cands.append(new.astype(self.dtype))
                cpar.append(keep + offset)
                cgen.append(np.full(len(keep), s))
            offset += m
            if not cands:
                break
            C = np.concatenate(cands)
            keys = self._keys(C[:, :n])
            _, first = np.unique(keys, return_index=True)
            levels.append(C[first])
            parents.append(np.concatenate(cpar)[first])
            pgens.append(np.concatenate(cgen)[first])
        self.perms = np.concatenate(levels)
        self.size = len(self.perms)
        if self.size != W.order:
            raise AssertionError(f"table size {self.size} != |W| = {W.order}")
        self.parent = np.concatenate(parents)
        self.parent_gen = np.concatenate(pgens)
        self.length = np.concatenate([np.full(len(L), k, dtype=np.int32) for k, L in enumerate(levels)])
        self.level_start = np.cumsum([0] + [len(L) for L in levels])
        keys = self._keys(self.perms[:, :n])
        self._order = np.argsort(keys)
        self._sorted = keys[self._order]

        self.right_mul = np.empty((self.size, n), dtype=np.int32)
        self.left_mul = np.empty((self.size, n), dtype=np.int32)
        gens_small = gens.astype(self.dtype)
        for s in range(n):
            cols = gens[s][:n]
            imgs = np.where(cols < N, self.perms[:, np.minimum(cols, N - 1)],
                            neg[self.perms[:, np.clip(cols - N, 0, N - 1)]])
            self.right_mul[:, s] = self.lookup_keys(self._keys(imgs))
            self.left_mul[:, s] = self.lookup_keys(self._keys(gens_small[s][self.perms[:, :n]]))

        self.inverse = np.empty(self.size, dtype=np.int32)
        self.inverse[0] = 0
        self.support = np.zeros(self.size, dtype=np.int64)
        for k in range(1, len(levels)):
            sl = slice(self.level_start[k], self.level_start[k + 1])
            par, g = self.parent[sl], self.parent_gen[sl]
            self.inverse[sl] = self.left_mul[self.inverse[par], g]
            self.support[sl] = self.support[par] | (1 << g)
        self.right_desc = np.zeros(self.size, dtype=np.int64)
        for s in range(n):
            self.right_desc |= (self.perms[:, s] >= N).astype(np.int64) << s
        self.left_desc = self.right_desc[self.inverse]
        self.w0 = self.size - 1

        self._word_cache: dict[int, tuple] = {}

    # list copies for fast scalar access
    @cached_property
    def rm(self) -> list:
        return self.right_mul.tolist()

    @cached_property
    def lm(self) -> list:
        return self.left_mul.tolist()

    @cached_property
    def inv_l(self) -> list:
        return self.inverse.tolist()

    @cached_property
    def len_l(self) -> list:
        return self.length.tolist()

    @cached_property
    def ld(self) -> list:
        return self.left_desc.tolist()

    @cached_property
    def rd(self) -> list:
        return self.right_desc.tolist()

    def _keys(self, simple_images: np.ndarray) -> np.ndarray:
        return (simple_images.astype(np.uint64) * self._radix).sum(axis=1, dtype=np.uint64)

    def lookup_keys(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted, keys)
        pos = np.minimum(pos, self.size - 1)
        if not np.all(self._sorted[pos] == keys):
            raise KeyError("permutation is not an element of W")
        return self._order[pos].astype(np.int32)

    # conversions ---------------------------------------------------------------

    def index(self, w: Perm) -> int:
        key = self._keys(np.array([w[: self.W.rank]], dtype=np.int64))
        return int(self.lookup_keys(key)[0])

    def perm(self, x: int) -> Perm:
        pos = self.perms[x].tolist()
        N = self.W.N
        return tuple(pos + [p + N if p < N else p - N for p in pos])

    def word(self, x: int) -> tuple:
        """Lexicographically first reduced word (1-based labels)."""
        w = self._word_cache.get(x)
        if w is None:
            out, y = [], x
            ld, lm = self.ld, self.lm
            while y:
                m = ld[y]
                s = (m & -m).bit_length() - 1
                out.append(s + 1)
                y = lm[y][s]
            w = tuple(out)
            if len(self._word_cache) < 1_000_000:
                self._word_cache[x] = w
        return w

    def of_word(self, word: Iterable[int]) -> int:
        x, rm = 0, self.rm
        for s in word:
            x = rm[x][s - 1]
        return x

    # products ------------------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        rm = self.rm
        for s in self.word(b):
            a = rm[a][s - 1]
        return a

    def right_mult_all(self, g: int) -> np.ndarray:
        """Array ``x -> x*g`` over all indices."""
        arr = np.arange(self.size, dtype=np.int32)
        for s in self.word(g):
            arr = self.right_mul[arr, s - 1]
        return arr

    def left_mult_all(self, g: int) -> np.ndarray:
        """Array ``x -> g*x`` over all indices."""
        arr = np.arange(self.size, dtype=np.int32)
        for s in reversed(self.word(g)):
            arr = self.left_mul[arr, s - 1]
        return arr

    def conjugation_all(self, g: int) -> np.ndarray:
        """Array ``x -> g x g^-1``."""
        return self.right_mult_all(self.inv_l[g])[self.left_mult_all(g)]

    def automorphism_table(self, root_perm: Sequence[int]) -> np.ndarray:
        """Array ``x -> a x a^-1`` for the automorphism of W induced by a
        permutation ``a`` of roots which normalizes W (e.g. a diagram
        automorphism)."""
        a = np.asarray(root_perm, dtype=np.int64)
        ainv = np.argsort(a)
        n, N = self.W.rank, self.W.N
        cols = ainv[:n]
        imgs = np.where(cols < N, self.perms[:, np.minimum(cols, N - 1)],
                        self._neg[self.perms[:, np.clip(cols - N, 0, N - 1)]])
        # row x holds (a x a^-1)(alpha_j) = a(x(a^-1 alpha_j)) for simple j
        imgs = a[imgs.astype(np.int64)]
        return self.lookup_keys(self._keys(imgs))

    # y-matrices -----------------------------------------------------------------

    @cached_property
    def ymats(self) -> np.ndarray:
        """Integer matrices of every element on Y, shape (|W|, r, r)."""
        r = self.W.datum.rank
        gm = np.array(self.W.gen_ymats, dtype=np.int64).reshape(self.W.rank, r, r)
        out = np.empty((self.size, r, r), dtype=np.int64)
        out[0] = np.eye(r, dtype=np.int64)
        for k in range(1, len(self.level_start) - 1):
            sl = slice(self.level_start[k], self.level_start[k + 1])
            par, g = self.parent[sl], self.parent_gen[sl]
            out[sl] = np.einsum("kab,kbc->kac", out[par], gm[g])
        return out

    # partitions -----------------------------------------------------------------

    def components(self, maps: Sequence[np.ndarray]) -> tuple[int, np.ndarray]:
        """Connected components of the graph with edges x -- m[x]."""
        src = np.concatenate([np.arange(self.size)] * len(maps)) if maps else np.array([], int)
        dst = np.concatenate(maps) if maps else np.array([], int)
        g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(self.size, self.size))
        return connected_components(g, directed=True, connection="weak")


# conjugacy classes -------------------------------------------------------------


@dataclass
class ClassInfo:
    classtext: list  # representative words
    classes: list  # sizes
    orders: list
    reps: list  # table indices
    class_of: np.ndarray = field(repr=False)
    minimal: list = field(repr=False, default_factory=list)  # minimal-length members

    def __len__(self):
        return len(self.classes)


def automorphism_order(sigma: np.ndarray | None) -> int:
    if sigma is None:
        return 1
    k, cur = 1, sigma
    while np.any(cur != np.arange(len(sigma))):
        cur = sigma[cur]
        k += 1
    return k


def twisted_power_lengths(T: ElementTable, x: int, sigma: np.ndarray | None,
                          sigma_order: int = 1) -> tuple[int, list]:
    """Order of ``x.sigma`` in W.<sigma> and the lengths of the W-parts of its
    proper powers ``x sigma(x) ... sigma^(k-1)(x)``."""
    lengths, y, z, k = [], 0, x, 0
    while True:
        y = T.mul(y, z)
        k += 1
        if y == 0 and k % sigma_order == 0:
            return k, lengths
        lengths.append(T.len_l[y])
        if sigma is not None:
            z = int(sigma[z])


def classes_from_table(W: CoxGroup, sigma: np.ndarray | None = None) -> ClassInfo:
    """(Twisted) conjugacy classes: orbits of x -> w x sigma(w)^-1.

    Representatives have minimal length; ties go to the element whose
    powers are longest in total, then to the lexicographically first word.
    Classes are ordered by (representative length, element order, word)."""
    T = W.table()
    maps = []
    for s in range(W.rank):
        right = T.right_mul[:, s] if sigma is None else T.right_mult_all(int(sigma[T.of_word([s + 1])]))
        maps.append(T.left_mul[right, s])
    sig_order = automorphism_order(sigma)
    ncomp, labels = T.components(maps)
    sizes = np.bincount(labels, minlength=ncomp)
    minlen = np.full(ncomp, 10**9, dtype=np.int64)
    np.minimum.at(minlen, labels, T.length)
    candidates: dict[int, list] = {}
    is_min = T.length == minlen[labels]
    for x in np.nonzero(is_min)[0].tolist():
        candidates.setdefault(int(labels[x]), []).append(x)
    info = []
    for c in range(ncomp):
        best = None
        for x in candidates[c]:
            order, pl = twisted_power_lengths(T, x, sigma, sig_order)
            key = (-sum(pl), T.word(x))
            if best is None or key < best[0]:
                best = (key, x, order)
        _, x, order = best
        info.append((T.len_l[x], order, T.word(x), x, int(sizes[c]), c))
    info.sort()
    remap = np.empty(ncomp, dtype=np.int64)
    for new, item in enumerate(info):
        remap[item[5]] = new
    return ClassInfo(classtext=[list(i[2]) for i in info], classes=[i[4] for i in info],
                     orders=[i[1] for i in info], reps=[i[3] for i in info],
                     class_of=remap[labels], minimal=[candidates[i[5]] for i in info])


def conjugacy_classes(W: CoxGroup) -> ClassInfo:
    return classes_from_table(W)


def centralizer_order(W: CoxGroup, w: Perm | int) -> int:
    """Order of {g : g w g^-1 = w}, by a direct scan of W."""
    T = W.table()
    x = w if isinstance(w, (int, np.integer)) else T.index(w)
    return int(np.count_nonzero(T.left_mult_all(x) == T.right_mult_all(x)))


def element_centralizer(W: CoxGroup, w: Perm | int) -> list:
    T = W.table()
    x = w if isinstance(w, (int, np.integer)) else T.index(w)
    idx = np.nonzero(T.left_mult_all(x) == T.right_mult_all(x))[0]
    return [T.perm(int(i)) for i in idx]


# orbit-stabilizer order oracle -------------------------------------------------


def order_by_orbit_chain(cartan: Sequence[Sequence[int]]) -> int:
    """|W| as a product of orbit sizes of fundamental weights along a chain of
    standard parabolic subgroups (independent of reflection degrees)."""
    c = [list(r) for r in cartan]
    n = len(c)
    if n == 0:
        return 1
    k = n - 1
    start = tuple(int(i == k) for i in range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(n):
                if lam[i]:
                    # alpha_i has fundamental-weight coordinates (c[j][i])_j
                    mu = tuple(lam[j] - lam[i] * c[j][i] for j in range(n))
                    if mu not in seen:
                        seen.add(mu)
                        nxt.append(mu)
        frontier = nxt
    sub = [row[:k] for row in c[:k]]
    return len(seen) * order_by_orbit_chain(sub)


# reflection subgroups ----------------------------------------------------------


class ReflSubgroup:
    """Reflection subgroup generated by reflections in given parent roots."""

    def __init__(self, parent: CoxGroup, roots: Iterable[int]):
        self.parent = parent
        sysm = parent.system
        N = parent.N
        gens = sorted(set(roots))
        closed = set(gens) | {sysm.negative(j) for j in gens}
        frontier = list(closed)
        while frontier:
            nxt = []
            for j in frontier:
                for g in gens:
                    k = sysm.reflect(g, j)
                    if k not in closed:
                        closed.add(k)
                        nxt.append(k)
            frontier = nxt
        pos = sorted(j for j in closed if j < N)
        posset = set(pos)
        sums = set()
        for a in pos:
            for b in pos:
                if a < b:
                    key = tuple(x + y for x, y in zip(sysm.roots[a], sysm.roots[b]))
                    k = sysm.index.get(key)
                    if k is not None and k in posset:
                        sums.add(k)
        self.roots = frozenset(closed)
        self.positive = tuple(pos)
        self.simple = tuple(j for j in pos if j not in sums)
        self.cartan = as_mat([[sysm.pairing(b, a) for b in self.simple] for a in self.simple])
        self.N = len(pos)

    @property
    def labels(self) -> list[int]:
        return [j + 1 for j in self.simple]

    @cached_property
    def gens(self) -> list:
        return [self.parent.reflection(j) for j in self.simple]

    @cached_property
    def order(self) -> int:
        if not self.simple:
            return 1
        return CoxGroup(RootDatum(id_mat(len(self.simple)), self.cartan)).order

    @cached_property
    def components(self) -> list[list[int]]:
        rs = enumerate_roots(self.cartan) if self.simple else None
        return [list(c) for c in rs.components] if rs else []

    def elements(self) -> set:
        return self.parent.closure(self.gens)


def reflection_subgroup(W: CoxGroup, labels: Iterable[int]) -> ReflSubgroup:
    """Subgroup generated by reflections in the roots with 1-based labels."""
    idx = [j - 1 for j in labels]
    if any(not 0 <= j < 2 * W.N for j in idx):
        raise ValueError("root label out of range")
    return ReflSubgroup(W, idx)


def _component_type(sub: list[list[int]]) -> tuple[str, int]:
    rs = enumerate_roots(sub)
    n, N = rs.rank, rs.N
    laced = all(sub[i][j] * sub[j][i] <= 1 for i in range(n) for j in range(n) if i != j)
    if laced:
        if N == n * (n + 1) // 2:
            return "A", n
        if n >= 4 and N == n * (n - 1):
            return "D", n
        return {36: ("E", 6), 63: ("E", 7), 120: ("E", 8)}[N]
    if n == 2 and N == 6:
        return "G", 2
    if n == 4 and N == 24:
        return "F", 4
    ell = rs.simple_lengths
    short = sum(1 for x in ell if x == 1)
    if n == 2 or short == 1:
        return "B", n
    return "C", n


def isomorphism_type(H: ReflSubgroup, compact: bool = False) -> str:
    """Component labels sorted by rank; "~" marks simply-laced components made
    of short roots of a non-simply-laced parent."""
    if not H.simple:
        return ""
    par = H.parent.system
    items = []
    for comp in H.components:
        sub = [[H.cartan[i][j] for j in comp] for i in comp]
        fam, r = _component_type(sub)
        laced = fam in "ADE"
        short = laced and all(par.is_short(H.simple[i]) for i in comp)
        items.append((-r, fam, short))
    items.sort(key=lambda t: (t[0], t[1], t[2]))
    labels = [("~" if s else "") + f"{f}{-r}" for r, f, s in items]
    if not compact:
        return "+".join(labels)
    out, i = [], 0
    while i < len(labels):
        j = i
        while j < len(labels) and labels[j] == labels[i]:
            j += 1
        out.append(f"{j - i}{labels[i]}" if j - i > 1 else labels[i])
        i = j
    return "+".join(out)


# normalizers -------------------------------------------------------------------


def set_stabilizer(W: CoxGroup, root_set: Iterable[int], limit: int | None = None) -> tuple[list, int]:
    """Generators and order of the stabilizer in W of a set of roots, by
    orbit-stabilizer on root sets with Schreier generators."""
    start = frozenset(root_set)
    gen_perms = W.gen_perms
    parent = {start: None}
    order = [start]
    for p in order:
        for s, g in enumerate(gen_perms):
            q = frozenset(g[j] for j in p)
            if q not in parent:
                parent[q] = (p, s)
                order.append(q)
                if len(order) > enumeration_budget(limit):
                    raise BudgetExceeded("root-set orbit exceeded budget")
    target = W.order // len(order)

    def transversal(p) -> Perm:
        w = W.identity
        while parent[p] is not None:
            p, s = parent[p]
            w = W.mul(w, gen_perms[s])
        return w

    gens: list = []
    elems = {W.identity}
    if target == 1:
        return gens, 1
    for p in order:
        tp = transversal(p)
        for s, g in enumerate(gen_perms):
            q = frozenset(g[j] for j in p)
            h = W.mul(W.inv(transversal(q)), W.mul(g, tp))
            if h in elems:
                continue
            gens.append(h)
            elems = W.closure(gens)
            if len(elems) == target:
                return gens, target
    raise AssertionError("Schreier generators did not reach the stabilizer order")


def normalizer_of_subsystem(W: CoxGroup, H: ReflSubgroup) -> list:
    """Generators of N_W(W_H): reflections of H plus the stabilizer of its
    simple system."""
    gens, _ = set_stabilizer(W, H.simple)
    return list(H.gens) + gens


# double cosets -----------------------------------------------------------------


def double_coset_representatives(W: CoxGroup, H: Sequence[Perm | int], K: Sequence[Perm | int]) -> list[int]:
    """One table index per H-K double coset (minimal length, then minimal
    index), given generators of H and K."""
    T = W.table()
    as_idx = [g if isinstance(g, (int, np.integer)) else T.index(g) for g in list(H) + list(K)]
    hs, ks = as_idx[: len(H)], as_idx[len(H):]
    maps = [T.left_mult_all(h) for h in hs] + [T.right_mult_all(k) for k in ks]
    ncomp, labels = T.components(maps)
    best = np.full(ncomp, T.size, dtype=np.int64)
    np.minimum.at(best, labels, np.arange(T.size))  # indices are sorted by length
    return sorted(best.tolist(), key=lambda x: (T.len_l[x], x))
