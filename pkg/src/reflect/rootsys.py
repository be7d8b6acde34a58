"""Cartan matrices, root data and crystallographic root systems.

Conventions.  ``cartan[i][j] = <alpha_j, alpha_i^vee>`` (rows are coroots,
columns roots), so ``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.  A root
datum is a pair of integer matrices ``R`` (simple roots on a basis of X(T)) and
``Rv`` (simple coroots on a basis of Y(T)); the pairing is the plain dot
product, hence ``cartan == Rv * R^T``.

Simple-root numbering is Bourbaki's (for type E, node 2 hangs off node 4).  For B_n the last root is short,
for C_n it is long, for F4 roots 1,2 are long and for G2 root 2 is long.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactlin import IntMat, as_mat, identity, mat_mul, transpose

FAMILIES = "ABCDEFG"


@dataclass(frozen=True)
class CartanType:
    """Sequence of irreducible components ``(family, rank, short)``."""

    components: tuple

    def __post_init__(self):
        comps = tuple((f, int(r), bool(s)) for f, r, *rest in self.components
                      for s in [rest[0] if rest else False])
        for fam, r, _ in comps:
            _check_component(fam, r)
        object.__setattr__(self, "components", comps)

    @property
    def rank(self) -> int:
        return sum(r for _, r, _ in self.components)

    def __str__(self) -> str:
        return "+".join(("~" if s else "") + f"{f}{r}" for f, r, s in self.components)


def _check_component(family: str, rank: int) -> None:
    if family not in FAMILIES or rank < 1:
        raise ValueError(f"invalid Cartan type {family}{rank}")
    ok = {"A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 4,
          "E": 6 <= rank <= 8, "F": rank == 4, "G": rank == 2}[family]
    if not ok:
        raise ValueError(f"invalid Cartan type {family}{rank}")


def parse_type(t: str | CartanType | tuple) -> CartanType:
    """Accept ``"E6"``, ``"A2+~A2"``, ``("A", 3)`` or a CartanType."""
    if isinstance(t, CartanType):
        return t
    if isinstance(t, tuple):
        return CartanType((t,))
    comps = []
    for part in t.replace(" ", "").split("+"):
        m = re.fullmatch(r"(\d*)(~?)([A-G])(\d+)", part)
        if not m:
            raise ValueError(f"cannot parse Cartan type {t!r}")
        times = int(m.group(1) or 1)
        comps.extend([(m.group(3), int(m.group(4)), bool(m.group(2)))] * times)
    return CartanType(tuple(comps))


def _irreducible_cartan(family: str, n: int) -> list[list[int]]:
    _check_component(family, n)
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, a=-1, b=-1):  # c[i][j] = a, c[j][i] = b
        c[i][j], c[j][i] = a, b

    if family in "ABCD" or family == "F":
        chain = n if family != "D" else n - 1
        for i in range(chain - 1):
            bond(i, i + 1)
    if family == "B":
        bond(n - 1, n - 2, -2, -1)
    elif family == "C":
        bond(n - 2, n - 1, -2, -1)
    elif family == "D":
        bond(n - 3, n - 1)
    elif family == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif family == "F":
        bond(2, 1, -2, -1)
    elif family == "G":
        bond(0, 1, -3, -1)
    return c


def cartan_matrix(t) -> IntMat:
    """Block-diagonal Cartan matrix of a (possibly reducible) type."""
    t = parse_type(t)
    n = t.rank
    out = [[0] * n for _ in range(n)]
    off = 0
    for fam, r, _ in t.components:
        block = _irreducible_cartan(fam, r)
        for i in range(r):
            for j in range(r):
                out[off + i][off + j] = block[i][j]
        off += r
    return as_mat(out)


def is_cartan_matrix(c: Sequence[Sequence[int]]) -> bool:
    n = len(c)
    for i in range(n):
        if c[i][i] != 2:
            return False
        for j in range(n):
            if i != j and (c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0)):
                return False
    return True


@dataclass(frozen=True)
class RootDatum:
    R: IntMat
    Rv: IntMat
    name: str = ""

    def __post_init__(self):
        R, Rv = as_mat(self.R), as_mat(self.Rv)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "Rv", Rv)
        if len(R) != len(Rv) or (R and len(R[0]) != len(Rv[0])):
            raise ValueError("R and Rv must have the same shape")
        if not is_cartan_matrix(self.cartan):
            raise ValueError(f"Rv*R^T is not a Cartan matrix: {self.cartan}")

    @property
    def semisimple_rank(self) -> int:
        return len(self.R)

    @property
    def rank(self) -> int:
        return len(self.R[0]) if self.R else 0

    @cached_property
    def cartan(self) -> IntMat:
        return mat_mul(self.Rv, transpose(self.R))

    def is_semisimple(self) -> bool:
        return self.rank == self.semisimple_rank


def root_datum_preset(t, isogeny: str = "adjoint") -> RootDatum:
    t = parse_type(t)
    c = cartan_matrix(t)
    n = len(c)
    if isogeny == "adjoint":
        return RootDatum(identity(n), c, str(t))
    if isogeny == "sc":
        return RootDatum(transpose(c), identity(n), f"{t}sc")
    raise ValueError(f"unknown isogeny {isogeny!r} (expected 'adjoint' or 'sc')")


def root_datum_named(name: str, n: int) -> RootDatum:
    """``gl``, ``sl`` or ``pgl`` of size ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if name == "gl":
        rows = [[(j == i + 1) - (j == i) for j in range(n)] for i in range(n - 1)]
        if not rows:
            raise ValueError("gl(1) is a torus; no roots")
        return RootDatum(rows, rows, f"gl{n}")
    if name in ("sl", "pgl"):
        if n < 2:
            raise ValueError(f"{name}(1) has no roots")
        return root_datum_preset(("A", n - 1), "sc" if name == "sl" else "adjoint")
    raise ValueError(f"unknown root datum name {name!r}")


@dataclass(frozen=True)
class RootSystem:
    """Roots in simple-root coordinates: positive roots by height, then
    descending lexicographic order, followed by their negatives."""

    cartan: IntMat
    roots: tuple
    coroots: tuple
    N: int
    index: dict = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def height(self, i: int) -> int:
        return sum(self.roots[i])

    def negative(self, i: int) -> int:
        return i + self.N if i < self.N else i - self.N

    def pairing(self, i: int, j: int) -> int:
        """``<root_i, coroot_j>``."""
        a, bv = self.roots[i], self.coroots[j]
        c = self.cartan
        n = len(c)
        return sum(a[k] * bv[l] * c[l][k] for k in range(n) for l in range(n) if a[k] and bv[l])

    def reflect(self, j: int, i: int) -> int:
        """Index of ``s_{root_j}(root_i)``."""
        p = self.pairing(i, j)
        a, b = self.roots[i], self.roots[j]
        return self.index[tuple(x - p * y for x, y in zip(a, b))]

    @cached_property
    def components(self) -> tuple:
        """Simple-root index sets of the irreducible components."""
        n = self.rank
        seen, comps = set(), []
        for s in range(n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if j not in seen and self.cartan[i][j]:
                        seen.add(j)
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def simple_lengths(self) -> tuple:
        """Squared lengths of simple roots, shortest root = 1 per component."""
        n = self.rank
        ell = [None] * n
        for comp in self.components:
            ell[comp[0]] = Fraction(1)
            stack = [comp[0]]
            while stack:
                i = stack.pop()
                for j in comp:
                    if ell[j] is None and self.cartan[i][j]:
                        ell[j] = ell[i] * self.cartan[i][j] / self.cartan[j][i]
                        stack.append(j)
            m = min(ell[j] for j in comp)
            for j in comp:
                ell[j] /= m
        return tuple(ell)

    def norm(self, i: int) -> Fraction:
        a, ell, c = self.roots[i], self.simple_lengths, self.cartan
        n = self.rank
        return sum(a[k] * a[l] * c[k][l] * ell[k] / 2 for k in range(n) for l in range(n)
                   if a[k] and a[l])

    def component_of(self, i: int) -> int:
        a = self.roots[i]
        return next(ci for ci, comp in enumerate(self.components) if any(a[k] for k in comp))

    def is_short(self, i: int) -> bool:
        comp = self.components[self.component_of(i)]
        longest = max(self.simple_lengths[k] for k in comp)
        return self.norm(i) < longest

    def highest_root(self, component: int = 0) -> int:
        comp = self.components[component]
        best = None
        for i in range(self.N):
            if any(self.roots[i][k] for k in comp):
                if best is None or self.height(i) > self.height(best):
                    best = i
        return best


def enumerate_roots(cartan: Sequence[Sequence[int]], bound: int = 100000) -> RootSystem:
    c = as_mat(cartan)
    if not is_cartan_matrix(c):
        raise ValueError("not a Cartan matrix")
    n = len(c)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    coroot = {s: s for s in simple}
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            bv = coroot[b]
            for i in range(n):
                p = sum(b[j] * c[i][j] for j in range(n))
                r = tuple(b[j] - (p if j == i else 0) for j in range(n))
                if r not in coroot:
                    pv = sum(bv[j] * c[j][i] for j in range(n))
                    coroot[r] = tuple(bv[j] - (pv if j == i else 0) for j in range(n))
                    nxt.append(r)
                    if len(coroot) > bound:
                        raise ValueError("root closure exceeded bound; matrix is not of finite type")
        frontier = nxt
    pos = sorted((r for r in coroot if all(x >= 0 for x in r)),
                 key=lambda r: (sum(r), tuple(-x for x in r)))
    roots = tuple(pos) + tuple(tuple(-x for x in r) for r in pos)
    coroots = tuple(coroot[r] for r in roots)
    index = {r: i for i, r in enumerate(roots)}
    return RootSystem(c, roots, coroots, len(pos), index)


def highest_root(c) -> int:
    """Index of the highest root of the first irreducible component."""
    return enumerate_roots(c).highest_root(0)


def extended_diagram(c) -> list[list[int]]:
    """Per component: its simple root indices plus the index of ``-theta``."""
    rs = c if isinstance(c, RootSystem) else enumerate_roots(c)
    return [list(comp) + [rs.highest_root(ci) + rs.N] for ci, comp in enumerate(rs.components)]


def root_x_coords(datum: RootDatum, coords: Sequence[int]) -> tuple:
    """Root given in simple-root coordinates, written on the basis of X(T)."""
    r = datum.rank
    return tuple(sum(coords[i] * datum.R[i][k] for i in range(len(coords))) for k in range(r))


def coroot_y_coords(datum: RootDatum, coords: Sequence[int]) -> tuple:
    r = datum.rank
    return tuple(sum(coords[i] * datum.Rv[i][k] for i in range(len(coords))) for k in range(r))


def _bond(family: str, i: int, n: int) -> str:
    """Connector between consecutive chain nodes i and i+1 (1-based)."""
    if family == "B" and i == n - 1:
        return " => "
    if family == "C" and i == n - 1:
        return " <= "
    if family == "F" and i == 2:
        return " => "
    if family == "G":
        return " <<< "
    return " - "


def _diagram_block(family: str, n: int, off: int) -> list[str]:
    lab = [str(off + i + 1) for i in range(n)]
    name = f"{family}{n}"
    if family == "E":
        chain = [lab[0]] + lab[2:]
        line = " - ".join(chain)
        col = len(" - ".join(chain[:2])) + 3  # position of node 4
        top = name.ljust(col) + lab[1]
        return [top, " " * col + "|", line]
    if family == "D" and n >= 4:
        head = " - ".join(lab[: n - 2])
        col = len(head)
        return [name.ljust(col + 1) + lab[n - 1], " " * col + "/", head,
                " " * col + "\\", " " * (col + 1) + lab[n - 2]]
    body = lab[0]
    for i in range(1, n):
        body += _bond(family, i, n) + lab[i]
    return [f"{name}  {body}"]


def dynkin_diagram(t) -> str:
    """Dynkin diagram with Bourbaki labels, one block per component."""
    t = parse_type(t)
    lines, off = [], 0
    for fam, r, short in t.components:
        block = _diagram_block(fam, r, off)
        if short:
            block[0] = "~" + block[0]
        lines += block
        off += r
    return "\n".join(lines)
