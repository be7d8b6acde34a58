import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from reflect.exactlin import (CycProduct, Poly, characteristic_polynomial, cyclotomic,
                              cyclotomic_factorization, determinant, hermite_normal_form, identity,
                              integer_inverse, integer_kernel, lattice_complement, mat_mul, rank,
                              smith_diagonal, smith_normal_form, transpose)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def unimodular(n):
    # products of elementary matrices
    ops = st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(-3, 3)), max_size=8)

    def build(lst):
        m = [list(r) for r in identity(n)]
        for i, j, f in lst:
            if i != j:
                m[i] = [x + f * y for x, y in zip(m[i], m[j])]
        return m
    return ops.map(build)


def minors_invariants(m):
    """Invariant factors from gcds of k x k minors."""
    nr, nc = len(m), len(m[0])
    M = sympy.Matrix(m)
    prev, out = 1, []
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                g = math.gcd(g, int(M.extract(list(rows), list(cols)).det()))
        if g == 0:
            out += [0] * (min(nr, nc) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


# examples ---------------------------------------------------------------------------


def test_smith_examples():
    assert smith_diagonal([[2, -1], [-1, 2]]) == (1, 3)
    d, p, q = smith_normal_form(identity(3))
    assert d == identity(3)
    assert smith_diagonal([[2, 0], [0, 2]]) == (2, 2)


def test_hermite_examples():
    assert hermite_normal_form([[0, 1, 0, -1, 0, 0], [0, 0, 0, 1, 0, 0]]) == (
        (0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0))
    assert hermite_normal_form(identity(4)) == identity(4)
    assert hermite_normal_form([[2, 4]]) == ((2, 4),)


def test_kernel_examples():
    assert integer_kernel([[1, 1]]) == ((1, -1),)
    assert integer_kernel([[2, 1], [1, 1]]) == ()
    e6_rows = [[int(i == j) for j in range(6)] for i in (0, 2, 4, 5)]
    assert integer_kernel(e6_rows) == ((0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0))


def test_complement_examples():
    assert lattice_complement([[1, 0, 0, 0], [0, 1, 0, 0]], 4) == ((0, 0, 1, 0), (0, 0, 0, 1))
    c = lattice_complement([[1, 1]], 2)
    assert abs(determinant([[1, 1]] + [list(r) for r in c])) == 1
    z0 = [[0, 1, 0, -1, 0, 0], [0, 0, 0, 1, 0, 0]]
    c = lattice_complement(z0, 6)
    assert len(c) == 4 and abs(determinant(z0 + [list(r) for r in c])) == 1
    with pytest.raises(ValueError, match="saturated"):
        lattice_complement([[2, 0]], 2)


def test_charpoly_examples():
    q = Poly.q()
    assert characteristic_polynomial(identity(2)) == (q - 1) ** 2
    assert characteristic_polynomial([[0, 1], [1, 0]]) == q ** 2 - 1
    # s on Y of gl2: swaps the two coordinates
    assert characteristic_polynomial([[0, 1], [1, 0]]).coeffs == (-1, 0, 1)


def test_cyclotomic_examples():
    q = Poly.q()
    f = q ** 2 + q + 1
    assert cyclotomic_factorization(f) == CycProduct(1, 0, ((3, 1),))
    g = (q - 1) ** 2 * (q ** 2 + q + 1)
    cp = cyclotomic_factorization(g)
    assert cp.factors == ((1, 2), (3, 1)) and cp.expand() == g
    assert str(cp) == "(q-1)^2*(q^2+q+1)"
    with pytest.raises(ValueError, match="non-cyclotomic"):
        cyclotomic_factorization(q ** 2 + 2)


def test_poly_format_and_eval():
    q = Poly.q()
    assert str(q ** 2 - q + 1) == "q^2-q+1"
    assert ((q - 1) ** 3 * (q + 1))(3) == 32


# oracles --------------------------------------------------------------------------------


@pytest.mark.parametrize("d", range(1, 40))
def test_cyclotomic_against_sympy(d):
    x = sympy.symbols("x")
    want = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(d, x), x).all_coeffs())]
    assert cyclotomic(d).coeffs == tuple(Fraction(c) for c in want)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_smith_against_minors(m):
    assert smith_diagonal(m) == minors_invariants(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_charpoly_against_sympy(m):
    x = sympy.symbols("x")
    want = [int(c) for c in reversed(sympy.Matrix(m).charpoly(x).all_coeffs())]
    assert characteristic_polynomial(m).coeffs == tuple(Fraction(c) for c in want)


# properties -------------------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_smith_properties(m):
    d, p, q = smith_normal_form(m)
    assert mat_mul(mat_mul(p, m), q) == d
    assert abs(determinant(p)) == 1 and abs(determinant(q)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


@settings(max_examples=100, deadline=None)
@given(st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(lambda rc: st.tuples(
    st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]),
    unimodular(rc[0]))))
def test_hermite_idempotent_and_canonical(args):
    m, u = args
    h = hermite_normal_form(m)
    assert hermite_normal_form(h) == h
    assert len(h) == rank(m)
    assert hermite_normal_form(mat_mul(u, m)) == h
    # same lattice: each input row reduces to zero against h
    for r in m:
        v = list(r)
        for row in h:
            c = next(j for j, x in enumerate(row) if x)
            f = v[c] // row[c]
            v = [a - f * b for a, b in zip(v, row)]
        assert not any(v)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_properties(m):
    k = integer_kernel(m)
    nc = len(m[0])
    assert len(k) == nc - rank(m)
    for v in k:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if k:
        # saturated: elementary divisors all 1
        assert set(smith_diagonal(k)) == {1}
        comp = lattice_complement(k, nc)
        assert abs(determinant([list(r) for r in k] + [list(r) for r in comp])) == 1


@settings(max_examples=60, deadline=None)
@given(unimodular(3))
def test_integer_inverse(u):
    assert mat_mul(u, integer_inverse(u)) == identity(3)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 12), st.integers(1, 3)), max_size=4),
       st.integers(0, 3), st.sampled_from([1, -1]))
def test_cyclotomic_round_trip(factors, k, sign):
    f = Poly((sign,)) * Poly.q() ** k
    for d, e in factors:
        f = f * cyclotomic(d) ** e
    cp = cyclotomic_factorization(f)
    assert cp.expand() == f
    merged = {}
    for d, e in factors:
        merged[d] = merged.get(d, 0) + e
    assert dict(cp.factors) == merged and cp.q_power == k and cp.sign == sign


def test_transpose_shape():
    assert transpose([[1, 2, 3]]) == ((1,), (2,), (3,))
