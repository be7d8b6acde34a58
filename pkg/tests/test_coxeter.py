import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from reflect.coxeter import (BudgetExceeded, CoxGroup, centralizer_order,
                             conjugacy_classes, double_coset_representatives, element_centralizer,
                             isomorphism_type, normalizer_of_subsystem, order_by_orbit_chain,
                             reflection_subgroup)
from reflect.cosets import make_coset, twistings
from reflect.rootsys import cartan_matrix

DEGREES = {"A2": (2, 3), "A3": (2, 3, 4), "B3": (2, 4, 6), "G2": (2, 6), "F4": (2, 6, 8, 12),
           "D4": (2, 4, 4, 6), "E6": (2, 5, 6, 8, 9, 12), "E7": (2, 6, 8, 10, 12, 14, 18)}


def inversions(W, w):
    # positive roots sent to negative ones by w^-1
    winv = W.inv(w)
    return sum(1 for j in range(W.N) if winv[j] >= W.N)


@pytest.mark.parametrize("t", sorted(DEGREES))
def test_order_against_oracles(t, groups):
    W = groups(t)
    assert W.order == math.prod(DEGREES[t])
    assert W.order == order_by_orbit_chain(cartan_matrix(t))
    assert tuple(W.degrees) == DEGREES[t]


def test_build_examples(groups):
    assert groups("A2").order == 6
    assert groups("E6").order == 51840
    assert groups("E7").order == 2903040


def test_generator_invariants(groups):
    for t in ("A3", "F4", "E6"):
        W = groups(t)
        for i, g in enumerate(W.gen_perms):
            assert g[i] == i + W.N
            assert all(g[j] < W.N for j in range(W.N) if j != i)
            m = W.gen_ymats[i]
            assert [[sum(m[a][k] * m[k][b] for k in range(len(m))) for b in range(len(m))]
                    for a in range(len(m))] == [[int(a == b) for b in range(len(m))] for a in range(len(m))]
            # commutes with negation
            assert all(g[j + W.N] == (g[j] + W.N) % (2 * W.N) for j in range(W.N))


def test_descent_examples(groups):
    W = groups("A3")
    e = W.identity
    assert W.left_descent_set(e) == set() and W.first_left_descent(e) is None and W.length(e) == 0
    for s in (1, 2, 3):
        g = W.gen(s)
        assert W.left_descent_set(g) == {s} and W.first_left_descent(g) == s and W.length(g) == 1
    w0 = W.longest_element
    assert W.left_descent_set(w0) == {1, 2, 3} and W.length(w0) == 6
    assert max(W.length(w) for w in W.closure(W.gen_perms)) == 6


def test_word_examples(groups):
    W = groups("A3")
    assert W.element_of_word([]) == W.identity
    assert W.element_of_word([1, 1]) == W.identity
    info = conjugacy_classes(W)
    assert [list(w) for w in info.classtext] == [[], [1], [1, 3], [1, 2], [1, 3, 2]]


def test_longest_examples(groups):
    assert groups("A1").longest_element == groups("A1").gen(1)
    A2 = groups("A2")
    assert A2.longest_element == A2.element_of_word([1, 2, 1])
    E6 = groups("E6")
    w0 = E6.longest_element
    assert E6.length(w0) == 36 == E6.N and E6.mul(w0, w0) == E6.identity


def test_length_is_inversion_count(groups):
    W = groups("E6")
    rng = random.Random(11)
    T = W.table()
    for _ in range(10_000):
        x = rng.randrange(T.size)
        w = T.perm(x)
        assert W.length(w) == inversions(W, w) == T.len_l[x] == len(W.reduced_word(w))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 4), max_size=20), st.integers(1, 4))
def test_words_and_exchange(word, s):
    W = CoxGroup.of_type("F4")
    w = W.element_of_word(word)
    assert W.length(w) <= len(word)
    red = W.reduced_word(w)
    assert W.element_of_word(red) == w
    assert (W.length(w) == len(word)) == (len(red) == len(word))
    assert abs(W.length(W.mul(W.gen(s), w)) - W.length(w)) == 1
    assert (s in W.left_descent_set(w)) == (W.length(W.mul(W.gen(s), w)) < W.length(w))


def test_class_examples(groups):
    info = conjugacy_classes(groups("A3"))
    assert info.classes == [1, 6, 3, 8, 6] and info.orders == [1, 2, 2, 3, 4]
    info = conjugacy_classes(groups("A1"))
    assert info.classes == [1, 1]
    W = groups("E6")
    info = conjugacy_classes(W)
    assert len(info) == 25 and sum(info.classes) == W.order
    # class count oracle: sum over classes of 1 = (1/|W|) sum_w |C(w)|
    T = W.table()
    total = sum(info.classes[i] * centralizer_order(W, info.reps[i]) for i in range(len(info)))
    assert total == 25 * W.order


@pytest.mark.parametrize("t", ["A3", "B3", "G2", "D4", "F4"])
def test_class_invariants(t, groups):
    W = groups(t)
    T = W.table()
    info = conjugacy_classes(W)
    assert sum(info.classes) == W.order
    for i, x in enumerate(info.reps):
        assert info.classes[i] * centralizer_order(W, x) == W.order
        members = [y for y in range(T.size) if info.class_of[y] == i]
        assert len(members) == info.classes[i]
        assert T.len_l[x] == min(T.len_l[y] for y in members)
        assert W.element_order(T.perm(x)) == info.orders[i]
        y = T.index(W.element_of_word(info.classtext[i]))
        assert info.class_of[y] == i and len(info.classtext[i]) == T.len_l[x]


def test_reflection_subgroups(groups):
    E6 = groups("E6")
    M = reflection_subgroup(E6, [1, 3, 5, 6])
    assert isomorphism_type(M) == "A2+A2" and M.order == 36
    E7 = groups("E7")
    H = reflection_subgroup(E7, [2, 5, 7])
    assert isomorphism_type(H) == "A1+A1+A1" and H.order == 8
    assert isomorphism_type(H, compact=True) == "3A1"
    full = reflection_subgroup(E6, range(1, 7))
    assert isomorphism_type(full) == "E6" and full.order == E6.order
    assert E6.order % M.order == 0


def test_short_root_marking(groups):
    F4 = groups("F4")
    H = reflection_subgroup(F4, [2 * F4.N, 1, 3, 4])
    assert isomorphism_type(H) == "A2+~A2"
    assert H.order == 36


def test_centralizer_examples(groups):
    A2 = groups("A2")
    assert centralizer_order(A2, 0) == 6
    c = A2.table().of_word([1, 2])
    assert centralizer_order(A2, c) == 3
    assert len(element_centralizer(A2, c)) == 3


def test_normalizer_examples(groups):
    A2 = groups("A2")
    H = reflection_subgroup(A2, [1])
    assert len(A2.closure(normalizer_of_subsystem(A2, H))) == 2
    full = reflection_subgroup(A2, [1, 2])
    assert len(A2.closure(normalizer_of_subsystem(A2, full))) == 6
    E7 = groups("E7")
    H = reflection_subgroup(E7, [2, 5, 7])
    assert len(twistings(make_coset(E7), H)) > 0


def test_double_cosets(groups):
    W = groups("A3")
    gens = list(W.gen_perms)
    assert double_coset_representatives(W, gens, gens) == [0]
    assert sorted(double_coset_representatives(W, [], [])) == list(range(24))
    # disjoint union check for parabolic double cosets
    T = W.table()
    H = [W.gen(1)]
    K = [W.gen(2), W.gen(3)]
    reps = double_coset_representatives(W, H, K)
    Helts = W.closure(H)
    Kelts = W.closure(K)
    seen = set()
    for r in reps:
        w = T.perm(r)
        cell = {W.mul(W.mul(h, w), k) for h in Helts for k in Kelts}
        assert not (cell & seen)
        seen |= cell
    assert len(seen) == 24


def test_budget_guard():
    W = CoxGroup.of_type("E8")
    with pytest.raises(BudgetExceeded):
        W.table(budget=10_000)
