import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rfg.errors import BadDimension, BadIndices, CentralInput, IdentityInput, NotUnimodular
from rfg.speciallinear import (
    H3Subgroup,
    IntMatrix,
    congruence_witness,
    elementary,
    g_n,
    h3_inv,
    h3_matrix,
    h3_mul,
    h3_pow,
    h3_subgroups,
    heisenberg3_enumerated,
    heisenberg_conditions_hold,
    heisenberg_divisibility,
    hyperplane_count,
    int_matrix,
    lcm_upto,
    projective_points,
    size_proxy,
    slk_bounds_table,
    stabilizes,
)


def test_matrix_basics():
    assert g_n(3, 6) == elementary(3, 1, 3, 60)
    assert g_n(4, 1) == elementary(4, 1, 4, 1)
    e = elementary(3, 1, 2, 1)
    assert (e @ elementary(3, 1, 2, -1)).is_identity()
    with pytest.raises(BadIndices):
        elementary(3, 2, 2, 1)
    with pytest.raises(BadIndices):
        elementary(3, 0, 2, 1)
    with pytest.raises(NotUnimodular):
        int_matrix([[2, 0], [0, 1]])
    with pytest.raises(BadDimension):
        int_matrix([[1, 0, 0], [0, 1, 0]])
    big = int_matrix([[1, 10**30, 0], [0, 1, 0], [0, 0, 1]])
    assert big[0, 1] == 10**30


def test_size_proxy_examples():
    assert size_proxy(elementary(3, 1, 3, 60)) == 7
    assert size_proxy(elementary(3, 1, 2, 1)) == 2
    with pytest.raises(IdentityInput):
        size_proxy(IntMatrix(((1, 0), (0, 1))))
    proxies = [size_proxy(elementary(3, 1, 3, a)) for a in range(1, 200)]
    assert proxies == sorted(proxies)


@pytest.mark.parametrize("g,alpha,p,index", [
    (elementary(3, 1, 3, 60), 60, 7, 57),
    (elementary(3, 1, 2, 2), 2, 3, 13),
    (elementary(4, 2, 3, 6), 6, 5, 156),
])
def test_congruence_witness_examples(g, alpha, p, index):
    w = congruence_witness(g)
    assert (w.alpha, w.p, w.index) == (alpha, p, index)
    assert not w.contains(g)


def test_congruence_witness_hyperplane_x1():
    w = congruence_witness(elementary(3, 1, 3, 60))
    assert w.dual_vector == (1, 0, 0)


def test_central_rejected():
    minus = IntMatrix(tuple(tuple(-int(i == j) for j in range(4)) for i in range(4)))
    with pytest.raises(CentralInput):
        congruence_witness(minus)


def _brute_hyperplanes(p, k):
    # kernels of nonzero functionals, as sets of vectors
    vecs = list(itertools.product(range(p), repeat=k))
    arr = np.array(vecs)
    kernels = set()
    for phi in itertools.product(range(p), repeat=k):
        if any(phi):
            kernels.add(frozenset(map(tuple, arr[(arr @ np.array(phi)) % p == 0])))
    return len(kernels)


@pytest.mark.parametrize("p,k", [(p, k) for p in (2, 3, 5, 7) for k in (2, 3, 4) if p ** k <= 2401])
def test_hyperplane_count_brute(p, k):
    assert hyperplane_count(p, k) == _brute_hyperplanes(p, k) == len(list(projective_points(p, k)))


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 4), st.integers(1, 3), st.integers(1, 3), st.integers(-500, 500))
def test_witness_moves_g_and_has_the_right_index(k, i, j, a):
    j = j + 1 if j >= i else j
    if a == 0 or j > k:
        return
    g = elementary(k, i, j, a)
    w = congruence_witness(g)
    assert not stabilizes(w.dual_vector, g, w.p)
    assert a % w.p != 0
    assert all(a % q == 0 for q in range(2, w.p) if all(q % r for r in range(2, q)))
    # the subgroup really is a subgroup on a sample: products of members stay members
    members = [elementary(k, x, y, w.p) for x in range(1, k + 1) for y in range(1, k + 1) if x != y]
    for h1 in members[:4]:
        for h2 in members[:4]:
            assert w.contains(h1 @ h2)


@pytest.mark.parametrize("k,L,value,diagonal", [
    (3, 12, 25, (5, 5, 1)),
    (3, 1, 4, (2, 2, 1)),
    (4, 12, 125, (5, 5, 5, 1, 1)),
])
def test_heisenberg_examples(k, L, value, diagonal):
    v, basis = heisenberg_divisibility(k, L)
    assert v == value and basis.diagonal == diagonal and basis.index == value
    assert heisenberg_conditions_hold(k, basis.diagonal)
    assert L % basis.diagonal[0] != 0


def _brute_diagonal(k, L, cap):
    d = 2 * k - 3
    best = None
    for diag in itertools.product(range(1, cap + 1), repeat=d):
        if L % diag[0] and heisenberg_conditions_hold(k, diag):
            v = math.prod(diag)
            best = v if best is None else min(best, v)
    return best


@pytest.mark.parametrize("k,n", [(3, n) for n in range(1, 9)] + [(4, n) for n in range(1, 6)])
def test_heisenberg_matches_brute_force(k, n):
    L = lcm_upto(n)
    v, _ = heisenberg_divisibility(k, L)
    assert _brute_diagonal(k, L, 11) == v


@pytest.mark.parametrize("k", [3, 4])
def test_heisenberg_lower_bound(k):
    for n in range(1, 9):
        assert heisenberg_divisibility(k, lcm_upto(n))[0] >= n ** (k - 1)


def test_h3_law_matches_matrices():
    pts = [(1, 2, 3), (-2, 5, 0), (0, -1, 7), (3, 3, -4)]
    for u in pts:
        assert h3_matrix(h3_inv(u)) @ h3_matrix(u) == h3_matrix((0, 0, 0))
        for v in pts:
            assert h3_matrix(h3_mul(u, v)) == h3_matrix(u) @ h3_matrix(v)
        for n in range(-3, 4):
            acc = (0, 0, 0)
            step = u if n >= 0 else h3_inv(u)
            for _ in range(abs(n)):
                acc = h3_mul(acc, step)
            assert h3_pow(u, n) == acc


def test_h3_subgroup_counts_match_zeta_function():
    # coefficients of zeta(s)zeta(s-1)zeta(2s-2)zeta(2s-3)/zeta(3s-3)
    expected = [1, 3, 4, 19, 6, 12, 8, 43, 49, 18, 12, 76]
    assert [sum(1 for _ in h3_subgroups(n)) for n in range(1, 13)] == expected


def test_h3_index_equals_coset_count():
    for n in range(1, 9):
        for sub in h3_subgroups(n):
            assert sub.coset_count() == sub.index == n


def test_non_subgroup_rejected():
    # x and y generate the commutator z, so <x, y, z^2> is all of H3
    assert H3Subgroup(1, 1, 2).is_subgroup() is False
    assert H3Subgroup(1, 1, 1).is_subgroup()


@pytest.mark.parametrize("n", range(1, 7))
def test_integer_program_matches_enumeration(n):
    L = lcm_upto(n)
    assert heisenberg3_enumerated(L)[0] == heisenberg_divisibility(3, L)[0]


def test_slk_table_examples():
    table = slk_bounds_table(3, 6)
    rows = {r.n: r for r in table.rows}
    assert (rows[4].lower, rows[4].upper, rows[4].p) == (25, 31, 5)
    assert (rows[6].lower, rows[6].upper, rows[6].p) == (49, 57, 7)
    assert all(r.lower <= r.upper for r in table.rows)
    assert rows[1].slope_partial is None and rows[3].slope_partial is not None
    with pytest.raises(BadDimension):
        slk_bounds_table(2, 3)
