import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from superder import exactla as la

small = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def subspace_pairs(max_dim=5):
    def build(n):
        vecs = st.lists(st.lists(small, min_size=n, max_size=n), max_size=n + 1)
        return st.tuples(st.just(n), vecs, vecs)

    return st.integers(1, max_dim).flatmap(build)


def sympy_rref(m):
    red, piv = sympy.Matrix(m).rref()
    return [[Fraction(int(x.p), int(x.q)) for x in red.row(i)] for i in range(red.rows)], list(piv)


def test_rref_identity():
    red, rk, piv = la.rref([[1, 0], [0, 1]])
    assert red == la.identity(2)
    assert rk == 2 and piv == [0, 1]


def test_rref_dependent_rows():
    red, rk, _ = la.rref([[2, 4], [1, 2]])
    assert red == la.matrix([[1, 2], [0, 0]])
    assert rk == 1


def test_nullspace_examples():
    assert la.nullspace(la.identity(3)).dim == 0
    assert la.nullspace([[0, 0, 0], [0, 0, 0]]).dim == 3
    ns = la.nullspace([[1, 1]])
    assert ns.basis == la.matrix([[1, -1]])


def test_intersect_examples():
    x = la.span([[1, 0]], 2)
    y = la.span([[0, 1]], 2)
    assert la.intersect(x, y).dim == 0
    assert la.intersect(x, x) == x
    a = la.span([[1, 0, 0], [0, 1, 0]], 3)
    b = la.span([[0, 1, 0], [0, 0, 1]], 3)
    assert la.intersect(a, b) == la.span([[0, 1, 0]], 3)


def test_intersect_dimension_mismatch():
    with pytest.raises(ValueError):
        la.intersect(la.full_space(2), la.full_space(3))


def test_contains_examples():
    assert la.contains(la.span([[1, 2]], 2), [0, 0])
    assert not la.contains(la.span([[1, 0]], 2), [1, 1])
    assert la.contains(la.span([[1, 2]], 2), [3, 6])
    with pytest.raises(ValueError):
        la.contains(la.span([[1, 2]], 2), [1, 2, 3])


def test_sum_examples():
    x = la.span([[1, 0]], 2)
    y = la.span([[0, 1]], 2)
    assert la.subspace_sum(x, y) == la.full_space(2)
    assert la.subspace_sum(x, la.zero_subspace(2)) == x
    assert la.subspace_sum(x, x) == x


def test_solve_examples():
    assert la.solve(la.identity(3), [1, 2, 3]) == la.vector([1, 2, 3])
    sol = la.solve([[1, 1]], [2])
    assert sol[0] + sol[1] == 2
    assert la.solve([[1], [1]], [1, 2]) is la.INCONSISTENT


def test_floats_are_refused():
    with pytest.raises(TypeError):
        la.vector([0.5])


@given(matrices())
def test_rref_matches_sympy(m):
    red, rk, piv = la.rref(m)
    want, want_piv = sympy_rref(m)
    assert [list(r) for r in red] == want
    assert piv == want_piv and rk == len(want_piv)


@given(matrices())
def test_rref_idempotent(m):
    red = la.rref(m)[0]
    assert la.rref(red)[0] == red


@given(matrices())
def test_rank_nullity(m):
    assert la.nullspace(m).dim + la.rank(m) == len(m[0])


@given(matrices())
def test_nullspace_is_canonical_and_annihilated(m):
    ns = la.nullspace(m)
    assert la.is_canonical(ns)
    for v in ns.basis:
        assert not any(la.mat_vec(la.matrix(m), v))


@given(subspace_pairs())
def test_modular_dimension_law(data):
    n, va, vb = data
    a, b = la.span(va, n), la.span(vb, n)
    assert a.dim + b.dim == la.subspace_sum(a, b).dim + la.intersect(a, b).dim
    assert la.is_canonical(la.intersect(a, b))


@given(subspace_pairs(), st.lists(small, min_size=5, max_size=5))
def test_contains_iff_sum_keeps_dimension(data, v):
    n, va, _ = data
    s = la.span(va, n)
    v = v[:n]
    assert la.contains(s, v) == (la.subspace_sum(s, la.span([v], n)).dim == s.dim)


@settings(max_examples=50)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_agrees_with_rank_test(m, rhs):
    rhs = rhs[: len(m)] + [Fraction(0)] * (len(m) - len(rhs[: len(m)]))
    sol = la.solve(m, rhs)
    aug = [list(r) + [b] for r, b in zip(m, rhs)]
    consistent = la.rank(m) == la.rank(aug)
    assert (sol is not la.INCONSISTENT) == consistent
    if consistent:
        assert la.mat_vec(la.matrix(m), sol) == la.vector(rhs)


def test_canonical_form_is_basis_independent():
    rng = random.Random(7)
    vecs = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(3)]
    mixed = [[a + 2 * b for a, b in zip(vecs[0], vecs[1])], vecs[1], [x - y for x, y in zip(vecs[2], vecs[0])]]
    assert la.span(vecs, 4) == la.span(mixed, 4)


def test_rank_of_ad_h(S):
    # ad_h is diagonal: (2, -2, 0, 1, -1, 0, 1, -1, 0) on (e, f, h, p, q, z, E, F, G)
    m = S.ad_matrix(S.element({"h": 1}))
    diag = [m[i][i] for i in range(9)]
    assert diag == [2, -2, 0, 1, -1, 0, 1, -1, 0]
    assert all(m[i][j] == 0 for i in range(9) for j in range(9) if i != j)
    assert la.rank(m) == 6
