import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from superder import exactla as la
from superder.superalg import (
    CATALOG_NAMES,
    SCHRODINGER_BASIS,
    SCHRODINGER_BRACKETS,
    InconsistentBracketError,
    UnknownAlgebraError,
    abelian,
    bracket,
    catalog,
    center,
    complete,
    from_table,
    is_ideal,
    is_subalgebra,
    same_structure,
    validate,
)


def el(S, **coeffs):
    return S.element(coeffs)


def with_bracket(left, right, result):
    table = [b if b[:2] != (left, right) else (left, right, result) for b in SCHRODINGER_BRACKETS]
    return from_table("modified", SCHRODINGER_BASIS, table)


def test_bracket_examples(S):
    assert bracket(S, el(S, h=1), el(S, e=1)) == el(S, e=2)
    assert bracket(S, el(S, E=1), el(S, E=1)) == el(S, e=2)
    assert bracket(S, el(S, e=1), el(S, e=1)) == el(S)


def test_z_is_central_by_exhaustion(S):
    z = S.basis_vector("z")
    for i in range(S.dim):
        v = S.basis_vector(i)
        assert not any(bracket(S, z, v))
        assert not any(bracket(S, v, z))


def test_table_has_twenty_brackets(S):
    assert len(S.table()) == 20


def test_reverse_orientation_follows_graded_skew(S):
    # [e,h] = -2e (even-even), [F,E] = [E,F] (odd-odd), [E,p] = -[p,E] (odd-even)
    assert bracket(S, el(S, e=1), el(S, h=1)) == el(S, e=-2)
    assert bracket(S, el(S, F=1), el(S, E=1)) == bracket(S, el(S, E=1), el(S, F=1))
    assert bracket(S, el(S, G=1), el(S, p=1)) == el(S)
    assert bracket(S, el(S, F=1), el(S, p=1)) == el(S, G=-1)


def test_dimension_mismatch(S):
    with pytest.raises(ValueError):
        bracket(S, (Fraction(1),), S.basis_vector(0))


def test_super_schrodinger_is_valid(S):
    assert validate(S) == []


def test_abelian_is_valid():
    assert validate(abelian(2)) == []


def test_changed_h_e_bracket_breaks_jacobi():
    bad = with_bracket("h", "e", {"e": 3})
    violations = validate(bad)
    assert violations
    first = violations[0]
    # By hand: [e,[f,h]] - [[e,f],h] - [[h,e],f] = 2h - 0 - 3h = -h.
    assert first.kind == "jacobi"
    assert [bad.names[i] for i in first.triple] == ["e", "f", "h"]
    assert first.residual == bad.element({"h": -1})


def test_printed_sign_of_E_F_breaks_jacobi():
    bad = with_bracket("E", "F", {"h": -1})
    violations = validate(bad)
    assert len(violations) == 36
    assert {v.kind for v in violations} == {"jacobi"}
    # [E,[E,F]] = [[E,E],F] + [[F,E],E] forces [E,F] = +h.
    assert any([bad.names[i] for i in v.triple] == ["E", "E", "F"] for v in violations)


def test_grading_violation_detected():
    alg = from_table("x", [("a", 0), ("b", 1)], [("a", "a", {})])
    assert validate(alg) == []
    bad = from_table("y", [("a", 0), ("b", 1)], [("b", "b", {"b": 1})])
    assert any(v.kind == "grading" for v in validate(bad))


def test_inconsistent_orientations_rejected_or_reported():
    basis = [("h", 0), ("e", 0)]
    both = [("h", "e", {"e": 2}), ("e", "h", {"e": 2})]
    with pytest.raises(InconsistentBracketError):
        from_table("x", basis, both)
    loose = from_table("x", basis, both, strict=False)
    assert any(v.kind == "skew" for v in validate(loose))


def test_completion_is_involutive(S):
    assert same_structure(complete(S), S)
    assert same_structure(complete(complete(S)), S)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_entries_are_valid(name):
    assert validate(catalog(name)) == []


def test_catalog_shapes():
    assert catalog("super-schrodinger").dim == 9
    assert catalog("super-heisenberg").dim == 4
    assert catalog("osp12").parities == (0, 0, 0, 1, 1)
    assert catalog("even-schrodinger").parities == (0,) * 6
    assert catalog("super-schrodinger").names == ("e", "f", "h", "p", "q", "z", "E", "F", "G")
    with pytest.raises(UnknownAlgebraError):
        catalog("sl2")


def test_ideals(S):
    assert is_ideal(S, ["p", "q", "z", "G"])
    assert not is_ideal(S, ["e"])
    assert is_ideal(S, list(S.names))
    assert is_subalgebra(S, ["h", "e", "f", "E", "F"])
    assert not is_ideal(S, ["h", "e", "f", "E", "F"])
    with pytest.raises(IndexError):
        is_ideal(S, [12])


def test_center_examples(S):
    assert center(S) == la.span([S.basis_vector("z")], 9)
    assert center(abelian(3)) == la.full_space(3)
    assert center(catalog("osp12")).dim == 0


def test_center_matches_sympy_oracle(S):
    # Independent route: symbolic x, solve [x, b] = 0 for every basis b.
    xs = sympy.symbols("x0:9")
    eqs = []
    for j in range(9):
        out = [0] * 9
        for i in range(9):
            for k, c in S.bracket_basis(i, j):
                out[k] += xs[i] * sympy.Rational(c.numerator, c.denominator)
        eqs.extend(out)
    A, _ = sympy.linear_eq_to_matrix([e for e in eqs if e != 0], xs)
    ns = A.nullspace()
    assert len(ns) == 1
    assert list(ns[0]) == [0, 0, 0, 0, 0, 1, 0, 0, 0]


homogeneous_pairs = st.tuples(
    st.integers(0, 8), st.integers(0, 8), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=2), min_size=4, max_size=4)
)


@given(homogeneous_pairs)
def test_graded_skew_on_homogeneous_elements(S, data):
    i, j, cs = data
    par = S.parities
    same_i = [k for k in range(9) if par[k] == par[i]][:2]
    same_j = [k for k in range(9) if par[k] == par[j]][:2]
    x = [Fraction(0)] * 9
    y = [Fraction(0)] * 9
    for k, c in zip(same_i, cs[:2]):
        x[k] += c
    for k, c in zip(same_j, cs[2:]):
        y[k] += c
    s = -1 if par[i] * par[j] else 1
    assert bracket(S, x, y) == tuple(-s * v for v in bracket(S, y, x))


def test_jacobi_on_homogeneous_combinations(S):
    even = [S.element({"e": 1, "h": 2, "q": -1}), S.element({"f": 1, "p": Fraction(1, 2), "z": 3})]
    odd = [S.element({"E": 1, "G": -2}), S.element({"F": 3, "G": 1})]
    for (x, px), (y, py), (z, pz) in itertools.product([(v, 0) for v in even] + [(v, 1) for v in odd], repeat=3):
        lhs = bracket(S, x, bracket(S, y, z))
        s = -1 if pz * (px + py) % 2 else 1
        rhs = tuple(a + s * b for a, b in zip(bracket(S, bracket(S, x, y), z), bracket(S, bracket(S, z, x), y)))
        assert lhs == rhs
