from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbt.field import Field, kernel_basis, rank, rref, solve, to_rows, transpose

Q = Field()
GF = Field(101)


def frac_rref(rows):
    """Plain Gauss-Jordan over Fraction, kept apart from flint on purpose."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots, r = [], 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def as_fractions(m):
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in to_rows(m)]


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


def test_rref_identity():
    red, piv = rref(Q.identity(2))
    assert red == Q.identity(2) and piv == [0, 1]


def test_rref_rank_one():
    red, piv = rref(Q.matrix([[1, 2], [2, 4]]))
    assert as_fractions(red) == [[1, 2], [0, 0]]
    assert piv == [0]


def test_kernel_examples():
    assert kernel_basis(Q.identity(3)) == []
    assert len(kernel_basis(Q.zeros(3, 3))) == 3
    (v,) = kernel_basis(Q.matrix([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_solve_examples():
    b = Q.column([3, -1, 7])
    assert solve(Q.identity(3), b) == b
    m = Q.matrix([[1, 2], [2, 4]])
    assert solve(m, [1, 3]) is None
    x = solve(m, [1, 2])
    assert x[0, 0] + 2 * x[1, 0] == 1


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(Q.identity(2), [1, 2, 3])


def test_prime_field():
    m = GF.matrix([[1, 2], [3, 4]])
    assert rank(m) == 2
    assert rank(GF.matrix([[1, 2], [2, 4]])) == 1
    assert GF.scalar(Fraction(1, 2)) * 2 == 1
    with pytest.raises(ValueError):
        Field(100)
    assert Field.parse("gf:7").prime == 7 and Field.parse("rational").prime is None


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_rref_matches_fraction_oracle(rows):
    red, piv = rref(Q.matrix(rows))
    ored, opiv = frac_rref(rows)
    assert piv == opiv
    assert as_fractions(red) == ored
    assert all(a < b for a, b in zip(piv, piv[1:]))


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_of_transpose(rows):
    m = Q.matrix(rows)
    assert rank(m) == rank(transpose(m)) == len(frac_rref(rows)[1])


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_vanish(rows):
    m = Q.matrix(rows)
    ker = kernel_basis(m)
    assert len(ker) == m.ncols() - rank(m)
    for v in ker:
        assert all(x == 0 for x in (m * Q.column(v)).entries())
    if ker:
        assert rank(Q.matrix(ker)) == len(ker)


@given(int_matrices(), st.lists(small_ints, min_size=6, max_size=6))
@settings(max_examples=60, deadline=None)
def test_solve_exact_or_absent(rows, rhs):
    m = Q.matrix(rows)
    b = Q.column(rhs[: m.nrows()])
    x = solve(m, b)
    aug_rank = len(frac_rref([r + [c] for r, c in zip(rows, rhs)])[1])
    if x is None:
        assert aug_rank > rank(m)
    else:
        assert m * x == b
