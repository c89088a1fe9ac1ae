from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewmorita.cyclotomic import ONE, ZERO, Cyc, zeta
from skewmorita.linalg import (CycMatrix, InconsistentSystem, SingularMatrix, inverse,
                               kernel_basis, rank, rref, solve_linear)

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, rows=None, cols=None):
    r = rows or draw(st.integers(1, 4))
    c = cols or draw(st.integers(1, 4))
    z = zeta(3)
    entries = [Cyc.rational(draw(small)) + z * draw(small) for _ in range(r * c)]
    return CycMatrix(r, c, entries)


@given(matrices())
@settings(max_examples=50, deadline=None)
def test_rank_nullity(a):
    ker = kernel_basis(a)
    assert rank(a) + len(ker) == a.shape[1]
    for v in ker:
        assert (a @ v).is_zero()


@given(matrices(3, 3))
@settings(max_examples=50, deadline=None)
def test_inverse_or_singular(a):
    if rank(a) == 3:
        assert a @ inverse(a) == CycMatrix.identity(3)
    else:
        with pytest.raises(SingularMatrix):
            inverse(a)


@given(matrices(3, 2), matrices(2, 1))
@settings(max_examples=50, deadline=None)
def test_solve_consistent(a, x):
    b = a @ x
    y = solve_linear(a, b)
    assert a @ y == b


def test_kernel_example():
    z = zeta(3)
    a = CycMatrix.from_rows([[1, z, 0], [z, z * z, 0], [0, 0, 2]])
    (v,) = kernel_basis(a)
    assert v.col(0)[0] == ONE
    assert (a @ v).is_zero()


def test_rref_pivots():
    rows, piv = rref([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    assert piv == [0, 1]
    assert rows[0][0] == ONE and rows[1][1] == ONE


def test_inconsistent_and_shape_errors():
    a = CycMatrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(InconsistentSystem):
        solve_linear(a, CycMatrix.column([1, 3]))
    with pytest.raises(ValueError):
        solve_linear(a, CycMatrix.column([1, 2, 3]))


def test_json_roundtrip():
    a = CycMatrix.from_rows([[Fraction(1, 2), zeta(4)], [ZERO, -ONE]])
    assert CycMatrix.from_json(a.to_json()) == a
    assert a.transpose().transpose() == a
