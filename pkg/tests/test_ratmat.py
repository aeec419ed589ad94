from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfqp.ratmat import Matrix, Quotient, extend_to_basis, retraction

entries = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


def matrices(rows, cols):
    return st.lists(
        st.lists(entries, min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ).map(Matrix.from_rows)


def test_constructors():
    assert Matrix.zero(2, 3).is_zero()
    i3 = Matrix.identity(3)
    assert i3.rank() == 3
    col = Matrix.column([1, 2])
    assert (col.rows, col.cols) == (2, 1)


def test_stack_shapes():
    a = Matrix.from_rows([[1, 2], [3, 4]])
    b = Matrix.from_rows([[5], [6]])
    h = Matrix.hstack([a, b])
    assert (h.rows, h.cols) == (2, 3)
    v = Matrix.vstack([a, a])
    assert (v.rows, v.cols) == (4, 2)


@settings(max_examples=50, deadline=None)
@given(matrices(3, 4))
def test_rank_nullity(m):
    assert m.rank() + m.kernel_basis().cols == m.cols


@settings(max_examples=50, deadline=None)
@given(matrices(3, 3))
def test_inverse_roundtrip(m):
    inv = m.inverse()
    if inv is None:
        assert m.rank() < 3
    else:
        assert m * inv == Matrix.identity(3)
        assert inv * m == Matrix.identity(3)


@settings(max_examples=50, deadline=None)
@given(matrices(3, 4))
def test_rref_idempotent(m):
    r, pivots = m.rref()
    assert r.rref()[0] == r
    assert len(pivots) == m.rank()


@settings(max_examples=30, deadline=None)
@given(matrices(4, 2))
def test_extend_and_retract(b):
    if b.rank() < b.cols:
        return
    full = extend_to_basis(b)
    assert full.rank() == 4
    r = retraction(b)
    assert r * b == Matrix.identity(b.cols)


def test_kernel_is_kernel():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    k = m.kernel_basis()
    assert (m * k).is_zero()
    assert k.cols == 2


def test_solve():
    m = Matrix.from_rows([[2, 0], [0, 3]])
    b = Matrix.column([4, 9])
    x = m.solve(b)
    assert m * x == b
    unsolvable = Matrix.from_rows([[1, 0], [1, 0]])
    assert unsolvable.solve(Matrix.column([1, 2])) is None


def test_quotient_projection():
    sub = Matrix.from_rows([[1], [0], [0]])
    quo = Quotient(3, sub)
    assert quo.dim == 2
    assert (quo.project * sub).is_zero()
    assert quo.project * quo.section == Matrix.identity(2)
