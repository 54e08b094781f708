import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from codescent.exactlin import (
    GF,
    QQ,
    ExactMatrix,
    Subspace,
    kernel_basis,
    linear_feasible,
    solve,
    split_idempotent,
)

small_ints = st.integers(min_value=-4, max_value=4)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small_ints, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


def to_sympy(m: ExactMatrix):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(int(m[i, j].numerator), int(m[i, j].denominator)))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(rows):
    m = ExactMatrix.from_rows(QQ, rows)
    assert m.rank() == sympy.Matrix(rows).rank()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_are_killed(rows):
    m = ExactMatrix.from_rows(QQ, rows)
    ker = kernel_basis(m)
    assert ker.dim == m.cols - m.rank()
    for v in ker.basis:
        assert not any(m.apply(v))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_inverse_against_sympy(rows):
    m = ExactMatrix.from_rows(QQ, rows)
    oracle = sympy.Matrix(rows)
    if oracle.det() == 0:
        assert not m.is_invertible()
        return
    inv = m.inverse()
    assert to_sympy(inv) == oracle.inv()
    assert m @ inv == ExactMatrix.identity(QQ, len(rows))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_over_prime_field_by_brute_force(p):
    F = GF(p)
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    m = ExactMatrix.from_rows(F, rows)
    # the image size counted by enumeration is p^rank
    image = {m.apply(v) for v in itertools.product(range(p), repeat=3)}
    assert len(image) == p ** m.rank()


def test_field_arithmetic():
    F = GF(7)
    assert F.norm(F(3) * F.inv(F(3))) == F.one
    assert F.div(F(1), F(3)) == F(5)
    assert QQ.format(QQ.div(QQ(1), QQ(2))) == "1/2"
    with pytest.raises(ValueError):
        GF(6)


def test_solve_and_feasibility():
    A = ExactMatrix.from_rows(QQ, [[1, 1], [1, -1]])
    assert solve(A, [2, 0]) == (QQ(1), QQ(1))
    B = ExactMatrix.from_rows(QQ, [[1, 1], [2, 2]])
    assert solve(B, [1, 3]) is None
    assert linear_feasible([({0: 1, 1: 1}, 1), ({0: 1}, 1)], 2, QQ) == (QQ(1), QQ(0))
    assert linear_feasible([({0: 1}, 1), ({0: 1}, 2)], 1, QQ) is None


def test_split_idempotent():
    e = ExactMatrix.from_rows(QQ, [[1, 1], [0, 0]])
    sigma, rho = split_idempotent(e)
    assert rho @ sigma == ExactMatrix.identity(QQ, 1)
    assert sigma @ rho == e
    with pytest.raises(ValueError):
        split_idempotent(ExactMatrix.from_rows(QQ, [[2, 0], [0, 0]]))


def test_subspace_operations():
    U = Subspace.span(QQ, 3, [(1, 0, 0), (1, 1, 0)])
    W = Subspace.span(QQ, 3, [(0, 1, 0), (0, 0, 1)])
    assert U.dim == 2 and (0, 1, 0) in U and (0, 0, 1) not in U
    assert U.intersect(W).dim == 1
    assert U.sum(W).dim == 3
    coords = U.coordinates((2, 1, 0))
    assert U.combine(coords) == (QQ(2), QQ(1), QQ(0))
