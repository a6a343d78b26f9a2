from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenlocus.exactmath import (
    I, Echelon, Matrix, MultiPoly, charpoly, charpoly_coeffs, det_exact, inverse_exact,
    linear_solve_exact, nullspace_exact, rank_exact,
)
from strategies import gaussians, rationals, square_matrices


def leibniz_det(M):
    n = M.nrows
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term = term * M[i, perm[i]]
        total += term
    return total


sizes = st.integers(1, 4)


@given(sizes.flatmap(square_matrices))
def test_det_matches_leibniz(M):
    assert det_exact(M) == leibniz_det(M)


@given(sizes.flatmap(lambda n: st.tuples(square_matrices(n, gaussians), square_matrices(n, gaussians))))
def test_det_multiplicative(pair):
    A, B = pair
    assert det_exact(A @ B) == det_exact(A) * det_exact(B)


@given(sizes.flatmap(square_matrices))
def test_inverse(M):
    if det_exact(M) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse_exact(M)
    else:
        assert M @ inverse_exact(M) == Matrix.identity(M.nrows)


@given(sizes.flatmap(square_matrices))
def test_rank_nullity(M):
    assert rank_exact(M) + len(nullspace_exact(M)) == M.ncols
    for v in nullspace_exact(M):
        assert all(x == 0 for x in M @ v)


@given(sizes.flatmap(lambda n: st.tuples(square_matrices(n), st.lists(rationals, min_size=n, max_size=n))))
def test_solve_consistency(pair):
    M, b = pair
    x = linear_solve_exact(M, b)
    if x is None:
        # inconsistent: appending b must raise the rank
        aug = Matrix([list(r) + [bi] for r, bi in zip(M.rows, b)])
        assert rank_exact(aug) > rank_exact(M)
    else:
        assert list(M @ x) == b


@given(sizes.flatmap(square_matrices), rationals)
def test_charpoly_is_det(M, t):
    cp = charpoly(M)
    n = M.nrows
    assert cp.evaluate({"x": t}) == det_exact(Matrix.identity(n) * t - M)


def test_examples():
    assert det_exact(Matrix([[3, 6], [6, 14]])) == 6
    assert rank_exact(Matrix([[1, 1, 1], [1, 2, 4], [1, 3, 9]])) == 3
    assert linear_solve_exact(Matrix([[1, 1], [2, 2]]), [1, 3]) is None
    assert linear_solve_exact(Matrix([[2, 1], [1, 3]]), [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert charpoly_coeffs(Matrix.diag([1, 2])) == [2, -3, 1]
    assert det_exact(Matrix([[1, I], [I, 1]])) == 2


def test_symbolic_det():
    vs = ("a", "b", "c", "d")
    a, b, c, d = (MultiPoly.var(vs, v) for v in vs)
    assert det_exact(Matrix([[a, b], [c, d]])) == a * d - b * c


def test_echelon_contains():
    e = Echelon()
    e.add({0: 1, 1: 2})
    e.add({1: 1, 2: 1})
    assert e.rank == 2
    assert e.contains({0: 1, 1: 3, 2: 1})
    assert not e.contains({2: 1})


def cofactor_det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


@settings(max_examples=15, deadline=None)
@given(st.integers(5, 6).flatmap(square_matrices))
def test_det_matches_cofactor_expansion(M):
    assert det_exact(M) == cofactor_det([list(r) for r in M.rows])
