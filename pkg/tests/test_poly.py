from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenlocus.exactmath import MultiPoly, monomial_basis, poly_vars
from strategies import VARS, polys, rationals

points = st.fixed_dictionaries({v: rationals for v in VARS})


def naive_eval(p, pt):
    total = 0
    for e, c in p.terms().items():
        term = c
        for v, k in zip(p.vars, e):
            term *= pt[v] ** k
        total += term
    return total


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.const(VARS, 0)


@given(polys(), polys(), points)
def test_evaluate_is_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert p.evaluate(pt) == naive_eval(p, pt)


@given(polys(), polys())
def test_leibniz(p, q):
    assert (p * q).diff("x") == p.diff("x") * q + p * q.diff("x")


@given(polys(), polys(), points)
def test_subs_then_evaluate(p, q, pt):
    # substituting q for x and evaluating agrees with evaluating at x = q(pt)
    lhs = p.subs({"x": q}).evaluate(pt)
    rhs = p.evaluate({**pt, "x": q.evaluate(pt)})
    assert lhs == rhs


@given(polys())
def test_coefficients_in_reconstructs(p):
    x, y, z = poly_vars(*VARS)
    parts = p.coefficients_in(("x", "y"))
    total = MultiPoly.const(VARS, 0)
    for (a, b), c in parts.items():
        total = total + c.with_vars(VARS) * x ** a * y ** b
    assert total == p


@pytest.mark.parametrize("n,d", [(1, 4), (3, 0), (3, 3), (9, 2), (6, 3)])
def test_monomial_basis_size(n, d):
    basis = monomial_basis(n, d)
    assert len(basis) == comb(n + d - 1, d)
    assert len(set(basis)) == len(basis)
    assert all(sum(e) == d for e in basis)


def test_weight_and_homogeneity():
    x, y, z = poly_vars(*VARS)
    w = {"x": (1, 0), "y": (0, 1), "z": (-1, -1)}
    assert (x * y * z).weight(w) == (0, 0)
    assert (x * x + y).weight(w) is None
    assert (x * y + z * z).is_homogeneous()
    assert not (x + y * y).is_homogeneous()


def test_degree_and_json():
    x, y, _ = poly_vars(*VARS)
    p = x ** 3 * y - x * Fraction(1, 2)
    assert p.degree() == 4
    assert p.to_json() == {"vars": list(VARS), "terms": {"3,1,0": "1", "1,0,0": "-1/2"}}


@settings(max_examples=50)
@given(polys(max_exp=2))
def test_real_imag_split(p):
    from degenlocus.exactmath import I

    q = p + p * I
    assert q.real_part() == p and q.imag_part() == p
    assert q.conjugate() == p - p * I
