from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenlocus import covariants as cov
from degenlocus import matspaces as ms
from degenlocus.exactmath import I, Matrix, MultiPoly, inverse_exact
from strategies import rationals, square_matrices


def ssyt_count(shape, n):
    """Brute-force count of semistandard tableaux with entries 1..n."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    count = 0
    for fill in product(range(1, n + 1), repeat=len(cells)):
        T = dict(zip(cells, fill))
        if all(T[(i, j)] <= T[(i, j + 1)] for (i, j) in cells if (i, j + 1) in T) and \
                all(T[(i, j)] < T[(i + 1, j)] for (i, j) in cells if (i + 1, j) in T):
            count += 1
    return count


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(n)])
def test_weyl_dim_counts_tableaux(n, k):
    assert cov.weyl_dim(n, k) == ssyt_count([n - k] + [1] * k, n)


def test_weyl_dim_values():
    assert [cov.weyl_dim(3, 0), cov.weyl_dim(3, 1), cov.weyl_dim(4, 1), cov.weyl_dim(4, 0)] == [10, 8, 45, 35]
    with pytest.raises(ValueError):
        cov.weyl_dim(3, 3)


def test_d_invariants_example():
    assert cov.d_invariants(Matrix.diag([1, 2, 3])) == (6, Fraction(1, 3), 0)


@settings(max_examples=30, deadline=None)
@given(square_matrices(3), square_matrices(3))
def test_equivariance(A, g):
    if g.det() == 0:
        return
    gi = inverse_exact(g)
    B = g @ A @ gi
    assert cov.c1(B) == g @ cov.c1(A) @ gi
    assert cov.c2(B) == g @ cov.c2(A) @ gi
    assert cov.d_invariants(B) == cov.d_invariants(A)
    # c3(gAg^-1)(x) = det(g) c3(A)(g^-1 x)
    xs = cov.xvars(3)
    xvec = [MultiPoly.var(xs, v) for v in xs]
    y = gi @ xvec
    assert cov.c3(B) == cov.c3(A).subs(dict(zip(xs, y))) * g.det()


@given(square_matrices(3))
def test_c4_is_c3_of_transpose(A):
    assert cov.c4(A) == cov.c3(A.T)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_repeated_eigenvalue_relations(seed):
    A = ms.sample_stratum(ms.SpaceDescriptor("full_complex", 3), 2, seed=seed).matrix
    assert cov.c3(A).is_zero() and cov.c4(A).is_zero()
    _, d2, d3 = cov.d_invariants(A)
    assert d2 ** 3 == d3 ** 2
    u1, u2 = cov.c_U(A)
    assert d3 * u1 == d2 * u2


def test_c_U_forms():
    u1, u2 = cov.c_U()
    vs = u1.vars
    a = {v: MultiPoly.var(vs, v) for v in vs}
    assert u1 == a["a31"]
    expected = (a["a11"] * a["a31"] - 2 * a["a22"] * a["a31"] + a["a31"] * a["a33"]) * Fraction(1, 3) \
        + a["a21"] * a["a32"]
    assert u2 == expected
    desc = ms.SpaceDescriptor("full_complex", 3)
    for u in (u1, u2):
        assert cov.u_invariance_check(u, desc)
        assert cov.u_invariance_check(u, desc, method="substitute")
    assert cov.torus_weight(u1, 3) == (2, 1)
    assert cov.torus_weight(u2, 3) == (2, 1)


def test_symmetric_unipotent_choice():
    desc = ms.SpaceDescriptor("sym_complex", 3)
    vs = desc.variables()
    s = {v: MultiPoly.var(vs, v) for v in vs}
    # linear forms = trace + a 5-dimensional irreducible: two highest weight vectors
    hw = cov.highest_weight_vectors(list(s.values()), desc)
    assert len(hw) == 2
    trace = s["s11"] + s["s22"] + s["s33"]
    assert any(h == trace or h == -trace for h in hw)
    for h in hw:
        for method in ("derivation", "substitute"):
            assert cov.u_invariance_check(h, desc, method=method)
    assert not cov.u_invariance_check(s["s11"], desc)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_f_k_weights_and_invariance(n):
    G = ms.generic_matrix(ms.SpaceDescriptor("full_complex", n))
    for k in range(1, n):
        f = cov.f_k(G.matrix, k).with_vars(G.variables)
        shape = [n - k + 1] + [1] * (k - 1) + [0] * (n - k)
        assert cov.torus_weight(f, n) == tuple(shape[:n - 1])
        assert cov.u_invariance_check(f, G.descriptor)


def test_harmonicity_by_space():
    xs = cov.xvars(3)
    for kind in ("sym_real", "sym_complex"):
        G = ms.generic_matrix(ms.SpaceDescriptor(kind, 3))
        assert cov.laplacian(cov.c3(G.matrix), xs).is_zero()
        assert cov.c3(G.matrix) == cov.c4(G.matrix)
    G = ms.generic_matrix(ms.SpaceDescriptor("hermitian", 3))
    assert not cov.laplacian(cov.c3(G.matrix), xs).is_zero()


@given(rationals, rationals)
def test_binary_form_degenerations(a, b):
    x, y = (MultiPoly.var(("x", "y"), v) for v in ("x", "y"))
    L = x - y * a
    assert cov.hessian_quartic(L ** 4).is_zero()
    Q = L ** 2 * (x - y * b) ** 2
    H = cov.hessian_quartic(Q)
    # the Hessian of a quartic with a double root still vanishes at that root
    assert H.evaluate({"x": a, "y": 1}) == 0
    assert cov.jacobian_pair(Q, Q).is_zero()


def test_wedge_and_coordinates_counts():
    G = ms.generic_matrix(ms.SpaceDescriptor("full_complex", 3))
    assert len(cov.wedge_P(G.matrix, 1)) == 84
    coords = cov.coordinate_functions(cov.c3(G.matrix), 3, G.variables)
    assert len(coords) == 10


def test_d_invariants_on_D():
    z = MultiPoly.var(("z",), "z")
    D = Matrix.diag([z, z, z * -2])
    assert cov.d_invariants(D) == (0, z * z, -(z ** 3))
    assert cov.d_invariants(Matrix.identity(3)) == (3, 0, 0)


@given(square_matrices(3))
def test_trace_free_outputs(A):
    assert cov.c1(A).trace() == 0 and cov.c2(A).trace() == 0
    _, d2, d3 = cov.d_invariants(A)
    assert cov.d_invariants(cov.c1(A)) == (0, d2, d3)


def test_quartic_examples():
    x, y = (MultiPoly.var(("x", "y"), v) for v in ("x", "y"))
    assert cov.hessian_quartic(x ** 4 + y ** 4) == (x * y) ** 2 * 144
    sq = (x * x + y * y) ** 2
    assert cov.jacobian_pair(sq, cov.hessian_quartic(sq)).is_zero()
    q = x ** 3 * y
    assert not cov.jacobian_pair(q, cov.hessian_quartic(q)).is_zero()


def test_entry_functions_under_U():
    desc = ms.SpaceDescriptor("full_complex", 3)
    vs = desc.variables()
    a = {v: MultiPoly.var(vs, v) for v in vs}
    assert cov.u_invariance_check(a["a31"], desc, method="substitute")
    assert cov.torus_weight(a["a31"], 3) == (2, 1)
    assert not cov.u_invariance_check(a["a13"], desc, method="substitute")
    tr = a["a11"] + a["a22"] + a["a33"]
    assert cov.u_invariance_check(tr, desc) and cov.torus_weight(tr, 3) == (0, 0)
    assert cov.torus_weight(a["a11"] + a["a12"], 3) is None


@pytest.mark.parametrize("n", [2, 3])
def test_c_full_has_every_monomial(n):
    from math import comb

    G = ms.generic_matrix(ms.SpaceDescriptor("full_complex", n))
    assert len(cov.c_full(G.matrix).coefficients_in(cov.xvars(n))) == comb(2 * n - 1, n - 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_f_k_bihomogeneous(n):
    from math import comb

    G = ms.generic_matrix(ms.SpaceDescriptor("full_complex", n))
    for k in range(1, n):
        f = cov.f_k(G.matrix, k).with_vars(G.variables)
        assert f.is_homogeneous() and f.degree() == comb(n - k + 1, 2)
        shape = [n - k + 1] + [1] * (k - 1) + [0] * (n - k)
        assert cov.torus_weight(f, n) == tuple(shape[: n - 1])
        assert cov.u_invariance_check(f, G.descriptor)


def test_cauchy_binet_containment():
    from degenlocus.exactmath import Echelon

    G = ms.generic_matrix(ms.SpaceDescriptor("full_complex", 3))
    index, ech = {}, Echelon()

    def row(p):
        return {index.setdefault(e, len(index)): c for e, c in p.with_vars(G.variables).terms().items()}

    for p in cov.wedge_P(G.matrix, 1):
        if isinstance(p, MultiPoly):
            ech.add(row(p))
    for form in (cov.c3(G.matrix), cov.c4(G.matrix)):
        for _, coeff in cov.coordinate_functions(form, 3, G.variables):
            assert ech.contains(row(coeff))
