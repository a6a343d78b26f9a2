from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenlocus import matspaces as ms
from degenlocus.exactmath import Matrix, inverse_exact
from degenlocus.subdisc import (
    harmonic_check_cR, power_sums, random_hermitian_points, sdisc, sdisc_def, sos_certificate,
    vanishing_fk_on_stratum,
)
from strategies import gaussians, rationals


@st.composite
def triangular_with_spectrum(draw, elements=rationals):
    n = draw(st.integers(1, 4))
    eig = draw(st.lists(elements, min_size=n, max_size=n))
    rows = [[eig[i] if i == j else draw(elements) if j > i else 0 for j in range(n)] for i in range(n)]
    g = draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix))
    T = Matrix(rows)
    if g.det() != 0:
        T = g @ T @ inverse_exact(g)
    return T, eig


@settings(max_examples=60, deadline=None)
@given(triangular_with_spectrum(st.one_of(rationals, gaussians)), st.integers(0, 3))
def test_hankel_formula_matches_definition(data, k):
    A, eig = data
    k = min(k, len(eig) - 1)
    assert sdisc(A, k) == sdisc_def(eig, k)


def test_examples():
    D = Matrix.diag([1, 2, 3])
    assert sdisc(D, 0) == 4
    assert sdisc(D, 1) == 6
    assert sdisc(D, 2) == 3
    assert sdisc(Matrix([[0, 1], [-1, 0]]), 0) == -4
    with pytest.raises(ValueError):
        sdisc(D, 3)


def test_power_sums():
    assert power_sums(Matrix.diag([1, 2]), 3) == [2, 3, 5, 9]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_hermitian_subdiscriminants_nonnegative(seed):
    desc = ms.SpaceDescriptor("hermitian", 3)
    A = ms.sample_stratum(desc, 3, seed=seed).matrix
    assert all(sdisc(A, k) > 0 for k in range(3))
    B = ms.sample_stratum(desc, 2, seed=seed).matrix
    assert sdisc(B, 0) == 0 and sdisc(B, 1) > 0


@pytest.mark.parametrize("n,bound", [(2, 6), (3, 20)])
def test_sos_symbolic(n, bound):
    cert = sos_certificate(n, verify="symbolic")
    assert cert.verified == "symbolic"
    assert len(cert.terms) <= bound
    assert all(w > 0 for w, _ in cert.terms)
    js = cert.to_json()
    assert js["verified"] == "symbolic" and len(js["terms"]) == len(cert.terms)


def test_sos_sampled_agrees_with_symbolic():
    cert = sos_certificate(3, verify="samples", samples=5, seed=1)
    assert cert.verified == "samples" and cert.checked_points == 5
    pts = random_hermitian_points(3, 3, seed=2)
    assert cert.verify_points(pts)


def test_harmonic():
    assert harmonic_check_cR(2) and harmonic_check_cR(3)
    assert harmonic_check_cR(3, samples=3, seed=1)
    assert not harmonic_check_cR(3, space="hermitian")


@pytest.mark.parametrize("n,k", [(3, 0), (4, 1)])
def test_f_vanishing_small(n, k):
    rep = vanishing_fk_on_stratum(n, k, trials=10, seed=3)
    assert rep.passed and rep.to_json()["pass"]
    assert rep.squares == 2 * rep.weyl_dim


def test_f_does_not_vanish_off_stratum():
    from degenlocus.covariants import f_k

    A = ms.sample_stratum(ms.SpaceDescriptor("full_complex", 4), 4, seed=0).matrix
    assert all(f_k(A, k) != 0 for k in range(1, 4))
