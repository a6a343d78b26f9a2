"""Acceptance criteria, one test each.

Each test records a single PASS/FAIL line (with wall time); the lines are
printed in the terminal summary, or directly when run as a script.
"""

import time
from contextlib import contextmanager

import pytest

from degenlocus import covariants as cov
from degenlocus import idealcheck as ic
from degenlocus import matspaces as ms
from degenlocus.exactmath import MultiPoly, charpoly
from degenlocus.subdisc import harmonic_check_cR, sos_certificate, vanishing_fk_on_stratum

RESULTS = {}


@contextmanager
def criterion(number, title, budget):
    """Time the block; the criterion passes when it finishes within ``budget`` seconds without error."""
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < budget
        RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({dt:.2f}s, budget {budget:g}s)"
    assert dt < budget, f"took {dt:.1f}s, budget {budget}s"


def test_criterion_01_covariant_coordinate_rank():
    with criterion(1, "c3/c4 coordinate rank 20 (full), 7 (symmetric)", 1):
        assert ic.span_checks("full")["covariant_rank"] == 20
        assert ic.span_checks("sym")["covariant_rank"] == 7


def test_criterion_02_wedge_span_equals_covariant_span():
    with criterion(2, "wedge coordinates span the same space", 10):
        full, sym = ic.span_checks("full"), ic.span_checks("sym")
        assert full["wedge_count"] == 84
        assert full["wedge_rank"] == full["union_rank"] == 20
        assert sym["wedge_rank"] == sym["union_rank"] == 7


def test_criterion_03_membership_certificates():
    with criterion(3, "four relations lie in the ideal of c3 coordinates", 600):
        gens = list(ic.case_generators("full", "c3"))
        for name, target in ic.relation_targets().items():
            cert = ic.membership_fixed_degree(target, gens, method="modular")
            assert cert is not None, name
            assert cert.combination() == target, name


def test_criterion_04_quotient_hilbert_function():
    with criterion(4, "rank-computed Hilbert function matches the closed forms", 1800):
        full = ic.quotient_hilbert("full", 5)
        sym = ic.quotient_hilbert("sym", 4)
        assert full == ic.closed_form_hilbert("full", 5) == [1, 9, 45, 145, 370, 811]
        assert sym == ic.closed_form_hilbert("sym", 4) == [1, 6, 21, 49, 94]


def test_criterion_05_multiplicity_series():
    with criterion(5, "multiplicity series identities to order 8; characters at q=1", 1):
        for case in ic.CASES:
            assert ic.multiplicity_series(case, 8) == ic.multiplicity_series_identity(case, 8)
        assert ic.character_series("full", 5).at_one() == [1, 9, 45, 145, 370, 811]
        assert ic.character_series("sym", 4).at_one() == [1, 6, 21, 49, 94]


@pytest.mark.slow
def test_criterion_06_sum_of_squares():
    with criterion(6, "SOS certificates: n=2,3 symbolic; n=4 on 10*dim points", 300):
        c2 = sos_certificate(2, verify="symbolic")
        c3 = sos_certificate(3, verify="symbolic")
        assert len(c2.terms) <= 6 and len(c3.terms) <= 20
        dim = ms.SpaceDescriptor("hermitian", 4).dim
        c4 = sos_certificate(4, verify="samples", samples=10 * dim, seed=0)
        assert c4.verified == "samples" and c4.checked_points >= 10 * dim


def test_criterion_07_evaluation_ranks():
    with criterion(7, "evaluation ranks 9, 45, 145 on 150 points of Her(3)_1", 120):
        desc = ms.SpaceDescriptor("hermitian", 3)
        ranks = [ic.eval_rank_on_stratum(desc, 2, d, 150, seed=0) for d in (1, 2, 3)]
        assert ranks == [9, 45, 145]


def test_criterion_08_f_vanishing_and_highest_weight():
    with criterion(8, "f_(k+1) vanishes on strata; f_k weights and U-invariance", 120):
        for n, k in [(3, 0), (4, 0), (4, 1), (5, 2)]:
            assert vanishing_fk_on_stratum(n, k, trials=50, seed=0).passed, (n, k)
        for n in (2, 3, 4):
            G = ms.generic_matrix(ms.SpaceDescriptor("full_complex", n))
            for k in range(1, n):
                f = cov.f_k(G.matrix, k).with_vars(G.variables)
                shape = [n - k + 1] + [1] * (k - 1) + [0] * (n - k)
                assert cov.torus_weight(f, n) == tuple(shape[: n - 1])
                assert cov.u_invariance_check(f, G.descriptor)


def test_criterion_09_symmetric_jordan_blocks():
    with criterion(9, "symmetric S_r and S_(r,eps) have the right characteristic polynomials", 1):
        x = MultiPoly.var(("x",), "x")
        lam, eps = 3, 2
        for r in range(1, 6):
            S = ms.symmetrize_jordan(r, lam)
            assert S.is_symmetric() and charpoly(S) == (x - lam) ** r
            P = ms.s_perturb(r, lam, eps)
            want = x - lam - eps if r == 1 else (x - lam - eps) * (x - lam + eps) * (x - lam) ** (r - 2)
            assert P.is_symmetric() and charpoly(P) == want


def test_criterion_10_harmonic_and_c4_equals_c3():
    with criterion(10, "c3 harmonic on symmetric 3x3; c4 = c3 on sym_complex", 10):
        assert harmonic_check_cR(3)
        G = ms.generic_matrix(ms.SpaceDescriptor("sym_complex", 3))
        assert cov.laplacian(cov.c3(G.matrix), cov.xvars(3)).is_zero()
        assert cov.c4(G.matrix) == cov.c3(G.matrix)


def test_criterion_11_monomial_kernel():
    with criterion(11, "monomial algebra kernel check up to total degree 12", 5):
        ok, _ = ic.monomial_kernel_check(12)
        assert ok


def test_criterion_12_relations_on_locus():
    with criterion(12, "relations on 50 samples per case; diag(1,2,3) control fails", 30):
        rep = ic.relations_on_M1_check(seed=0, samples=50)
        assert rep["full:relations"] and rep["sym:relations"]
        assert rep["control:diag(1,2,3) violates d2^3=d3^2"]


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for t in tests:
        try:
            t()
        except Exception:
            pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if all("[PASS]" in line for line in RESULTS.values()) else 1)
