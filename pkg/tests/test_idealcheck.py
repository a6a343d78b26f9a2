from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenlocus import idealcheck as ic
from degenlocus import matspaces as ms
from degenlocus.covariants import d_invariants
from degenlocus.exactmath import MultiPoly


def test_generator_counts():
    assert len(ic.case_generators("full", "c3")) == 10
    assert len(ic.case_generators("full")) == 20
    assert all(g.degree() == 3 and g.is_homogeneous() for g in ic.case_generators("full"))


@pytest.mark.parametrize("case,d", [("full", 3), ("full", 4), ("sym", 4)])
def test_weight_splitting_does_not_change_rank(case, d):
    gens = list(ic.case_generators(case))
    vs = ic.case_space(case).variables()
    assert ic.ideal_component_dim(gens, d, vs, split=True) == ic.ideal_component_dim(gens, d, vs, split=False)


def test_generator_order_invariance():
    assert ic.quotient_hilbert("sym", 4, reverse=True) == ic.quotient_hilbert("sym", 4)


def test_quotient_hilbert_small_degrees():
    # no relations below degree 3: the quotient agrees with the polynomial ring
    assert ic.quotient_hilbert("full", 2) == [comb(9 + d - 1, d) for d in range(3)]
    assert ic.quotient_hilbert("full", 3)[3] == comb(11, 3) - 20


def test_membership_targets_and_non_member():
    gens = list(ic.case_generators("full", "c3"))
    for name, target in ic.relation_targets().items():
        for method in ("exact", "modular"):
            cert = ic.membership_fixed_degree(target, gens, method=method)
            assert cert is not None and cert.verify(), (name, method)
    # d2^3 does not vanish at diag(1, 1, -2), so it is not in the ideal
    _, d2, _ = (p.with_vars(gens[0].vars) for p in d_invariants(ms.generic_matrix(ic.case_space("full")).matrix))
    assert ic.membership_fixed_degree(d2 ** 3, gens) is None


def test_membership_rejects_inhomogeneous():
    g = list(ic.case_generators("full", "c3"))
    with pytest.raises(ValueError):
        ic.membership_fixed_degree(g[0] + MultiPoly.const(g[0].vars, 1), g)


@pytest.mark.parametrize("case", ic.CASES)
def test_series_identities(case):
    assert ic.multiplicity_series(case, 8) == ic.multiplicity_series_identity(case, 8)
    assert ic.character_series(case, 6).at_one() == ic.closed_form_hilbert(case, 6)


def test_closed_forms():
    assert ic.closed_form_hilbert("full", 6) == [1, 9, 45, 145, 370, 811, 1595]
    assert ic.closed_form_hilbert("sym", 6) == [1, 6, 21, 49, 94, 160, 251]


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_eval_rank_degree_one_and_two(seed):
    desc = ms.SpaceDescriptor("hermitian", 3)
    assert ic.eval_rank_on_stratum(desc, 2, 1, 20, seed=seed) == 9
    assert ic.eval_rank_on_stratum(desc, 2, 2, 60, seed=seed) == 45


def test_eval_rank_methods_agree():
    desc = ms.SpaceDescriptor("sym_real", 3)
    exact = ic.eval_rank_on_stratum(desc, 2, 2, 40, method="exact")
    assert exact == ic.eval_rank_on_stratum(desc, 2, 2, 40, method="certified") == 21


def test_weight_multiplicities_degree_two():
    ok, found, expected = ic.weight_multiplicity_check(2)
    assert ok and found == expected


def test_monomial_kernel_small():
    ok, table = ic.monomial_kernel_check(6)
    assert ok and table


def test_relations_report_keys():
    rep = ic.relations_on_M1_check(seed=1, samples=5)
    assert all(rep.values())
    assert any(k.startswith("control") for k in rep)


@pytest.mark.parametrize("case,rank", [("full", 20), ("sym", 7)])
def test_span_checks(case, rank):
    r = ic.span_checks(case)
    assert r["covariant_rank"] == r["wedge_rank"] == r["union_rank"] == rank


@pytest.mark.parametrize("method", ["exact", "modular"])
def test_unsplit_system_agrees(method):
    gens = list(ic.case_generators("full", "c3"))
    target = ic.relation_targets()["d2^3-d3^2"]
    split = ic.membership_fixed_degree(target, gens, method=method)
    whole = ic.membership_fixed_degree(target, gens, method=method, split=False)
    assert whole.unknowns > split.unknowns
    assert whole.verify() and split.verify()
