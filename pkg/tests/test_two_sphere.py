from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import family_instances, two_sphere_instances
from eudes.coherent import build_relations, intersection_tensor
from eudes.families import example_n2_params, family_nontight, family_tight
from eudes.scalar import Quad, sqrt_exact
from eudes.two_sphere import (ParameterError, TwoSphereParams, closed_form_tensor, derive_secondary,
                              integrality_report, label_name, nine_equation_parts, nine_equation_residuals,
                              params_from_json, residual_identities_vs_tensor)


def test_derive_secondary_examples():
    assert derive_secondary(2, 4, 4, 0, 0, sqrt_exact(F(1, 2))).alpha2 == -1
    p = derive_secondary(5, 10, 16, 0, F(1, 5), sqrt_exact(F(1, 5)))
    assert p.alpha2 == -1 and p.beta2 == F(-3, 5)
    assert p.gamma2 == -sqrt_exact(F(1, 5))


def test_derive_secondary_errors():
    with pytest.raises(ParameterError):
        derive_secondary(5, 6, 16, 0, F(1, 5), sqrt_exact(F(1, 5)))
    with pytest.raises(ParameterError):
        derive_secondary(5, 10, 16, 0, F(1, 5), 0)
    with pytest.raises(ParameterError):
        TwoSphereParams(2, 4, 4, 0, -1, 0, -1, 0.5, -1)


def test_alpha0_gamma1_gamma1():
    def p00(params):
        return closed_form_tensor(params).named("alpha0", "gamma1", "gamma1")
    assert p00(example_n2_params(2)) == 2
    assert p00(family_nontight(2).params) == 8
    assert p00(family_tight(1).params) == 15


@pytest.mark.parametrize("r2", [2, 3, F(1, 2), sqrt_exact(3)])
def test_nine_equations_n2(r2):
    assert all(not v for v in nine_equation_residuals(example_n2_params(r2)))


def test_nine_equations_families():
    for inst in family_instances():
        assert all(not v for v in nine_equation_residuals(inst.params)), (inst.kind, inst.k)


def test_nine_equations_perturbed():
    p = family_tight(1).params
    res = nine_equation_residuals(p.with_radius(p.r2, p.w2 + 1))
    assert any(res)
    # X_1 is a simplex at k = 1: the w_2 coefficient of (I) carries (N_1-1)alpha_1+1 = 0
    assert not res[0]
    assert [bool(v) for v in res] == [False, False, True, True, False, False, True, True, False]
    # the non-tight family has n gamma_1^2 = 1, which also removes w_2 from (I)
    p = family_nontight(3).params
    assert not nine_equation_residuals(p.with_radius(p.r2, p.w2 + 1))[0]
    p = family_tight(2).params
    assert nine_equation_residuals(p.with_radius(p.r2, p.w2 + 1))[0]


def test_nine_equations_consistent_transcription():
    # equations sharing the exponent of r_2 must determine the same w_2 r_2^e
    for inst in family_instances():
        parts = nine_equation_parts(inst.params)
        for c1, e1, d1 in parts:
            for c2, e2, d2 in parts:
                if e1 == e2:
                    assert c1 * d2 == c2 * d1


@given(st.fractions(min_value=F(1, 10), max_value=10, max_denominator=20).filter(lambda r: r != 1))
def test_nine_equations_n2_any_radius(r):
    p = example_n2_params(r)
    assert all(not v for v in nine_equation_residuals(p))
    parts = nine_equation_parts(p)
    for c1, e1, d1 in parts:
        for c2, e2, d2 in parts:
            if e1 == e2:
                assert c1 * d2 == c2 * d1


def test_integrality_families():
    for inst in family_instances():
        assert integrality_report(inst.tensor()).feasible


def test_integrality_adhoc_violations():
    p = derive_secondary(6, 8, 20, F(1, 7), F(1, 5), F(1, 2)).with_radius(2, 1)
    rep = integrality_report(closed_form_tensor(p))
    assert not rep.feasible and rep.violations()


def test_identities_vs_closed_form():
    assert residual_identities_vs_tensor(family_nontight(2).params).passed
    assert residual_identities_vs_tensor(family_tight(1).params).passed
    assert residual_identities_vs_tensor(example_n2_params(3)).passed


def test_identities_fail_on_bad_gamma():
    q = family_tight(1).params
    bad = TwoSphereParams(q.n, q.N1, q.N2, q.alpha1, q.alpha2, q.beta1, q.beta2, q.gamma1, 2 * q.gamma2,
                          q.r2, q.w2)
    assert "gamma1*gamma2 = -1/n" in bad.check_order()
    rep = residual_identities_vs_tensor(bad)
    assert not rep.passed
    assert any(k.startswith("(1,1,0)") for k in rep.failures())


def test_params_json_round_trip():
    for inst in family_instances():
        assert params_from_json(inst.params.to_json()) == inst.params
    assert params_from_json('{"n": 2, "N1": 4, "N2": 4, "alpha1": "0", "alpha2": "-1", "beta1": "0", '
                            '"beta2": "-1", "gamma1": "1/2*rt(2)", "gamma2": "-1/2*rt(2)"}').r2 is None
    with pytest.raises(ParameterError):
        params_from_json({"n": 2, "N1": 4, "N2": 4, "alpha1": "0.0", "alpha2": "-1", "beta1": "0",
                          "beta2": "-1", "gamma1": "1", "gamma2": "-1/2"})


def test_label_names():
    assert label_name((1, 1, 0)) == "alpha0"
    assert label_name((2, 1, 2)) == "gamma2'"


# ------------------------------------------------- brute force vs closed form

@pytest.mark.parametrize("idx", range(6))
def test_brute_force_matches_closed_form(idx):
    params, d = two_sphere_instances()[idx]
    T = intersection_tensor(d)
    C = closed_form_tensor(params)
    assert T.constant
    keys = set(T.entries) | set(C.entries)
    assert len(keys) >= 30
    for a, b, c in keys:
        assert T.value(a, b, c) == C.value(a, b, c), (a, b, c)


@pytest.mark.parametrize("idx", range(6))
def test_gamma_product_on_instances(idx):
    params, d = two_sphere_instances()[idx]
    rp = build_relations(d)
    g1, g2 = rp.cosine((1, 2, 1)), rp.cosine((1, 2, 2))
    assert g1 * g2 == Quad(-1) / d.n
    assert params.gamma1 * params.gamma2 == Quad(-1) / params.n


def test_gamma_product_families():
    for inst in family_instances():
        p = inst.params
        assert p.gamma1 * p.gamma2 == Quad(-1) / p.n
        assert p.check_order() == []
