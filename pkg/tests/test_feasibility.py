from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from eudes.feasibility import (F2, F3, F_eps, G, G_expanded, K_bounds, D_alpha, D_beta, D_i, D_i_quadratic,
                               P0_identity_sides, VERDICTS, alpha1_zero_classify, case_n_plus_one,
                               diophantine_scan, distance_ratio_sq, evaluate_candidate, m_interval_n_plus_one,
                               m_values, monotonicity_spotcheck, n1_range, n_plus_one_scan, n_plus_one_verdict,
                               search_tight)
from eudes.scalar import Quad, sqrt_exact
from eudes.two_sphere import ParameterError, nine_equation_residuals


# ------------------------------------------------------------ bound functions

@pytest.mark.parametrize("n", range(5, 31))
def test_F3_corner_value(n):
    assert F3(n, n * (n + 3) // 2, F(n + 1, 2)) == n + 3


@pytest.mark.parametrize("k", range(2, 9))
def test_G_at_family_size(k):
    x = 2 * k ** 3 * (2 * k - 3)
    assert G(k, x) == (2 * k - 1) ** 2
    assert G_expanded(k, x) == G(k, x)


def test_F2_value():
    assert F2(6, F(63, 4)) == F(54, 5)
    with pytest.raises(ZeroDivisionError):
        # 4x^2 - (12n+4)x + n(n+3)^2 = 0 at n = 1, x = 2
        F2(1, 2)


def test_F3_boundary_limits():
    for n in (5, 10, 20):
        lo, hi = m_interval_n_plus_one(n)
        x_max = n * (n + 3) // 2
        # just above y = (n+1)/2 the ratio sits below n + 3
        assert F3(n, x_max, lo + F(1, 10 ** 6)) < n + 3
        y = lo + F(1, 100)
        assert F3(n, x_max, y) > n + 2


def test_distance_ratio():
    assert distance_ratio_sq(F(1, 5), F(-3, 5)) == 9
    assert distance_ratio_sq(Quad(0), Quad(-1)) == 9


# ------------------------------------------------------------ N_1 = n + 1

def test_n_plus_one_scan_not_integral():
    for n in range(5, 26):
        cases = n_plus_one_scan(n)
        assert all(not c.integral for c in cases), n


def test_n_plus_one_cases_consistent():
    for n in (5, 8, 10, 13):
        cases = n_plus_one_scan(n)
        assert cases
        for c in cases:
            assert all(not r for r in c.residuals)
            assert c.ratio == c.ratio_from_betas
            assert c.to_json()["integral"] is False


def test_n_plus_one_verdicts():
    assert n_plus_one_verdict(5, 15) == "tight"
    assert n_plus_one_verdict(5, 16) == "excluded"
    assert n_plus_one_verdict(5, 40) == "out_of_range"
    with pytest.raises(ParameterError):
        case_n_plus_one(2, 4, 2)
    with pytest.raises(ParameterError):
        case_n_plus_one(10, 60, 3)


def test_monotonicity_actual_signs():
    rep = monotonicity_spotcheck(samples=100, n=10, seed=0)
    # F decreases in y and also in x over the box
    assert rep.dy_negative == rep.samples
    assert rep.dx_positive == 0


@pytest.mark.xfail(strict=True, reason="F(n, x, y) decreases in x on the box; see the decision ledger")
def test_monotonicity_literal_dx_positive():
    rep = monotonicity_spotcheck(samples=100, n=10, seed=0)
    assert rep.dx_positive == rep.samples


@pytest.mark.xfail(strict=True, reason="F leaves (n+2, n+3) inside the box; see the decision ledger")
def test_monotonicity_literal_inside_bounds():
    rep = monotonicity_spotcheck(samples=100, n=10, seed=0)
    assert rep.ok


def test_monotonicity_counter_example():
    # the ratio exceeds n + 3 at a box point with small N_2
    assert F3(10, 55, F(551, 100)) > 13
    assert F3(10, 65, F(837, 100)) < 12


# ------------------------------------------------------------ tight search

def test_m_values():
    assert m_values(6, 7) == (5, 15)
    assert m_values(78, 1027) == (533, 1107)
    assert m_values(22, 33) == (22, 162)


def test_evaluate_known_records():
    assert evaluate_candidate(6, 7, -1).verdict == "range_fail"
    r = evaluate_candidate(78, 1027, -1)
    assert r.feasible and (r.N2, r.m1, r.m2) == (2133, 533, 1107)
    assert r.alpha1 == F(13, 171) and r.beta2 == F(-119, 1066) and r.w2 == F(1, 6561)
    r = evaluate_candidate(22, 33, 1)
    assert r.feasible and (r.N2, r.m1, r.m2) == (243, 22, 162)
    assert set(r.to_json()) >= {"n", "N1", "N2", "m1", "m2", "epsilon", "verdict"}
    assert evaluate_candidate(22, 33, -1).verdict != "feasible"


def test_n1_range():
    assert list(n1_range(6)) == [8, 9, 10, 11]
    assert list(n1_range(2)) == []


@pytest.fixture(scope="module")
def search_minus():
    return search_tight(2, 222, -1, keep="candidates", threads=1)


@pytest.fixture(scope="module")
def search_plus():
    return search_tight(2, 222, 1, keep="candidates", threads=1)


def test_search_minus(search_minus):
    assert [(r.n, r.N1, r.N2) for r in search_minus.feasible] == [(78, 1027, 2133), (222, 8251, 16725)]
    assert set(search_minus.counts) <= set(VERDICTS)


def test_search_plus(search_plus):
    assert [(r.n, r.N1, r.N2, r.m1, r.m2) for r in search_plus.feasible] == [(22, 33, 243, 22, 162)]


def test_search_record_invariants(search_minus, search_plus):
    for res in (search_minus, search_plus):
        for r in res.records:
            assert r.N1 + r.N2 == (r.n + 1) * (r.n + 2) // 2
            if r.m1 is not None and r.verdict not in ("m_range_fail", "m_ratio_fail"):
                assert r.N1 * r.m2 == r.N2 * r.m1
                assert F(r.N1 - r.m1, r.n * r.m1) == F(r.N2 - r.m2, r.n * r.m2)
            if r.D_alpha is not None and r.verdict != "cosine_fail":
                assert r.D_alpha >= 0 and r.D_beta >= 0
            if r.W is not None and r.gamma1_sq is not None:
                lhs, rhs = P0_identity_sides(r.n, r.N1, sqrt_exact(r.gamma1_sq.a), r.W)
                assert lhs == rhs
        for r in res.feasible:
            assert all(not v for v in nine_equation_residuals(r.params))
            p = r.params
            assert p.gamma1 * p.gamma2 == Quad(-1) / p.n


def test_search_thread_and_order_invariance():
    a = search_tight(70, 90, -1, keep="all", threads=1)
    b = search_tight(70, 90, -1, keep="all", threads=2)
    assert [x.to_json() for x in a.records] == [x.to_json() for x in b.records]
    assert a.counts == b.counts
    parts = search_tight(80, 90, -1, keep="all", threads=1).records + \
        search_tight(70, 79, -1, keep="all", threads=1).records
    parts.sort(key=lambda r: r.sort_key)
    assert [x.to_json() for x in parts] == [x.to_json() for x in a.records]


def test_search_screen_off_keeps_feasible():
    res = search_tight(75, 80, -1, screen=False, threads=1)
    assert [(r.n, r.N1) for r in res.feasible] == [(78, 1027)]


def test_search_rejects_bad_arguments():
    with pytest.raises(ValueError):
        search_tight(2, 5, 0)
    with pytest.raises(ValueError):
        search_tight(2, 5, 1, keep="some")


# ------------------------------------------------------------ alpha_1 = 0

def test_alpha1_zero():
    res = alpha1_zero_classify()
    assert [(r.n, r.N1, r.N2) for r in res.records] == [(4, 6, 9), (22, 33, 243)]
    assert res.square_q == [2, 3]
    assert ("q=3,k=1", "N1 < n + 2") in res.rejected
    for r in res.records:
        p = r.params()
        assert all(not v for v in nine_equation_residuals(p))
        assert p.gamma1 * p.gamma2 == Quad(-1) / p.n
    with pytest.raises(ValueError):
        alpha1_zero_classify(2)


# ------------------------------------------------------------ Diophantine

def test_diophantine():
    assert diophantine_scan("a", 10 ** 5) == []
    assert diophantine_scan("b", 10 ** 5) == [2, 3]
    # n = 2 sits below the scanned range of kind a
    assert 2 * 3 * 6 == 36
    assert diophantine_scan("a", 10, lo=2) == [2]
    with pytest.raises(ValueError):
        diophantine_scan("c")
    with pytest.raises(ValueError):
        diophantine_scan("a", 2)


# ------------------------------------------------------------ properties

small_n = st.integers(3, 40)


@given(small_n, st.integers(5, 900), st.fractions(min_value=F(1, 1000), max_value=F(1, 2), max_denominator=1000))
def test_D_i_two_forms(n, N, g2):
    assert D_i(n, N, g2) == D_i_quadratic(n, N, g2)


@settings(max_examples=30)
@given(small_n, st.integers(5, 200), st.fractions(min_value=F(1, 100), max_value=F(1, 3), max_denominator=100),
       st.fractions(min_value=F(1, 10), max_value=10, max_denominator=20))
def test_P0_identity(n, N1, g2, W):
    g = sqrt_exact(g2)
    lhs, rhs = P0_identity_sides(n, N1, g, W)
    assert lhs == rhs


@settings(max_examples=30)
@given(st.integers(5, 40), st.data())
def test_K_bounds_match_discriminant(n, data):
    N = data.draw(st.integers(n + 2, n * (n + 3) // 2))
    b = K_bounds(n, N)
    if b is None:
        return
    (lo1, hi1), (lo2, hi2) = b
    m = data.draw(st.integers(N // 2 + 1, N - 1))
    g2 = F(N - m, n * m)
    inside = (lo1 < m < hi1 - 1e-9) or (lo2 + 1e-9 < m < hi2)
    outside = (hi1 + 1e-9 < m < lo2 - 1e-9)
    if inside:
        assert D_i(n, N, g2) >= 0
    if outside:
        assert D_i(n, N, g2) < 0


def test_F_eps_matches_evaluated_record():
    for n, N1, eps in ((78, 1027, -1), (22, 33, 1)):
        r = evaluate_candidate(n, N1, eps)
        for N, m, c1, c2 in ((r.N1, r.m1, r.alpha1, r.alpha2), (r.N2, r.m2, r.beta1, r.beta2)):
            target = distance_ratio_sq(c1, c2)
            assert target in (F_eps(n, N, m, 1), F_eps(n, N, m, -1))


@given(st.integers(2, 12), st.fractions(min_value=0, max_value=10 ** 4, max_denominator=30))
def test_G_forms_agree(k, x):
    try:
        g = G(k, x)
    except ZeroDivisionError:
        return
    assert g == G_expanded(k, x)


def test_D_alpha_beta_on_record():
    r = evaluate_candidate(78, 1027, -1)
    g = sqrt_exact(r.gamma1_sq.a)
    assert D_alpha(78, 1027, g, r.W) == r.D_alpha
    assert D_beta(78, 2133, g, r.W) == r.D_beta
