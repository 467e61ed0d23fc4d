from __future__ import annotations

from collections import Counter
from fractions import Fraction as F

import pytest

from conftest import family_instances, schlafli, split_k2
from eudes.coherent import intersection_tensor, scheme_matrices
from eudes.designs import Design, decompose_layers, dot, verify_design
from eudes.families import (FamilyError, UnsupportedError, tabulated_nontight, tabulated_tight, example_n2,
                            exact_gram_realization, family_n2, family_nontight, family_realization,
                            family_tight, lift_euclidean, schlafli_design, schlafli_graph, split_spherical,
                            tight_lower_bound)
from eudes.scalar import Quad, sqrt_exact


def test_nontight_parameters():
    p = family_nontight(2).params
    assert (p.n, p.N1, p.N2) == (5, 10, 16)
    assert (p.alpha1, p.alpha2, p.beta1, p.beta2) == (0, -1, F(1, 5), F(-3, 5))
    assert p.gamma1 == sqrt_exact(F(1, 5))
    assert p.r2 == sqrt_exact(F(5, 4)) and p.w2 == 1
    p = family_nontight(3).params
    assert p.n == 21 and p.N2 == 162
    assert family_nontight(2).tensor().named("alpha1", "gamma2", "gamma2") == 4


def test_nontight_r2_free():
    inst = family_nontight(2, 3)
    assert inst.params.r2 == 3
    assert inst.params.w2 * 3 ** 4 == F(25, 16) * 1
    with pytest.raises(FamilyError):
        family_nontight(2, 1)
    with pytest.raises(FamilyError):
        family_nontight(1)


def test_tight_parameters():
    p = family_tight(1).params
    assert (p.n, p.N1, p.N2) == (6, 7, 21)
    assert p.r2 == sqrt_exact(15) and p.w2 == F(1, 81)
    assert p.N1 + p.N2 == 28
    assert family_tight(2).params.n == 78
    for k in range(1, 6):
        q = family_tight(k).params
        assert q.N1 + q.N2 == (q.n + 1) * (q.n + 2) // 2
    with pytest.raises(FamilyError):
        family_tight(0)


def test_n2_examples():
    d = example_n2(2)
    assert len(d.points) == 8
    assert list(d.weights) == [1] * 4 + [F(1, 16)] * 4
    assert verify_design(example_n2(3), 4).passed
    with pytest.raises(FamilyError):
        example_n2(1)
    with pytest.raises(FamilyError):
        example_n2(-2)


def test_tight_lower_bound():
    assert tight_lower_bound(6) == 28
    assert tight_lower_bound(5) == 21 < 26
    assert tight_lower_bound(2) == 6 < 8
    with pytest.raises(UnsupportedError):
        tight_lower_bound(5, p=3)
    with pytest.raises(UnsupportedError):
        tight_lower_bound(5, origin=True)


# -------------------------------------------------------------- golden data

@pytest.mark.parametrize("k", range(2, 7))
def test_tabulated_nontight_golden(k):
    inst = family_nontight(k)
    assert len(inst.expected_entries) >= 30
    assert inst.golden_mismatches() == []


@pytest.mark.parametrize("k", range(1, 6))
def test_tabulated_tight_golden(k):
    inst = family_tight(k)
    assert len(inst.expected_entries) >= 30
    assert inst.golden_mismatches() == []


def _perm_equal(A, B, rows=True):
    # equality up to the order of eigenspaces
    if rows:
        return Counter(map(tuple, A)) == Counter(map(tuple, B))
    return _perm_equal(list(map(list, zip(*A))), list(map(list, zip(*B))))


def _q(M):
    return [[Quad(x) if not isinstance(x, Quad) else x for x in row] for row in M]


@pytest.mark.parametrize("kind,k", [("nontight", k) for k in range(2, 6)] + [("tight", k) for k in range(1, 5)])
def test_scheme_matrices_match_tables(kind, k):
    inst = family_nontight(k) if kind == "nontight" else family_tight(k)
    T = inst.tensor().to_tensor()
    for f in (1, 2):
        se = scheme_matrices(T, f)
        assert se.check_PQ()
        P, Q = inst.expected["P"][f], inst.expected["Q"][f]
        if len(se.P) == len(P):
            assert _perm_equal(se.P, _q(P))
            assert _perm_equal(se.Q, _q(Q), rows=False)
            for i, B in enumerate(inst.expected["B"][f]):
                assert se.B[i + 1] == _q(B)
        else:
            # tight k = 1: X_1 is a simplex, its second class is empty
            assert kind == "tight" and k == 1 and f == 1 and len(se.P) == 2


@pytest.mark.parametrize("k", range(2, 6))
def test_sphere_eigenmatrices_pq(k):
    ap = tabulated_nontight(k)
    P, Q = _q(ap["sphere_P"]), _q(ap["sphere_Q"])
    m = len(P)
    N = sum(P[0])
    for i in range(m):
        for j in range(m):
            acc = sum((P[i][t] * Q[t][j] for t in range(m)), start=Quad(0))
            assert acc == (N if i == j else 0)


def test_tabulated_eigenmatrices_pq():
    for k in range(2, 7):
        ap = tabulated_nontight(k)
        for f in (1, 2):
            P, Q = _q(ap["P"][f]), _q(ap["Q"][f])
            N = sum(P[0])
            for i in range(len(P)):
                for j in range(len(P)):
                    acc = sum((P[i][t] * Q[t][j] for t in range(len(P))), start=Quad(0))
                    assert acc == (N if i == j else 0)
    for k in range(1, 6):
        ap = tabulated_tight(k)
        for f in (1, 2):
            P, Q = _q(ap["P"][f]), _q(ap["Q"][f])
            N = sum(P[0])
            for i in range(len(P)):
                for j in range(len(P)):
                    acc = sum((P[i][t] * Q[t][j] for t in range(len(P))), start=Quad(0))
                    assert acc == (N if i == j else 0)


# ------------------------------------------------------------ 27 points

def test_schlafli_graph():
    names, A = schlafli_graph()
    assert len(names) == 27
    assert all(sum(r) == 10 for r in A)
    assert all(A[i][j] == A[j][i] and not A[i][i] for i in range(27) for j in range(27))
    # strongly regular (27, 10, 1, 5)
    for i in range(27):
        for j in range(i + 1, 27):
            common = sum(A[i][k] and A[j][k] for k in range(27))
            assert common == (1 if A[i][j] else 5)


def test_schlafli_design():
    Y = schlafli()
    assert len(Y.points) == 27 and len(Y.points[0]) == 6
    cos = Counter()
    for i in range(27):
        assert dot(Y.points[i], Y.points[i]) == 1
        for j in range(i + 1, 27):
            cos[dot(Y.points[i], Y.points[j])] += 1
    assert set(cos) == {F(1, 4), F(-1, 2)}
    # row sums of the Gram matrix vanish, so the points sum to zero
    assert all(sum(row) == 0 for row in Y.gram)
    assert all(sum((p[c] for p in Y.points), start=Quad(0)) == 0 for c in range(6))
    assert verify_design(Y.design, 4, route="gram").passed
    assert Y.points[0] == (0,) * 5 + (1,) or list(Y.points[0]) == [0] * 5 + [1]


def test_split_k2():
    X = split_k2()
    L1, L2 = decompose_layers(X).layers
    assert (len(L1.members), len(L2.members)) == (10, 16)
    assert L1.radius == sqrt_exact(F(3, 4)) and L2.radius == sqrt_exact(F(15, 16))
    assert verify_design(X, 4).passed
    assert not verify_design(X, 5).passed
    assert intersection_tensor(X).constant


def test_split_other_base_and_point_argument():
    Y = schlafli()
    X = split_spherical(Y, 5, 2)
    assert verify_design(X, 4).passed
    X2 = split_spherical(Y, list(Y.points[5]), 2)
    assert len(X2.points) == 26
    with pytest.raises(FamilyError):
        split_spherical(Y, [1, 0, 0, 0, 0, 0], 2)
    with pytest.raises(FamilyError):
        split_spherical(Y, 0, 3)


def test_lift_round_trip():
    Y = schlafli()
    Z = lift_euclidean(split_k2(), 2)
    assert len(Z.points) == 27 and Z.n == 6
    assert verify_design(Z, 4).passed

    def spectrum(pts):
        c = Counter()
        for i in range(len(pts)):
            for j in range(len(pts)):
                c[dot(pts[i], pts[j])] += 1
        return c
    assert spectrum(Z.points) == spectrum(Y.points)
    assert set(Z.weights) == {1}
    # and back down again
    X = split_spherical(Z, 0, 2)
    assert spectrum(X.points) == spectrum(split_k2().points)


def test_lift_rejects_wrong_input():
    with pytest.raises(FamilyError):
        lift_euclidean(example_n2(2), 2)
    X = split_k2()
    L1, L2 = decompose_layers(X).layers
    bad = Design(X.n, [X.points[i] for i in L1.members] + [[2 * c for c in X.points[i]] for i in L2.members],
                 [1] * 26)
    with pytest.raises(FamilyError):
        lift_euclidean(bad, 2)


def test_exact_gram_realization():
    G = [[F(1), F(-1, 2)], [F(-1, 2), F(1)]]
    pts = exact_gram_realization(G)
    assert [[dot(a, b) for b in pts] for a in pts] == G


def test_realizations():
    inst = family_nontight(2, 3)
    d = family_realization(inst)
    assert verify_design(d, 4).passed
    L1, L2 = decompose_layers(d).layers
    assert L1.radius == 1 and L2.radius == 3 and L2.weight == inst.params.w2
    assert verify_design(family_realization(family_n2(F(1, 3))), 4).passed
    assert family_realization(family_tight(1)) is None
    assert family_realization(family_nontight(3)) is None


def test_schlafli_other_base():
    Y = schlafli_design(3)
    assert list(Y.points[3]) == [0] * 5 + [1]


def test_instances_to_json():
    for inst in family_instances():
        js = inst.to_json()
        assert js["kind"] in ("nontight", "tight") and js["params"]["n"] == inst.params.n
