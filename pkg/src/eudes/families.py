"""Explicit two-sphere designs and parameter families, the 27-point tight
spherical 4-design on S^5, and the split/lift maps between it and a
two-sphere Euclidean 4-design in R^5."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .designs import Design, DesignError, decompose_layers, dot, scale_similar
from .scalar import Quad, Scalar, as_scalar, sign, sqrt_exact
from .two_sphere import ClosedFormTensor, TwoSphereParams, closed_form_tensor

__all__ = [
    "FamilyInstance", "SphericalDesign27", "UnsupportedError", "FamilyError",
    "family_nontight", "family_tight", "example_n2", "example_n2_params", "family_n2", "schlafli_design", "split_spherical",
    "lift_euclidean", "tight_lower_bound", "tabulated_nontight", "tabulated_tight",
    "exact_gram_realization", "schlafli_graph", "spectral_embedding", "family_realization",
]


class UnsupportedError(ValueError):
    pass


class FamilyError(ValueError):
    pass


F = Fraction
Key = tuple[str, str, str]   # (c, a, b) for p^c_{a,b}


# ------------------------------------------------------------ golden tables

def tabulated_nontight(k: int) -> dict:
    """Polynomial values of the constant-weight family listed for integer k >= 2."""
    q = k * k - k - 1
    ent: dict[Key, Fraction] = {
        ("alpha0", "gamma1", "gamma1"): F(k ** 3 * (2 * k - 3)),
        ("beta0", "gamma1", "gamma1"): F((2 * k + 1) * (k - 1) ** 3),
        ("alpha1", "gamma2", "gamma2"): F(q * k * k),
        ("alpha1", "gamma1", "gamma2"): F((k - 1) ** 2 * k * k),
        ("alpha1", "gamma1", "gamma1"): F(q * k * k),
        ("alpha2", "gamma2", "gamma2"): F(k ** 3 * (k - 2)),
        ("alpha2", "gamma1", "gamma2"): F((k - 1) * k ** 3),
        ("alpha2", "gamma1", "gamma1"): F(k ** 3 * (k - 2)),
        ("beta1", "gamma1", "gamma2"): F((k - 1) ** 3 * k),
        ("beta1", "gamma2", "gamma2"): F((k + 1) * (k - 1) ** 3),
        ("beta1", "gamma1", "gamma1"): F((k + 1) * (k - 1) ** 3),
        ("beta2", "gamma1", "gamma2"): F((k - 1) ** 2 * k * k),
        ("beta2", "gamma2", "gamma2"): F(q * (k - 1) ** 2),
        ("beta2", "gamma1", "gamma1"): F(q * (k - 1) ** 2),
        ("gamma1", "gamma2", "beta2"): F((k - 1) ** 2 * k * k),
        ("gamma1", "alpha2", "gamma2"): F(q * (k - 1) ** 2),
        ("gamma1", "gamma1", "beta1"): F((k + 1) * q * k),
        ("gamma1", "gamma2", "beta1"): F(q * k * k),
        ("gamma1", "alpha1", "gamma1"): F(q * k * k),
        ("gamma1", "alpha1", "gamma2"): F((k - 1) ** 2 * k * k),
        ("gamma1", "gamma1", "beta2"): F(q * (k - 1) ** 2),
        ("gamma1", "alpha2", "gamma1"): F((k - 2) * (k - 1) * q),
        ("gamma2", "gamma2", "beta2"): F(q * (k - 1) ** 2),
        ("gamma2", "alpha2", "gamma2"): F((k - 2) * (k - 1) * q),
        ("gamma2", "gamma1", "beta2"): F((k - 1) ** 2 * k * k),
        ("gamma2", "gamma1", "beta1"): F(q * k * k),
        ("gamma2", "alpha1", "gamma2"): F(q * k * k),
        ("gamma2", "alpha2", "gamma1"): F(q * (k - 1) ** 2),
        ("gamma2", "gamma2", "beta1"): F((k + 1) * q * k),
        ("gamma2", "alpha1", "gamma1"): F((k - 1) ** 2 * k * k),
    }
    B1 = [
        [[0, 1, 0], [k ** 3 * (2 * k - 3), (k + 1) * q * k, (k - 1) * k ** 3], [0, q * (k - 1) ** 2, k ** 3 * (k - 2)]],
        [[0, 0, 1], [0, q * (k - 1) ** 2, k ** 3 * (k - 2)],
         [(k - 1) * (2 * k - 3) * q, (k - 2) * (k - 1) * q, (k - 1) * (k - 2) * (k * k - 2 * k - 2)]],
    ]
    B2 = [
        [[0, 1, 0], [(2 * k + 1) * q * k, (k + 1) * (k * k - 3) * k, (k + 1) * q * k], [0, (k + 1) * (k - 1) ** 3, q * k * k]],
        [[0, 0, 1], [0, (k + 1) * (k - 1) ** 3, q * k * k],
         [(2 * k + 1) * (k - 1) ** 3, (k - 1) ** 3 * k, (k - 2) * (k - 1) * q]],
    ]
    P1 = [[1, k ** 3 * (2 * k - 3), (k - 1) * (2 * k - 3) * q], [1, k * k * (k - 2), -1 - k * k * (k - 2)], [1, -k, k - 1]]
    Q1 = [[1, (2 * k + 1) * (2 * k - 3), 2 * (2 * k - 3) * q * k], [1, F((k - 2) * (2 * k + 1), k), F(-2 * q, k)],
          [1, -2 * k - 1, 2 * k]]
    P2 = [[1, (2 * k + 1) * q * k, (k - 1) * (2 * k ** 3 - 3 * k * k + 1)], [1, k * q, -(k - 1) * (k * k - 1)], [1, -k, k - 1]]
    Q2 = [[1, (2 * k + 1) * (2 * k - 3), 2 * (k - 1) * (2 * k + 1) * q], [1, 2 * k - 3, -2 * k + 2],
          [1, F(-(2 * k - 3) * (k + 1), k - 1), F(2 * q, k - 1)]]
    y_q = [[1, 4 * k * k - 4 * k - 2, 2 * (2 * k + 1) * (2 * k - 3) * k * (k - 1)],
           [1, F(-(2 * k * k - 2 * k - 1), k - 1), F((2 * k - 3) * k, k - 1)],
           [1, F(2 * k * k - 2 * k - 1, k), F(-(2 * k + 1) * (k - 1), k)]]
    y_p = [[1, 2 * (2 * k + 1) * (k - 1) ** 3, 2 * (2 * k - 3) * k ** 3],
           [1, -(2 * k + 1) * (k - 1) ** 2, (2 * k - 3) * k * k],
           [1, k - 1, -k]]
    return {"entries": ent, "B": {1: B1, 2: B2}, "P": {1: P1, 2: P2}, "Q": {1: Q1, 2: Q2},
            "sphere_Q": y_q, "sphere_P": y_p}


def tabulated_tight(k: int) -> dict:
    """Polynomial values of the tight family listed for integer k >= 1.

    Row 0 of the second X_2 intersection matrix is (0, 0, 1), as the
    identity relation forces."""
    a = 9 * k * k - 9 * k + 1
    b = 18 * k * k - 18 * k + 5
    c = 6 * k * k - 6 * k + 1
    d = 36 * k * k - 36 * k + 7
    e = 2 * k - 1
    s3 = 36 * k ** 3 - 54 * k * k + 25 * k
    t3 = 18 * k ** 3 - 27 * k * k + 14 * k
    ent: dict[Key, Fraction] = {
        ("alpha0", "gamma1", "gamma1"): F(3 * b * e * e),
        ("beta0", "gamma1", "gamma1"): F(c * b),
        ("alpha1", "gamma2", "gamma2"): F(e * (54 * k ** 3 - 72 * k * k + 15 * k + 4)),
        ("alpha1", "gamma1", "gamma2"): F((3 * k - 2) * e * b),
        ("alpha1", "gamma1", "gamma1"): F(e * (3 * k - 1) * b),
        ("alpha2", "gamma2", "gamma2"): F((54 * k ** 3 - 90 * k * k + 33 * k - 1) * e),
        ("alpha2", "gamma1", "gamma2"): F(e * (3 * k - 1) * b),
        ("alpha2", "gamma1", "gamma1"): F((3 * k - 2) * e * b),
        ("beta1", "gamma1", "gamma2"): F(e * (3 * k - 2) * a),
        ("beta1", "gamma2", "gamma2"): F(a * k * (6 * k - 5)),
        ("beta1", "gamma1", "gamma1"): F((3 * k - 1) * (t3 - 3)),
        ("beta2", "gamma1", "gamma2"): F((3 * k - 1) * a * e),
        ("beta2", "gamma2", "gamma2"): F(a * (6 * k - 1) * (k - 1)),
        ("beta2", "gamma1", "gamma1"): F((3 * k - 2) * (t3 - 2)),
        ("gamma1", "gamma2", "beta2"): F(2 * (3 * k - 1) * a * e),
        ("gamma1", "alpha2", "gamma2"): F(2 * (3 * k - 1) * (k - 1) * a),
        ("gamma1", "gamma1", "beta1"): F(2 * (3 * k - 1) * (t3 - 3)),
        ("gamma1", "gamma2", "beta1"): F(2 * e * (3 * k - 2) * a),
        ("gamma1", "alpha1", "gamma1"): F(2 * k * (3 * k - 1) * a),
        ("gamma1", "alpha1", "gamma2"): F(2 * k * (3 * k - 2) * a),
        ("gamma1", "gamma1", "beta2"): F(2 * (3 * k - 2) * (t3 - 2)),
        ("gamma1", "alpha2", "gamma1"): F(2 * (k - 1) * a * (3 * k - 2)),
        ("gamma2", "gamma2", "beta2"): F((6 * k - 1) * (k - 1) * b),
        ("gamma2", "alpha2", "gamma2"): F((k - 1) * (54 * k ** 3 - 90 * k * k + 33 * k - 1)),
        ("gamma2", "gamma1", "beta2"): F(e * (3 * k - 1) * b),
        ("gamma2", "gamma1", "beta1"): F((3 * k - 2) * e * b),
        ("gamma2", "alpha1", "gamma2"): F(k * (54 * k ** 3 - 72 * k * k + 15 * k + 4)),
        ("gamma2", "alpha2", "gamma1"): F(b * (3 * k - 1) * (k - 1)),
        ("gamma2", "gamma2", "beta1"): F((6 * k - 5) * k * b),
        ("gamma2", "alpha1", "gamma1"): F((3 * k - 2) * k * b),
    }
    B1 = [
        [[0, 1, 0], [6 * e * a * k, 54 * k ** 4 - 45 * k ** 3 - 12 * k * k + 7 * k + 1,
                     (18 * k * k - 9 * k - 1) * k * (3 * k - 2)],
         [0, (3 * k - 2) * (k - 1) * (18 * k * k - 9 * k - 1), k * (3 * k - 1) * (18 * k * k - 27 * k + 8)]],
        [[0, 0, 1], [0, (3 * k - 2) * (k - 1) * (18 * k * k - 9 * k - 1), k * (3 * k - 1) * (18 * k * k - 27 * k + 8)],
         [6 * (k - 1) * e * a, (18 * k * k - 27 * k + 8) * (k - 1) * (3 * k - 1),
          54 * k ** 4 - 171 * k ** 3 + 177 * k * k - 64 * k + 5]],
    ]
    B2 = [
        [[0, 1, 0], [2 * c * b, a * (12 * k * k - 10 * k + 3), (3 * k - 2) * (s3 - 3)],
         [0, (3 * k - 2) * (s3 - 3), (s3 - 4) * (3 * k - 1)]],
        [[0, 0, 1], [0, (3 * k - 2) * (s3 - 3), (s3 - 4) * (3 * k - 1)],
         [2 * c * b, (s3 - 4) * (3 * k - 1), a * (12 * k * k - 14 * k + 5)]],
    ]
    P1 = [[1, 6 * e * a * k, 6 * (k - 1) * e * a], [1, -3 * k + 1, 3 * k - 2],
          [1, k * (18 * k * k - 27 * k + 8), -(k - 1) * (18 * k * k - 9 * k - 1)]]
    Q1 = [[1, 6 * d * (k - 1) * k, 36 * k * k - 36 * k + 6],
          [1, F(-(3 * k - 1) * (k - 1) * d, e * a), F((18 * k * k - 27 * k + 8) * c, e * a)],
          [1, F(k * (3 * k - 2) * d, e * a), F(-(18 * k * k - 9 * k - 1) * c, e * a)]]
    P2 = [[1, 2 * c * b, 2 * c * b], [1, -3 * k + 1, 3 * k - 2], [1, s3 - 4, 3 - s3]]
    Q2 = [[1, 2 * c * d, 36 * k * k - 36 * k + 6],
          [1, F(-(3 * k - 1) * d, b), F(3 * (s3 - 4), b)],
          [1, F((3 * k - 2) * d, b), F(-3 * (s3 - 3), b)]]
    return {"entries": ent, "B": {1: B1, 2: B2}, "P": {1: P1, 2: P2}, "Q": {1: Q1, 2: Q2}}


# ------------------------------------------------------------ families

@dataclass
class FamilyInstance:
    kind: str
    k: int | None
    params: TwoSphereParams
    expected: dict
    realization: Design | None = None
    r2_parameter: Scalar | None = None

    @property
    def expected_entries(self) -> dict[Key, Fraction]:
        return self.expected.get("entries", {})

    def tensor(self) -> ClosedFormTensor:
        return closed_form_tensor(self.params)

    def golden_mismatches(self, t: ClosedFormTensor | None = None) -> list[str]:
        t = t or self.tensor()
        bad = []
        for (c, a, b), v in self.expected_entries.items():
            if t.simplex_fiber and "alpha2" in (c, a, b):
                continue  # formal polynomial value of an empty relation
            got = t.named(c, a, b)
            if got != v:
                bad.append(f"p^{c}_{{{a},{b}}}: closed form {got} vs table {v}")
        return bad

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "k": self.k, "params": self.params.to_json(),
            "points": None if self.realization is None else len(self.realization),
        }


def _nontight_r2_default(k: int) -> Scalar:
    # (k-1)/k * sqrt((2k+1)/(2k-3))
    return F(k - 1, k) * sqrt_exact(F(2 * k + 1, 2 * k - 3))


def family_nontight(k: int, r2=None) -> FamilyInstance:
    if k < 2:
        raise FamilyError("the non-tight family needs k >= 2")
    n = (2 * k + 1) * (2 * k - 3)
    N1 = 2 * (2 * k + 1) * (k - 1) ** 3
    N2 = 2 * k ** 3 * (2 * k - 3)
    g = sqrt_exact(F(1, n)) if n > 0 else None
    r = _nontight_r2_default(k) if r2 is None else as_scalar(r2)
    if sign(r) <= 0 or r == 1:
        raise FamilyError("r2 must be positive and different from 1")
    w2 = F((2 * k + 1) ** 2 * (k - 1) ** 4, (2 * k - 3) ** 2 * k ** 4) / r ** 4
    p = TwoSphereParams(n, N1, N2, F(k - 2, k * (2 * k - 3)), F(-1, 2 * k - 3),
                        F(1, 2 * k + 1), F(-(k + 1), (k - 1) * (2 * k + 1)), g, -g, r, w2)
    return FamilyInstance("nontight", k, p, tabulated_nontight(k), None, r)


def family_tight(k: int) -> FamilyInstance:
    if k < 1:
        raise FamilyError("the tight family needs k >= 1")
    n = (6 * k - 3) ** 2 - 3
    a = 9 * k * k - 9 * k + 1
    b = 18 * k * k - 18 * k + 5
    c = 6 * k * k - 6 * k + 1
    N1 = c * (36 * k * k - 36 * k + 7)
    N2 = 3 * (36 * k * k - 36 * k + 7) * (2 * k - 1) ** 2
    den_a = 6 * a * (2 * k - 1)
    den_b = 2 * c * b
    g1 = sqrt_exact(F(a, 3 * c * b))
    g2 = Quad(-1) / (n * g1)
    r2 = sqrt_exact(F(3 * b * c, a))
    p = TwoSphereParams(
        n, N1, N2,
        F(18 * k * k - 27 * k + 8, den_a), F(-(18 * k * k - 9 * k - 1), den_a),
        F(36 * k ** 3 - 54 * k * k + 25 * k - 4, den_b), F(-(36 * k ** 3 - 54 * k * k + 25 * k - 3), den_b),
        g1, g2, r2, F(1, 81 * (2 * k - 1) ** 4))
    if N1 + N2 != (n + 1) * (n + 2) // 2:
        raise AssertionError("tight family lost tightness")
    return FamilyInstance("tight", k, p, tabulated_tight(k))


def example_n2(r2=2) -> Design:
    """Eight points in R^2: a unit square at 45 degrees and an axis square of radius r2."""
    r = as_scalar(r2)
    if sign(r) <= 0:
        raise FamilyError("r2 must be positive")
    if r == 1:
        raise FamilyError("r2 = 1 makes the two layers collide")
    s = sqrt_exact(F(1, 2))
    z = Quad(0)
    pts = [[s, s], [-s, -s], [s, -s], [-s, s], [r, z], [-r, z], [z, r], [z, -r]]
    w = Quad(1) / r ** 4
    return Design(2, pts, [Quad(1)] * 4 + [w] * 4)


def example_n2_params(r2=2) -> TwoSphereParams:
    r = as_scalar(r2)
    g = sqrt_exact(F(1, 2))
    return TwoSphereParams(2, 4, 4, 0, -1, 0, -1, g, -g, r, Quad(1) / r ** 4)


def family_n2(r2=2) -> FamilyInstance:
    d = example_n2(r2)
    return FamilyInstance("n2", None, example_n2_params(r2), {}, d, as_scalar(r2))


def tight_lower_bound(n: int, p: int = 2, e: int = 2, origin: bool = False) -> int:
    """dim P_e(S) for two concentric spheres without the origin and e = 2."""
    if (p, e, origin) != (2, 2, False):
        raise UnsupportedError(f"tightness bound not available for p={p}, e={e}, origin={origin}")
    return comb(n + 2, 2)


# ------------------------------------------------------------ 27 points

def schlafli_graph() -> tuple[list[str], list[list[int]]]:
    """Vertices a_i, b_i, c_ij (1 <= i < j <= 6) and the degree-10 adjacency."""
    names = [f"a{i}" for i in range(1, 7)] + [f"b{i}" for i in range(1, 7)]
    pairs = list(itertools.combinations(range(1, 7), 2))
    names += [f"c{i}{j}" for i, j in pairs]

    def kind(v):
        if v < 6:
            return ("a", v + 1)
        if v < 12:
            return ("b", v - 5)
        return ("c", pairs[v - 12])

    N = len(names)
    A = [[0] * N for _ in range(N)]
    for x, y in itertools.combinations(range(N), 2):
        (kx, ix), (ky, iy) = kind(x), kind(y)
        adj = False
        if {kx, ky} == {"a", "b"}:
            adj = ix != iy
        elif kx == "c" and ky == "c":
            adj = not (set(ix) & set(iy))
        elif "c" in (kx, ky) and kx != ky:
            single = ix if kx != "c" else iy
            pair = iy if kx != "c" else ix
            adj = single in pair
        if adj:
            A[x][y] = A[y][x] = 1
    return names, A


def spectral_embedding(A: list[list[int]], dim: int, prec: int = 160):
    """Rows of the projection onto the eigenspace of the `dim` smallest adjacency
    eigenvalues, normalized to unit length (approximate)."""
    ctx = mpmath.MPContext()
    ctx.prec = prec
    M = ctx.matrix(A)
    evals, evecs = ctx.eigsy(M)
    order = sorted(range(len(A)), key=lambda i: evals[i])[:dim]
    rows = []
    for i in range(len(A)):
        v = [evecs[i, j] for j in order]
        nrm = ctx.sqrt(ctx.fsum(x * x for x in v))
        rows.append([x / nrm for x in v])
    return ctx, rows


def _snap(ctx, x, targets, tol) -> Fraction:
    for t in targets:
        if abs(x - ctx.mpf(t.numerator) / t.denominator) < tol:
            return t
    raise DesignError(f"cosine {ctx.nstr(x, 20)} does not snap to {targets}")


def exact_gram_realization(G: list[list[Fraction]], first: int = 0) -> list[list[Scalar]]:
    """Exact coordinates with Gram matrix G (rational, positive semidefinite) by
    a pivoted LDL^T factorization.  Axis j carries the radicand of its pivot, so
    every coordinate is a pure radical.  The first pivot is point ``first``; its
    axis is placed last, so that point sits at (0, ..., 0, |y|)."""
    m = len(G)
    R = [row[:] for row in G]  # Schur complement, updated in place
    Ls: list[list[Fraction]] = []
    Ds: list[Fraction] = []
    used = set()
    piv = first
    while True:
        if piv is None:
            cand = [i for i in range(m) if i not in used and R[i][i] != 0]
            if not cand:
                break
            piv = max(cand, key=lambda i: R[i][i])
        d = R[piv][piv]
        if d < 0:
            raise DesignError("Gram matrix is not positive semidefinite")
        if d == 0:
            break
        col = [R[i][piv] / d for i in range(m)]
        Ls.append(col)
        Ds.append(d)
        used.add(piv)
        for i in range(m):
            if col[i]:
                ci = col[i] * d
                for j in range(m):
                    if col[j]:
                        R[i][j] -= ci * col[j]
        piv = None
    for i in range(m):
        if R[i][i] != 0 and any(R[i][j] != 0 for j in range(m)):
            if any(R[i][j] for j in range(m)):
                raise DesignError("Gram matrix is not positive semidefinite")
    roots = [sqrt_exact(d) for d in Ds]
    order = list(range(1, len(Ds))) + [0]
    return [[Ls[j][i] * roots[j] for j in order] for i in range(m)]


@dataclass
class SphericalDesign27:
    names: list[str]
    adjacency: list[list[int]]
    points: list[list[Scalar]]
    gram: list[list[Fraction]]
    approx_points: list | None = None

    @property
    def design(self) -> Design:
        return Design(len(self.points[0]), self.points, [1] * len(self.points))

    def degrees(self) -> list[int]:
        return [sum(r) for r in self.adjacency]


def schlafli_design(base: int = 0) -> SphericalDesign27:
    """The 27 unit vectors with cosines -1/2 (adjacent) and 1/4 (non-adjacent).

    The approximate spectral embedding fixes the Gram matrix after snapping;
    exact coordinates then come from the factorization of that Gram matrix,
    with vertex ``base`` on the last axis."""
    names, A = schlafli_graph()
    N = len(A)
    ctx, rows = spectral_embedding(A, 6)
    tol = ctx.mpf(10) ** -30
    targets = (F(1), F(-1, 2), F(1, 4))
    G = [[F(1)] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            c = ctx.fsum(x * y for x, y in zip(rows[i], rows[j]))
            G[i][j] = _snap(ctx, c, targets, tol)
    for i in range(N):
        for j in range(N):
            want = F(1) if i == j else (F(-1, 2) if A[i][j] else F(1, 4))
            if G[i][j] != want:
                raise DesignError("snapped Gram matrix disagrees with the graph model")
    pts = exact_gram_realization(G, base)
    if len(pts[0]) != 6:
        raise DesignError(f"Gram rank {len(pts[0])} instead of 6")
    for i in range(N):
        for j in range(N):
            if dot(pts[i], pts[j]) != G[i][j]:
                raise DesignError("exact realization does not reproduce the Gram matrix")
    return SphericalDesign27(names, A, pts, G, rows)


# ------------------------------------------------------------ split / lift

def _split_cosines(k: int) -> tuple[Fraction, Fraction]:
    return F(-1, 2 * (k - 1)), F(1, 2 * k)


def split_spherical(Y, y0: int | list, k: int) -> Design:
    """Two-sphere Euclidean 4-design from a tight spherical 4-design: the points
    at cosine -1/(2(k-1)) and 1/(2k) to y0, projected onto y0's orthogonal
    complement."""
    if k < 2:
        raise FamilyError("split needs k >= 2")
    pts = Y.points if isinstance(Y, (SphericalDesign27, Design)) else Y
    pts = [list(map(as_scalar, p)) for p in pts]
    dim = len(pts[0])
    if dim + 3 != (2 * k - 1) ** 2:
        raise FamilyError(f"dimension {dim} does not match k={k}")
    if isinstance(y0, int):
        base = y0
    else:
        y = [as_scalar(c) for c in y0]
        try:
            base = next(i for i, p in enumerate(pts) if p == y)
        except StopIteration:
            raise FamilyError("y0 is not a point of Y") from None
    c1, c2 = _split_cosines(k)
    y0v = pts[base]
    cos = [dot(p, y0v) for p in pts]
    keep1 = [i for i, c in enumerate(cos) if c == c1]
    keep2 = [i for i, c in enumerate(cos) if c == c2]
    if len(keep1) + len(keep2) + 1 != len(pts):
        raise FamilyError("cosine spectrum relative to y0 is not {-1/(2(k-1)), 1/(2k)}")
    pole = all(not c for c in y0v[:-1]) and y0v[-1] == 1
    if pole:
        X = [pts[i][:-1] for i in keep1 + keep2]
    else:
        idx = keep1 + keep2
        G = [[_rat(dot(pts[i], pts[j])) - _rat(cos[i]) * _rat(cos[j]) for j in idx] for i in idx]
        X = exact_gram_realization(G, 0)
        if len(X[0]) != dim - 1:
            raise FamilyError("projected set has unexpected rank")
    return Design(len(X[0]), X, [1] * len(X))


def _rat(x: Scalar) -> Fraction:
    if isinstance(x, Quad) and x.is_rational:
        return x.a
    raise FamilyError("split/lift require rational inner products")


def lift_euclidean(d: Design, k: int) -> Design:
    """Unit vectors in dimension n+1 from a two-sphere design with the
    non-tight family parameters."""
    if k < 2:
        raise FamilyError("lift needs k >= 2")
    fam = family_nontight(k)
    dec = decompose_layers(d)
    if dec.p != 2 or dec.origin_flag:
        raise FamilyError("lift needs two nonzero layers")
    L1, L2 = dec.layers
    if d.n != fam.params.n or len(L1.members) != fam.params.N1 or len(L2.members) != fam.params.N2:
        raise FamilyError("design sizes do not match the family parameters")
    r1 = L1.radius
    X = scale_similar(d, r1, 1) if r1 != 1 else d
    dec = decompose_layers(X)
    L1, L2 = dec.layers
    r2 = L2.radius
    # normalized radius of X_2 is forced by the inner-product structure
    if r2 != fam.params.r2:
        raise FamilyError(f"radius ratio {r2} differs from the family value {fam.params.r2}")
    c1, c2 = _split_cosines(k)
    a1 = sqrt_exact(F((2 * k - 1) * (2 * k - 3), 4 * (k - 1) ** 2))
    a2 = sqrt_exact(F(4 * k * k - 1, 4 * k * k)) / r2
    out = [[Quad(0)] * d.n + [Quad(1)]]
    for i in L1.members:
        out.append([a1 * c for c in X.points[i]] + [Quad(c1)])
    for i in L2.members:
        out.append([a2 * c for c in X.points[i]] + [Quad(c2)])
    return Design(d.n + 1, out, [1] * len(out))


def family_realization(inst: FamilyInstance) -> Design | None:
    """Explicit points for an instance when the artifact can build them: the
    n = 2 example, and the non-tight k = 2 member via the 27-point split with
    the outer layer moved to the requested radius.  None otherwise."""
    if inst.realization is not None:
        return inst.realization
    p = inst.params
    if inst.kind == "n2":
        return example_n2(p.r2)
    if inst.kind != "nontight" or inst.k != 2:
        return None
    X = split_spherical(schlafli_design(), 0, 2)
    dec = decompose_layers(X)
    L1, L2 = dec.layers
    X = scale_similar(X, L1.radius, 1)
    s = p.r2 / _nontight_r2_default(2)
    pts = [X.points[i] for i in L1.members] + [[s * c for c in X.points[i]] for i in L2.members]
    w = [Quad(1)] * len(L1.members) + [p.w2] * len(L2.members)
    return Design(X.n, pts, w)
