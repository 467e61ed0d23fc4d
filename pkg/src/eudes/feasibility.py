"""Parameter feasibility for Euclidean 4-designs on two concentric spheres:
the N_1 = n+1 branch, the bound functions used to rule out non-tight cases,
the exhaustive tight-design search, the alpha_1 = 0 classification and the
bounded diophantine scans."""

from __future__ import annotations

import math
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import mpmath

from . import _kernels
from .scalar import Quad, Scalar, as_scalar, format_scalar, rational_sqrt, scalar_cmp, sign, sqrt_exact
from .two_sphere import (
    ParameterError, TwoSphereParams, closed_form_tensor, integrality_report, nine_equation_residuals,
)

__all__ = [
    "FeasibilityRecord", "SearchResult", "NPlusOneCase", "Alpha1ZeroRecord", "MonotonicityReport",
    "F3", "F2", "G", "G_expanded", "P1", "P2", "K_bounds", "F_eps", "D_i", "D_i_quadratic", "D_alpha", "D_beta",
    "case_n_plus_one", "n_plus_one_scan", "n_plus_one_verdict", "distance_ratio_sq", "search_tight", "evaluate_candidate",
    "alpha1_zero_classify", "diophantine_scan", "monotonicity_spotcheck", "thread_count",
    "P0_identity_sides", "VERDICTS", "m_values", "n1_range", "m_interval_n_plus_one",
]

F = Fraction

VERDICTS = (
    "range_fail", "m_not_integral", "m_range_fail", "m_ratio_fail", "k_bound_fail",
    "discriminant_fail", "w_inconsistent", "cosine_fail", "consistency_fail", "radius_fail",
    "integrality_fail", "equation_fail", "screen_fail", "feasible",
)


def thread_count() -> int:
    cap = os.environ.get("EUDES_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            pass
    return n


# ------------------------------------------------------------ bound functions

def P1(n, x, y) -> Fraction:
    n, x, y = F(n), F(x), F(y)
    return n * ((2 * x - n - 1) * y * y + (n + 1) * (n + 1 - 2 * x) * y + (x - 1) * (n + 1)) ** 2


def P2(n, x, y) -> Fraction:
    n, x, y = F(n), F(x), F(y)
    return ((4 * x * x - 4 * (n + 1) * x + n * (n + 1) ** 2) * (y - 2 * (n + 1)) * y ** 3
            + (4 * (n * n + 4 * n + 1) * x * x - (2 * n ** 3 + 20 * n * n + 22 * n + 4) * x
               + n * (n * n + 2 * n + 3) * (n + 1) ** 2) * y * y
            - 2 * n * (n + 1) * (4 * x * x + (n + 1) * (n - 5) * x + (n + 1) ** 2) * y
            + n * (n + 1) ** 2 * (x - 1) ** 2)


def F3(n, x, y) -> Fraction:
    """Squared distance-ratio of X_2 in the N_1 = n+1 branch, x = N_2, y = m."""
    den = P2(n, x, y)
    if not den:
        raise ZeroDivisionError("P2 vanishes")
    return P1(n, x, y) / den


def F2(n, x) -> Fraction:
    """Squared distance-ratio when gamma_1 = 1/sqrt(n), x = N_i."""
    n, x = F(n), F(x)
    den = 9 * n + 6 * n * n + n ** 3 - 4 * x - 12 * n * x + 4 * x * x
    if not den:
        raise ZeroDivisionError("F(n, x) denominator vanishes")
    return (-2 * x + n + 3) ** 2 * n / den


def G(k: int, x) -> Fraction:
    return F2((2 * k - 1) ** 2 - 4, x)


def G_expanded(k: int, x) -> Fraction:
    k, x = F(k), F(x)
    den = (16 * k ** 6 - 48 * k ** 5 + 36 * k ** 4 + 8 * k ** 3 - 12 * k * k
           - 12 * x * k * k + 12 * x * k + 8 * x + x * x)
    return (x - 2 * k * k + 2 * k) ** 2 * (2 * k + 1) * (2 * k - 3) / den


def D_i(n: int, Ni: int, g2) -> Fraction:
    """Discriminant of the quadratic for W (i = 1) or 1/W (i = 2) in the tight case."""
    g2 = F(g2)
    s = 1 - n * g2
    return (16 * Ni * Ni * g2 * s * s - 8 * (n + 2) * (n + 1) * Ni * g2 * s * s + (n + 2) ** 2
            - 4 * n * n * g2 + 2 * n * n * (n * n - 4 * n - 2) * g2 ** 2 - 4 * n ** 4 * g2 ** 3
            + n ** 4 * (n + 2) ** 2 * g2 ** 4)


def D_i_quadratic(n: int, Ni: int, g2) -> Fraction:
    """The same discriminant read off the quadratic
    2(N-1)(1-n g^2) g W^2 - B W + (n^2+3n-2N)(1-n g^2) g = 0 (scaled by g^2)."""
    g2 = F(g2)
    s = 1 - n * g2
    B = (n + 2) * (n * n * g2 * g2 + 1) - 6 * n * g2
    return B * B - 8 * (Ni - 1) * (n * n + 3 * n - 2 * Ni) * s * s * g2


def D_alpha(n: int, N1: int, g, W) -> Scalar:
    g, W = as_scalar(g), as_scalar(W)
    s = 1 - n * g * g
    return ((N1 - 1) ** 2 * s * s * W * W - 2 * n * s * (n + 3 + n * N1 - 3 * N1) * g * W
            + n * (4 * N1 * N1 - 4 * (3 * n + 1) * N1 + n * (n + 3) ** 2) * g * g)


def D_beta(n: int, N2: int, g, W) -> Scalar:
    """Mirror of D_alpha in W^-1; the middle term carries the factor n."""
    g, W = as_scalar(g), as_scalar(W)
    s = 1 - n * g * g
    Wi = Quad(1) / W
    return ((N2 - 1) ** 2 * s * s * Wi * Wi - 2 * n * s * (n + 3 + n * N2 - 3 * N2) * g * Wi
            + n * (4 * N2 * N2 - 4 * (3 * n + 1) * N2 + n * (n + 3) ** 2) * g * g)


def P0_identity_sides(n: int, N1: int, g, W) -> tuple[Scalar, Scalar]:
    """(P_0^2 - (N_1-1)^2 P_1^2 D_alpha, 4 n^2 N_1^2 (N_1-n-1)^6 gamma^4).

    The two sides agree identically in (gamma, W); no W^4 factor appears."""
    g, W = as_scalar(g), as_scalar(W)
    s = 1 - n * g * g
    P0 = ((N1 - 1) ** 4 * s * s * W * W
          - 2 * n * (N1 - 1) ** 2 * (n + 3 + n * N1 - 3 * N1) * s * g * W
          + n * (2 * N1 ** 4 - 6 * (n + 1) * N1 ** 3 + (n ** 3 + 6 + 21 * n) * N1 ** 2
                 - (6 * n * n + 24 * n + 2) * N1 + n ** 3 + 6 * n * n + 9 * n) * g * g)
    P1_ = (N1 - 1) ** 2 * (n * g * g - 1) * W + n * (n * N1 - 3 * N1 + n + 3) * g
    lhs = P0 * P0 - (N1 - 1) ** 2 * P1_ * P1_ * D_alpha(n, N1, g, W)
    rhs = 4 * n * n * N1 * N1 * (N1 - n - 1) ** 6 * g ** 4
    return lhs, rhs


def K_bounds(n: int, x: int):
    """Admissible m-intervals from D_i >= 0 as ((lo1, hi1), (lo2, hi2)) in mpmath,
    or None when the inner radicand is negative (no restriction derived)."""
    K1 = 8 * x * (n * n + 3 * n + 2 - 2 * x) + n ** 3 + 2 * n * n + n
    rad = (x - 1) * (3 * n + n * n - 2 * x) * (x - 1 - n) * (n + n * n - 2 * x)
    if rad < 0 or K1 <= 0:
        return None
    base = 4 * x * (n * n + 3 * n + 2 - 2 * x) - n * (n + 1) * (n + 7)
    r = mpmath.sqrt(rad)
    K2, K3 = base - 4 * r, base + 4 * r
    half = mpmath.mpf(x) / 2
    hi1 = half + half * mpmath.sqrt(K2 / K1) if K2 >= 0 else half
    if K3 < 0:
        lo2 = half
    else:
        lo2 = half + half * mpmath.sqrt(K3 / K1) if K3 <= K1 else mpmath.mpf(x)
    return (half, hi1), (lo2, mpmath.mpf(x))


def _in_k_bounds(n: int, N: int, m: int, slack=mpmath.mpf(10) ** -20) -> bool:
    b = K_bounds(n, N)
    if b is None:
        return True
    (lo1, hi1), (lo2, hi2) = b
    return (lo1 < m <= hi1 + slack) or (lo2 - slack <= m < hi2)


def F_eps(n: int, x: int, y: int, eps: int) -> Scalar:
    """The squared distance-ratio of a fiber of size x with m = y, in closed form."""
    n, x, y = F(n), F(x), F(y)
    F1 = (8 * n * (n + 1) ** 2 * (n + 1 + 4 * x) * y ** 4
          - 16 * x * n * (n + 1) ** 2 * (n + 1 + 4 * x) * y ** 3
          + 4 * x * x * (8 * n ** 3 + 24 * x * n + 4 * x * x - 8 * n - 4 * x * x * n - 4 * x + 3 * n ** 4
                         + 30 * n * n * x - 3 * n * n + 10 * n ** 3 * x) * y * y
          - 4 * x ** 3 * (2 * n ** 3 - 10 * n - 4 * x * x * n + 16 * x * n - 9 * n * n + 4 * x * x
                          + 2 * n ** 3 * x - 4 * x + n ** 4 + 14 * n * n * x) * y
          + x ** 3 * (x - 1) * (4 * x * x + 4 * x * n + 6 * n ** 3 + n ** 4 + 9 * n * n))
    F2_ = (n + 1) ** 2 * y * y - x * (n + 1) ** 2 * y + x * x * (x - 1)
    F3_ = (16 * n * (n + 1) ** 3 * y ** 4 - 32 * x * n * (n + 1) ** 3 * y ** 3
           + 8 * x * x * n * (-2 + 6 * x + 5 * n - 2 * x * n + 10 * n * n + 3 * n ** 3) * y * y
           - 8 * x ** 3 * n * (6 * x - 4 - 2 * x * n - n + 4 * n * n + n ** 3) * y
           + x ** 3 * (x - 1) * (4 * x * x - 4 * x * n - 4 * n * n * x + 6 * n ** 3 + n ** 4 + 9 * n * n))
    F4_ = ((4 * n + 8 * n * n + 4 * n ** 3 + 64 * x - 64 * x * x + 32 * n * n * x + 96 * x * n) * y ** 4
           - 8 * x * (n + 2 * n * n + n ** 3 + 16 * x - 16 * x * x + 8 * n * n * x + 24 * x * n) * y ** 3
           + 4 * x * x * (20 * x - 20 * x * x + 5 * n + 30 * x * n + 7 * n * n + 10 * n * n * x + 2 * n ** 3) * y * y
           - 4 * x ** 3 * (-4 * x * x + 4 * x + 6 * x * n + 4 * n + 2 * n * n * x + 5 * n * n + n ** 3) * y
           + n * x ** 4 * (n + 2) ** 2)
    root = sqrt_exact(n * F4_)
    return (F1 - 4 * eps * F2_ * root) / F3_


def distance_ratio_sq(c1: Scalar, c2: Scalar) -> Scalar:
    """((2 - c1 - c2)/(c1 - c2))^2, the squared ratio of the two squared distances."""
    return ((2 - c1 - c2) / (c1 - c2)) ** 2


# ------------------------------------------------------------ N_1 = n + 1

@dataclass
class NPlusOneCase:
    n: int
    N2: int
    m: int
    gamma1: Scalar
    r2: Scalar
    w2: Scalar
    beta1: Scalar
    beta2: Scalar
    ratio: Fraction          # F(n, N2, m)
    ratio_from_betas: Scalar
    residuals: list[Scalar]  # the three defining equalities, all zero

    @property
    def integral(self) -> bool:
        return self.ratio.denominator == 1

    def to_json(self) -> dict:
        return {"n": self.n, "N2": self.N2, "m": self.m, "ratio": format_scalar(Quad(self.ratio)),
                "integral": self.integral, "r2": format_scalar(self.r2), "w2": format_scalar(self.w2)}


def m_interval_n_plus_one(n: int) -> tuple[Fraction, float]:
    return F(n + 1, 2), (n + 1) / 2 + math.sqrt(3 * (n * n - 1)) / 6


def _m_in_range(n: int, m) -> bool:
    m = F(m)
    q = -n * n - 3 * n + 6 * n * m - 6 * m * m - 2 + 6 * m
    return 2 * m - n - 1 > 0 and q > 0


def case_n_plus_one(n: int, N2: int, m: int) -> NPlusOneCase:
    if n < 3:
        raise ParameterError("the N_1 = n+1 analysis needs n >= 3")
    if not _m_in_range(n, m):
        raise ParameterError(f"m = {m} outside ((n+1)/2, (n+1)/2 + sqrt(3(n^2-1))/6)")
    g2 = F(n + 1 - m, m * n)
    g = sqrt_exact(g2)
    q = -n * n - 3 * n + 6 * n * m - 6 * m * m - 2 + 6 * m
    r2 = (n - 2) * (2 * m - n - 1) * sqrt_exact(F(m * (n + 1 - m), n)) / q
    w2 = Quad(F(q ** 3 * (n + 1) * n * (n - 1), (n - 2) ** 3 * N2 * m * (n + 1 - m) * (n + 1 - 2 * m) ** 4))
    head = n * n * (N2 - 1) * g2 ** 2 - n * (2 * N2 + n * n - 2 * n - 1) * g2 + N2 - 1
    c1 = 2 * N2 * N2 + (n * n - 4 * n - 1) * N2 + n * n + 2 * n - 1
    disc = (n ** 4 * (N2 - 1) ** 2 * g2 ** 4 - 2 * n ** 3 * c1 * g2 ** 3
            + n * (2 * (2 * n * n - n + 2) * N2 * N2 - (8 * n ** 3 - 4 * n * n + 4 * n + 4) * N2
                   + n ** 5 + 4 * n ** 4 + 2 * n ** 3 - 4 * n * n + 3 * n) * g2 ** 2
            - 2 * n * c1 * g2 + (N2 - 1) ** 2)
    den = 2 * g2 * n * (n - 1) * (N2 - n - 1)
    root = sqrt_exact(disc)
    b1 = (head + root) / den
    b2 = (head - root) / den
    res = [
        N2 * (n * g2 - 1) * r2 ** 3 * w2 + (n * n - 1) * g,
        N2 * (n * n * (n + 2) * g2 ** 2 - 2 * n * (2 * n + 1) * g2 + n + 2) * r2 ** 4 * w2
        + (n - 1) * (n - 2) * (n + 1) ** 2 * g2,
        N2 * (r2 ** 3 * w2 * g) * (n * (N2 - n - 1) * b1 * b1 + n * (n - 1) * b1 + 2 * n - N2)
        + (n + 1) * (g2 * n - 1) * (1 + N2 * b1 - b1),
        b2 + (N2 + n * b1 - n) / (n * (1 + N2 * b1 - b1)),
    ]
    return NPlusOneCase(n, N2, m, g, r2, w2, b1, b2, F3(n, N2, m), distance_ratio_sq(b1, b2), res)


def n_plus_one_scan(n: int) -> list[NPlusOneCase]:
    """Every integer (N_2, m) in the non-tight box; the branch is excluded
    when none of them gives an integral ratio."""
    out = []
    lo, hi = m_interval_n_plus_one(n)
    for N2 in range(n * (n + 1) // 2 + 1, n * (n + 3) // 2 + 1):
        for m in range(math.floor(lo) + 1, math.ceil(hi)):
            if _m_in_range(n, m):
                out.append(case_n_plus_one(n, N2, m))
    return out


def n_plus_one_verdict(n: int, N2: int) -> str:
    """'tight' for N_2 = n(n+1)/2, 'excluded' when no integer m in range gives an
    integral ratio, 'open' otherwise; N_2 outside the two-distance range is
    'out_of_range'."""
    if N2 == n * (n + 1) // 2:
        return "tight"
    if not (n * (n + 1) // 2 < N2 <= n * (n + 3) // 2):
        return "out_of_range"
    lo, hi = m_interval_n_plus_one(n)
    for m in range(math.floor(lo) + 1, math.ceil(hi)):
        if _m_in_range(n, m) and F3(n, N2, m).denominator == 1:
            return "open"
    return "excluded"


# ------------------------------------------------------------ tight search

@dataclass
class FeasibilityRecord:
    n: int
    N1: int
    N2: int
    epsilon: int
    m1: int | None = None
    m2: int | None = None
    gamma1_sq: Scalar | None = None
    W: Scalar | None = None
    D1: Scalar | None = None
    D2: Scalar | None = None
    D_alpha: Scalar | None = None
    D_beta: Scalar | None = None
    alpha1: Scalar | None = None
    alpha2: Scalar | None = None
    beta1: Scalar | None = None
    beta2: Scalar | None = None
    r2_sq: Scalar | None = None
    w2: Scalar | None = None
    verdict: str = "range_fail"
    detail: str = ""
    params: TwoSphereParams | None = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.verdict == "feasible"

    @property
    def sort_key(self):
        return (self.n, self.N1, self.epsilon)

    def to_json(self) -> dict:
        out = {"n": self.n, "N1": self.N1, "N2": self.N2, "m1": self.m1, "m2": self.m2,
               "epsilon": self.epsilon}
        for f in ("W", "gamma1_sq", "alpha1", "alpha2", "beta1", "beta2", "r2_sq", "w2",
                  "D_alpha", "D_beta", "D1", "D2"):
            v = getattr(self, f)
            out[f] = None if v is None else format_scalar(v)
        out["verdict"] = self.verdict
        out["detail"] = self.detail
        return out


def _m_from_formula(n: int, Na: int, Nb: int) -> int | None:
    """m_a = N_a/2 + (1/2) sqrt((-(n-3) N_a^2 N_b + (N_b - N_a) sqrt(2n(n+3) N_a^3 N_b)) / ((n+1)^2 N_b)),
    (a, b) = (1, 2) or (2, 1) with the sign of N_b - N_a taken from the N_1/N_2 order."""
    inner = 2 * n * (n + 3) * Na ** 3 * Nb
    s = math.isqrt(inner)
    if s * s != inner:
        return None
    N1, N2 = (Na, Nb) if Na <= Nb else (Nb, Na)
    num = -(n - 3) * Na * Na * Nb + (N2 - N1) * s
    root = rational_sqrt(F(num, (n + 1) ** 2 * Nb)) if num >= 0 else None
    if root is None:
        return None
    m = F(Na, 2) + root / 2
    return m.numerator if m.denominator == 1 else None


def m_values(n: int, N1: int) -> tuple[int | None, int | None]:
    """(m_1, m_2) from the m-formulas for N_2 = (n+1)(n+2)/2 - N_1; None where a
    radical is not an exact square or m is not an integer."""
    N2 = (n + 1) * (n + 2) // 2 - N1
    return _m_from_formula(n, N1, N2), _m_from_formula(n, N2, N1)


def _is_odd_square(v: int) -> bool:
    r = math.isqrt(v)
    return r * r == v and r % 2 == 1


def evaluate_candidate(n: int, N1: int, eps: int, screen: bool = True) -> FeasibilityRecord:
    """Run the predicate pipeline on one (n, N_1, epsilon); the verdict names the
    first predicate that fails."""
    N2 = (n + 1) * (n + 2) // 2 - N1
    rec = FeasibilityRecord(n, N1, N2, eps)
    if N1 < n + 2 or N2 < N1:
        rec.verdict = "range_fail"
        return rec
    m1 = _m_from_formula(n, N1, N2)
    m2 = _m_from_formula(n, N2, N1)
    rec.m1, rec.m2 = m1, m2
    if m1 is None or m2 is None:
        rec.verdict = "m_not_integral"
        return rec
    if not (2 * m1 > N1 and m1 < N1 and 2 * m2 > N2 and m2 < N2):
        rec.verdict = "m_range_fail"
        return rec
    g2 = F(N1 - m1, n * m1)
    rec.gamma1_sq = Quad(g2)
    if N1 * m2 != N2 * m1 or F(N2 - m2, n * m2) != g2:
        rec.verdict = "m_ratio_fail"
        return rec
    if not (_in_k_bounds(n, N1, m1) and _in_k_bounds(n, N2, m2)):
        rec.verdict = "k_bound_fail"
        return rec
    D1, D2 = D_i(n, N1, g2), D_i(n, N2, g2)
    rec.D1, rec.D2 = Quad(D1), Quad(D2)
    s1, s2 = rational_sqrt(D1) if D1 >= 0 else None, rational_sqrt(D2) if D2 >= 0 else None
    if s1 is None or s2 is None:
        rec.verdict = "discriminant_fail"
        rec.detail = "D_i negative or not a rational square"
        return rec
    g = sqrt_exact(g2)
    sg = 1 - n * g2
    Bq = (n + 2) * (n * n * g2 * g2 + 1) - 6 * n * g2
    W = (Bq + eps * s1) / (4 * (N1 - 1) * g * sg)
    Winv = (Bq - eps * s2) / (4 * (N2 - 1) * g * sg)
    rec.W = W
    if sign(W) <= 0 or W * Winv != 1:
        rec.verdict = "w_inconsistent"
        return rec
    Da, Db = D_alpha(n, N1, g, W), D_beta(n, N2, g, W)
    rec.D_alpha, rec.D_beta = Da, Db
    if sign(Da) < 0 or sign(Db) < 0:
        rec.verdict = "cosine_fail"
        rec.detail = "negative D_alpha or D_beta"
        return rec
    ra, rb = sqrt_exact(Da.a) if isinstance(Da, Quad) and Da.is_rational else None, None
    if isinstance(Db, Quad) and Db.is_rational:
        rb = sqrt_exact(Db.a)
    if ra is None or rb is None:
        rec.verdict = "cosine_fail"
        rec.detail = "D_alpha or D_beta not rational"
        return rec
    base_a = (N1 - 1) * sg * W - n * (n - 1) * g
    base_b = (N2 - 1) * sg / W - n * (n - 1) * g
    # divide by gamma_1 termwise so both parts stay in a single quadratic field
    ca, cb = base_a / g, base_b / g
    a1 = (ca + ra / g) / (2 * n * (N1 - n - 1))
    a2 = (ca - ra / g) / (2 * n * (N1 - n - 1))
    b1 = (cb + rb / g) / (2 * n * (N2 - n - 1))
    b2 = (cb - rb / g) / (2 * n * (N2 - n - 1))
    rec.alpha1, rec.alpha2, rec.beta1, rec.beta2 = a1, a2, b1, b2
    for c in (a1, a2, b1, b2):
        if scalar_cmp(c, -1) <= 0 or scalar_cmp(c, 1) >= 0:
            rec.verdict = "cosine_fail"
            rec.detail = "cosine outside (-1, 1)"
            return rec
    if scalar_cmp(a1, a2) <= 0 or scalar_cmp(b1, b2) <= 0:
        rec.verdict = "cosine_fail"
        rec.detail = "ordering"
        return rec
    # the second root must agree with the linear relation between the two cosines
    Ea, Eb = (N1 - 1) * a1 + 1, (N2 - 1) * b1 + 1
    if not Ea or not Eb or a2 != -(n * a1 - n + N1) / (n * Ea) or b2 != -(n * b1 - n + N2) / (n * Eb):
        rec.verdict = "consistency_fail"
        return rec
    r2 = ((n + 2) * sg * W - 2 * n * g) / (2 * n * g * W - (n + 2) * sg)
    if sign(r2) <= 0 or r2 == 1:
        rec.verdict = "radius_fail"
        return rec
    w2 = N1 * W / (N2 * r2 ** 3)
    rec.r2_sq, rec.w2 = r2 * r2, w2
    if sign(w2) <= 0:
        rec.verdict = "radius_fail"
        return rec
    try:
        p = TwoSphereParams(n, N1, N2, a1, a2, b1, b2, g, Quad(-1) / (n * g), r2, w2)
        rep = integrality_report(closed_form_tensor(p))
    except (ParameterError, ZeroDivisionError) as exc:
        rec.verdict = "integrality_fail"
        rec.detail = str(exc)
        return rec
    if not rep.feasible:
        rec.verdict = "integrality_fail"
        rec.detail = rep.violations()[0]
        return rec
    rec.params = p
    bad = [i + 1 for i, v in enumerate(nine_equation_residuals(p)) if v]
    if bad:
        rec.verdict = "equation_fail"
        rec.detail = f"equations {bad}"
        return rec
    if screen and not _is_odd_square(n + 3):
        rec.verdict = "screen_fail"
        return rec
    rec.verdict = "feasible"
    return rec


def n1_range(n: int) -> range:
    hi = -(-(n + 2) * (n + 3) // 6) - 1   # ceil((n+2)(n+3)/6) - 1
    return range(n + 2, hi + 1)


def _search_one(args) -> tuple[list[FeasibilityRecord], Counter]:
    n, eps, keep, screen = args
    recs, counts = [], Counter()
    for N1 in n1_range(n):
        r = evaluate_candidate(n, N1, eps, screen)
        counts[r.verdict] += 1
        if keep == "all" or (keep == "candidates" and r.verdict not in ("range_fail", "m_not_integral")) \
                or r.feasible:
            recs.append(r)
    return recs, counts


@dataclass
class SearchResult:
    n_min: int
    n_max: int
    epsilon: int
    records: list[FeasibilityRecord]
    counts: Counter

    @property
    def feasible(self) -> list[FeasibilityRecord]:
        return [r for r in self.records if r.feasible]

    def summary(self) -> dict:
        return {"n_min": self.n_min, "n_max": self.n_max, "epsilon": self.epsilon,
                "candidates": sum(self.counts.values()),
                "verdicts": {k: self.counts[k] for k in VERDICTS if self.counts[k]},
                "feasible": [[r.n, r.N1, r.N2, r.m1, r.m2] for r in self.feasible]}


def search_tight(n_min: int = 2, n_max: int = 222, epsilon: int = -1, keep: str = "feasible",
                 screen: bool = True, threads: int | None = None) -> SearchResult:
    """Exhaustive search for tight 4-designs on two spheres with N_2 >= N_1 >= n+2.

    keep: "feasible", "candidates" (records past the m-integrality step) or "all"."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if keep not in ("feasible", "candidates", "all"):
        raise ValueError("keep must be feasible, candidates or all")
    ns = list(range(max(2, n_min), n_max + 1))
    jobs = [(n, epsilon, keep, screen) for n in ns]
    threads = thread_count() if threads is None else max(1, threads)
    if threads > 1 and len(ns) > 8:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_search_one, jobs, chunksize=4))
    else:
        parts = [_search_one(j) for j in jobs]
    recs: list[FeasibilityRecord] = []
    counts: Counter = Counter()
    for r, c in parts:
        recs.extend(r)
        counts.update(c)
    recs.sort(key=lambda r: r.sort_key)
    return SearchResult(n_min, n_max, epsilon, recs, counts)


# ------------------------------------------------------------ alpha_1 = 0

@dataclass
class Alpha1ZeroRecord:
    q: int
    d: int
    k: int
    n: int
    N1: int
    N2: int
    gamma1: Scalar
    r2: Scalar
    w2: Scalar
    beta1: Fraction
    beta2: Fraction

    def params(self) -> TwoSphereParams:
        n = self.n
        return TwoSphereParams(n, self.N1, self.N2, 0, F(-(self.N1 - n), n), self.beta1, self.beta2,
                               self.gamma1, Quad(-1) / (n * self.gamma1), self.r2, self.w2)

    def to_json(self) -> dict:
        return {"q": self.q, "d": self.d, "k": self.k, "n": self.n, "N1": self.N1, "N2": self.N2,
                "gamma1": format_scalar(self.gamma1), "r2": format_scalar(self.r2),
                "w2": format_scalar(self.w2), "beta1": format_scalar(Quad(self.beta1)),
                "beta2": format_scalar(Quad(self.beta2))}


@dataclass
class Alpha1ZeroResult:
    limit_q: int
    square_q: list[int]
    records: list[Alpha1ZeroRecord]
    rejected: list[tuple[str, str]]

    def to_json(self) -> dict:
        return {"limit_q": self.limit_q, "square_q": self.square_q,
                "records": [r.to_json() for r in self.records],
                "rejected": [{"case": c, "reason": why} for c, why in self.rejected]}


def alpha1_zero_classify(limit_q: int = 1000) -> Alpha1ZeroResult:
    """X_1 splits into d regular simplices of q points each; q(q-2)(2q-3) must
    be a square, and for q = 3 the X_2 distance ratio k - (k-5)/(2k-1) must be
    an integer, where 8d - 7 = (2k-1)^2."""
    if limit_q < 3:
        raise ValueError("limit_q must be at least 3")
    sq = _kernels.square_scan("b", 2, limit_q)
    recs, rej = [], []
    for q in sq:
        if q == 2:
            rej.append(("q=2", "gamma1 = 1/sqrt(n), the non-tight branch"))
            continue
        if q != 3:
            rej.append((f"q={q}", "no handler beyond q = 3"))
            continue
        k = 1
        while True:
            ratio = F(k) - F(k - 5, 2 * k - 1)
            if k >= 6 and 0 < F(k - 5, 2 * k - 1) < 1:
                break   # never integral from here on
            d = ((2 * k - 1) ** 2 + 7) // 8
            tag = f"q=3,k={k}"
            if ratio.denominator != 1:
                rej.append((tag, "distance ratio not integral"))
            elif 3 * d < 2 * d + 2:
                rej.append((tag, "N1 < n + 2"))
            else:
                n, N1, N2 = 2 * d, 3 * d, 2 * d * d + 1
                g = Quad(1) / (2 * sqrt_exact(d))
                rt = math.isqrt(8 * d - 7)
                recs.append(Alpha1ZeroRecord(q, d, k, n, N1, N2, g, sqrt_exact(d), Quad(F(3, N2)),
                                             F(-1 + rt, 4 * d), F(-1 - rt, 4 * d)))
            k += 1
    return Alpha1ZeroResult(limit_q, sq, recs, rej)


# ------------------------------------------------------------ scans

def diophantine_scan(kind: str, limit: int = 10 ** 6, lo: int | None = None) -> list[int]:
    """Arguments where n(n+1)(n+4) (kind a, from 3) or q(q-2)(2q-3) (kind b,
    from 2) is a perfect square.  Bounded checks, not proofs."""
    if kind not in ("a", "b"):
        raise ValueError("kind must be 'a' or 'b'")
    start = (3 if kind == "a" else 2) if lo is None else lo
    if limit < start:
        raise ValueError("limit below the start of the range")
    return _kernels.square_scan(kind, start, limit)


@dataclass
class MonotonicityReport:
    n: int
    samples: int
    dy_negative: int
    dx_positive: int
    inside_bounds: int
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"n": self.n, "samples": self.samples, "dy_negative": self.dy_negative,
                "dx_positive": self.dx_positive, "inside_bounds": self.inside_bounds,
                "ok": self.ok, "failures": self.failures}


def monotonicity_spotcheck(samples: int = 100, n: int = 10, seed: int = 0) -> MonotonicityReport:
    """Finite-difference signs of F(n, x, y) at random rational points of the box."""
    rng = random.Random(seed)
    xlo, xhi = n * (n + 1) // 2 + 1, n * (n + 3) // 2
    ylo = F(n + 1, 2)
    yspan = F(math.isqrt(3 * (n * n - 1) * 10 ** 12), 6 * 10 ** 6)  # floor of the width
    h = F(1, 10 ** 6)
    dy = dx = inside = 0
    fails = []
    for _ in range(samples):
        x = F(rng.randint(xlo * 1000, xhi * 1000 - 1), 1000)
        y = ylo + yspan * F(rng.randint(1, 999), 1000)
        f0 = F3(n, x, y)
        fy = F3(n, x, y + h)
        fx = F3(n, x + h, y)
        ok_y, ok_x = fy < f0, fx > f0
        ok_b = n + 2 < f0 < n + 3
        dy += ok_y
        dx += ok_x
        inside += ok_b
        if not (ok_y and ok_x and ok_b):
            fails.append({"x": str(x), "y": str(y), "F": str(f0), "dy": ok_y, "dx": ok_x, "bounds": ok_b})
    return MonotonicityReport(n, samples, dy, dx, inside, fails)
