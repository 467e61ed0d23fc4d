"""Euclidean 4-designs on two concentric spheres: parameter records, the
closed-form intersection numbers, and the nine consistency equations.

Conventions: r_1 = w_1 = 1, cosines ordered alpha_1 > alpha_2,
beta_1 > beta_2, gamma_1 > gamma_2.  Relation labels follow the coherent
module: alpha_u = (1,1,u), beta_u = (2,2,u), gamma_u = (1,2,u) from X_1 to
X_2 and (2,1,u) in the other direction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .coherent import IntersectionTensor, Label, RelationalModel, ResidualReport, identity_residuals, transpose
from .scalar import Quad, Scalar, as_scalar, format_scalar, parse_scalar, scalar_cmp

__all__ = [
    "TwoSphereParams", "ClosedFormTensor", "IntegralityReport", "ParameterError",
    "derive_secondary", "closed_form_tensor", "nine_equation_residuals",
    "integrality_report", "residual_identities_vs_tensor", "NINE_EQUATION_INDICES",
    "label_name", "params_from_json", "nine_equation_parts",
]


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class TwoSphereParams:
    n: int
    N1: int
    N2: int
    alpha1: Scalar
    alpha2: Scalar
    beta1: Scalar
    beta2: Scalar
    gamma1: Scalar
    gamma2: Scalar
    r2: Scalar | None = None
    w2: Scalar | None = None

    def __post_init__(self):
        for f in ("alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "r2", "w2"):
            v = getattr(self, f)
            if v is not None:
                v = as_scalar(v)
                if not v.is_exact:
                    raise ParameterError("two-sphere parameters must be exact")
                object.__setattr__(self, f, v)

    @property
    def W(self) -> Scalar:
        """(N_2/N_1) r_2^3 w_2."""
        if self.r2 is None or self.w2 is None:
            raise ParameterError("W needs r2 and w2")
        return Quad(self.N2) / self.N1 * self.r2 ** 3 * self.w2

    def with_radius(self, r2, w2) -> "TwoSphereParams":
        return TwoSphereParams(self.n, self.N1, self.N2, self.alpha1, self.alpha2, self.beta1,
                               self.beta2, self.gamma1, self.gamma2, as_scalar(r2), as_scalar(w2))

    def check_order(self) -> list[str]:
        bad = []
        for hi, lo in (("alpha1", "alpha2"), ("beta1", "beta2"), ("gamma1", "gamma2")):
            if scalar_cmp(getattr(self, hi), getattr(self, lo)) <= 0:
                bad.append(f"{hi} > {lo}")
        if self.gamma1 * self.gamma2 != Quad(-1, 0) / self.n:
            bad.append("gamma1*gamma2 = -1/n")
        return bad

    def to_json(self) -> dict:
        out = {"n": self.n, "N1": self.N1, "N2": self.N2}
        for f in ("alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "r2", "w2"):
            v = getattr(self, f)
            out[f] = None if v is None else format_scalar(v)
        return out


def params_from_json(obj: dict | str) -> TwoSphereParams:
    if isinstance(obj, str):
        obj = json.loads(obj)
    vals = {}
    for f in ("alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "r2", "w2"):
        v = obj.get(f)
        vals[f] = None if v is None else parse_scalar(v)
    return TwoSphereParams(int(obj["n"]), int(obj["N1"]), int(obj["N2"]), **vals)


def _second_cosine(n: int, N: int, c1: Scalar) -> Scalar:
    den = n * ((N - 1) * c1 + 1)
    if not den:
        raise ParameterError(f"(N-1)c+1 vanishes for N={N}: degenerate N = n+1 branch")
    return -(n * c1 - n + N) / den


def derive_secondary(n: int, N1: int, N2: int, alpha1, beta1, gamma1) -> TwoSphereParams:
    """alpha_2, beta_2 and gamma_2 from the first cosines (r_2, w_2 left unset)."""
    if N1 < n + 2 or N2 < n + 2:
        raise ParameterError("this branch needs N1, N2 >= n + 2")
    a1, b1, g1 = as_scalar(alpha1), as_scalar(beta1), as_scalar(gamma1)
    if not g1:
        raise ParameterError("gamma1 must be nonzero")
    p = TwoSphereParams(n, N1, N2, a1, _second_cosine(n, N1, a1), b1,
                        _second_cosine(n, N2, b1), g1, Quad(-1) / (n * g1))
    bad = p.check_order()
    if bad:
        raise ParameterError("ordering violated: " + ", ".join(bad))
    return p


# ------------------------------------------------------------ closed forms

_NAMES = {}
for _u in range(3):
    _NAMES[(1, 1, _u)] = f"alpha{_u}"
    _NAMES[(2, 2, _u)] = f"beta{_u}"
for _u in (1, 2):
    _NAMES[(1, 2, _u)] = f"gamma{_u}"
    _NAMES[(2, 1, _u)] = f"gamma{_u}'"


def label_name(lab: Label) -> str:
    return _NAMES[lab]


@dataclass
class ClosedFormTensor:
    params: TwoSphereParams
    relations: list[Label]
    entries: dict[tuple[Label, Label, Label], Scalar]
    simplex_fiber: bool = False   # X_1 is a regular simplex (N_1 = n+1)

    def value(self, a: Label, b: Label, c: Label) -> Scalar:
        return self.entries.get((a, b, c), Quad(0))

    def named(self, c: str, a: str, b: str) -> Scalar:
        """Look up by table-style names; gamma in position a of a beta base,
        or position b of an alpha base, refers to the X_2 -> X_1 direction."""
        lab = {v: k for k, v in _NAMES.items()}
        cl = lab[c]
        al = lab[a] if not a.startswith("gamma") else ((cl[0], 3 - cl[0], int(a[5])))
        bl = lab[b] if not b.startswith("gamma") else ((al[1], cl[1], int(b[5])))
        return self.value(al, bl, cl)

    def to_tensor(self) -> IntersectionTensor:
        return IntersectionTensor(list(self.relations), dict(self.entries), True,
                                  [self.params.N1, self.params.N2])

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "simplex_fiber": self.simplex_fiber,
            "entries": [
                {"c": label_name(c), "a": label_name(a), "b": label_name(b),
                 "label": [list(a), list(b), list(c)], "value": format_scalar(v)}
                for (a, b, c), v in sorted(self.entries.items())
            ],
        }


def closed_form_tensor(p: TwoSphereParams) -> ClosedFormTensor:
    """Every intersection number as a closed-form expression in
    (n, N1, N2, alpha1, beta1, gamma1).

    When X_1 is a regular simplex (alpha_1 = -1/n, N_1 = n+1) the second
    X_1 class is empty and the alpha entries use the simplex counts."""
    n, N1, N2 = p.n, p.N1, p.N2
    a, b, g = p.alpha1, p.beta1, p.gamma1
    G = n * g * g
    S = 1 + G
    Da = N1 - n + 2 * n * a + n * (N1 - 1) * a * a
    Db = N2 - n + 2 * n * b + n * (N2 - 1) * b * b
    Ea = (N1 - 1) * a + 1
    Eb = (N2 - 1) * b + 1
    simplex = not Ea
    if simplex and (N1 != n + 1 or a != Quad(-1) / n):
        raise ParameterError("(N1-1)alpha1+1 = 0 only for the simplex fiber")
    if not S:
        raise ParameterError("1 + n gamma1^2 vanishes")
    for name, den in (("D_beta", Db), ("(N2-1)beta1+1", Eb)):
        if not den:
            raise ParameterError(f"denominator {name} vanishes")
    if not simplex and not Da:
        raise ParameterError("denominator D_alpha vanishes")

    A = lambda u: (1, 1, u)
    B = lambda u: (2, 2, u)
    C = lambda u: (1, 2, u)
    Ct = lambda u: (2, 1, u)
    e: dict[tuple[Label, Label, Label], Scalar] = {}

    def put(c, x, y, v):
        e[(x, y, c)] = as_scalar(v)

    alpha_classes = [1] if simplex else [1, 2]

    # identity rows for every base relation
    rels: list[Label] = [A(0)] + [A(u) for u in alpha_classes] + [C(1), C(2), Ct(1), Ct(2), B(0), B(1), B(2)]
    for c in rels:
        lam, mu, q = c
        for x in rels:
            if x[0] != lam:
                continue
            if x == (lam, lam, 0):
                put(c, x, c, 1)
        for y in rels:
            if y[1] != mu:
                continue
            if y == (mu, mu, 0):
                put(c, c, y, 1)

    # base alpha_0
    if simplex:
        put(A(0), A(1), A(1), n)
    else:
        alpha2 = p.alpha2
        k1 = ((N1 - 1) * alpha2 + 1) / (alpha2 - a)
        put(A(0), A(1), A(1), k1)
        put(A(0), A(2), A(2), N1 - 1 - k1)
        put(A(0), A(1), A(2), 0)
        put(A(0), A(2), A(1), 0)
    m_a = Quad(N2) / S
    put(A(0), C(1), Ct(1), m_a)
    put(A(0), C(2), Ct(2), N2 - m_a)
    put(A(0), C(1), Ct(2), 0)
    put(A(0), C(2), Ct(1), 0)

    # base beta_0
    beta2 = p.beta2
    kb1 = ((N2 - 1) * beta2 + 1) / (beta2 - b)
    put(B(0), B(1), B(1), kb1)
    put(B(0), B(2), B(2), N2 - 1 - kb1)
    put(B(0), B(1), B(2), 0)
    put(B(0), B(2), B(1), 0)
    m_b = Quad(N1) / S
    put(B(0), Ct(1), C(1), m_b)
    put(B(0), Ct(2), C(2), N1 - m_b)
    put(B(0), Ct(1), C(2), 0)
    put(B(0), Ct(2), C(1), 0)

    S2 = S * S
    # base alpha_1
    if simplex:
        put(A(1), A(1), A(1), n - 1)
    else:
        Da2 = Da * Da
        v = n * (1 - a) * Ea ** 2 * (n * a + N1 - n) / Da2
        put(A(1), A(1), A(2), v)
        put(A(1), A(2), A(1), v)
        put(A(1), A(1), A(1),
            (n * (N1 - 1) * (N1 - 2 * n - 1) * a ** 3 - 3 * n * n * a * a - 3 * n * a
             + (N1 - n - 2) * (N1 - n)) * N1 / Da2)
        put(A(1), A(2), A(2), n * a * N1 * Ea ** 2 * (n * a + 1) / Da2)
    put(A(1), C(1), Ct(1), N2 * (G * a + 1) / S2)
    put(A(1), C(2), Ct(2), (G + a) * N2 * G / S2)
    v = (1 - a) * G * N2 / S2
    put(A(1), C(1), Ct(2), v)
    put(A(1), C(2), Ct(1), v)

    # base alpha_2
    if not simplex:
        v = N1 * N1 * a * (n * a + 1) * (N1 - n - 1) / Da2
        put(A(2), A(1), A(2), v)
        put(A(2), A(2), A(1), v)
        put(A(2), A(1), A(1), N1 * (1 - a) * (N1 - n - 1) * (n * a - n + N1) / Da2)
        put(A(2), A(2), A(2),
            Ea / Da2 * (n * n * (N1 * N1 - 3 * N1 + 2) * a ** 3 + 3 * n * n * (N1 - 2) * a * a
                        + 3 * n * (2 * n - N1) * a - 2 * n * n + 3 * n * N1 - N1 * N1))
        den = S2 * Ea
        v = (n * a + 1) * g * g * N2 * N1 / den
        put(A(2), C(1), Ct(2), v)
        put(A(2), C(2), Ct(1), v)
        gg = g * g
        put(A(2), C(1), Ct(1),
            -N2 * (-N1 * a + N1 * gg + n * gg * a + a - gg * n - 1) / den)
        put(A(2), C(2), Ct(2),
            N2 * gg * (-N1 - n * a + n + n * n * a * N1 * gg - n * n * a * gg + gg * n * n) / den)

    # base beta_1
    Db2 = Db * Db
    v = n * (1 - b) * Eb ** 2 * (-n + N2 + n * b) / Db2
    put(B(1), B(1), B(2), v)
    put(B(1), B(2), B(1), v)
    put(B(1), B(1), B(1),
        N2 / Db2 * (n * (N2 - 1) * (N2 - 2 * n - 1) * b ** 3 - 3 * n * n * b * b - 3 * n * b
                    + (N2 - n - 2) * (N2 - n)))
    put(B(1), B(2), B(2), N2 * n * b * Eb ** 2 * (n * b + 1) / Db2)
    v = (1 - b) * N1 * G / S2
    put(B(1), Ct(1), C(2), v)
    put(B(1), Ct(2), C(1), v)
    put(B(1), Ct(1), C(1), N1 * (G * b + 1) / S2)
    put(B(1), Ct(2), C(2), N1 * G * (b + G) / S2)

    # base beta_2
    v = N2 * N2 * b * (n * b + 1) * (N2 - n - 1) / Db2
    put(B(2), B(1), B(2), v)
    put(B(2), B(2), B(1), v)
    put(B(2), B(1), B(1), (b - 1) * (n - N2 + 1) * (-n + N2 + n * b) * N2 / Db2)
    put(B(2), B(2), B(2),
        Eb / Db2 * (n * n * (N2 * N2 - 3 * N2 + 2) * b ** 3 + 3 * n * n * b * b * (N2 - 2)
                    - 3 * n * (N2 - 2 * n) * b - 2 * n * n + 3 * N2 * n - N2 * N2))
    den = S2 * Eb
    gg = g * g
    v = (n * b + 1) * gg * N1 * N2 / den
    put(B(2), Ct(1), C(2), v)
    put(B(2), Ct(2), C(1), v)
    put(B(2), Ct(1), C(1), ((n - N2 - n * b) * gg + N2 * b + 1 - b) * N1 / den)
    put(B(2), Ct(2), C(2),
        ((n * n * b * N2 - n * n * b + n * n) * gg - n * b + n - N2) * N1 * gg / den)

    # base gamma_1 (x in X_1, y in X_2)
    DbS = Db * S
    put(C(1), C(2), B(2), N2 * G * Eb * (n * b + 1) / DbS)
    put(C(1), C(1), B(1), (G * b + 1) * (N2 - n - 1) * N2 / DbS)
    put(C(1), C(2), B(1), N2 * G * (1 - b) * (N2 - n - 1) / DbS)
    put(C(1), C(1), B(2), n * Eb * ((n - n * b - N2) * gg + N2 * b + 1 - b) / DbS)
    # base gamma_2
    put(C(2), C(2), B(2), Eb * ((n * n * b * N2 - n * n * b + n * n) * gg - n * b + n - N2) / DbS)
    put(C(2), C(1), B(2), Eb * (n * b + 1) * N2 / DbS)
    put(C(2), C(1), B(1), N2 * (b - 1) * (n - N2 + 1) / DbS)
    put(C(2), C(2), B(1), N2 * (N2 - n - 1) * (b + G) / DbS)
    if simplex:
        put(C(1), A(1), C(1), n * (1 - gg) / S)
        put(C(1), A(1), C(2), n * (n + 1) * gg / S)
        put(C(2), A(1), C(1), Quad(n + 1) / S)
        put(C(2), A(1), C(2), (n * n * gg - 1) / S)
    else:
        DaS = Da * S
        put(C(1), A(2), C(2), N1 * G * Ea * (n * a + 1) / DaS)
        put(C(1), A(1), C(1), N1 * (G * a + 1) * (N1 - n - 1) / DaS)
        put(C(1), A(1), C(2), N1 * G * (1 - a) * (N1 - n - 1) / DaS)
        put(C(1), A(2), C(1), n * Ea * (Ea + (n - N1 - n * a) * gg) / DaS)
        put(C(2), A(2), C(2), Ea * (-N1 - n * a + n + (n * n * a * N1 - n * n * a + n * n) * gg) / DaS)
        put(C(2), A(1), C(2), (G + a) * (N1 - n - 1) * N1 / DaS)
        put(C(2), A(2), C(1), N1 * Ea * (n * a + 1) / DaS)
        put(C(2), A(1), C(1), (1 - a) * (N1 - n - 1) * N1 / DaS)

    # base gamma'_q (x in X_2, y in X_1): p^{c}_{a,b} = p^{c^T}_{b^T,a^T}
    for (x, y, c), v in list(e.items()):
        if c[0] == 1 and c[1] == 2:
            e[(transpose(y), transpose(x), transpose(c))] = v

    # zero entries for the remaining compatible triples keep lookups total
    for c in rels:
        for x in rels:
            if x[0] != c[0]:
                continue
            for y in rels:
                if y[0] == x[1] and y[1] == c[1]:
                    e.setdefault((x, y, c), Quad(0))
    return ClosedFormTensor(p, rels, e, simplex)


# ------------------------------------------------------------ nine equations

# (lam, mu, q, l, k, j) of the underlying identities, in order (I)..(IX)
NINE_EQUATION_INDICES = [
    (1, 1, 0, 3, 0, 0), (1, 1, 0, 2, 2, 0), (2, 2, 0, 2, 1, 0), (2, 2, 0, 3, 1, 0),
    (1, 1, 1, 2, 2, 0), (1, 1, 2, 2, 2, 0), (2, 2, 1, 2, 2, 0), (2, 2, 2, 2, 2, 0),
    (1, 2, 1, 2, 2, 0),
]


def nine_equation_parts(p: TwoSphereParams) -> list[tuple[Scalar, int, Scalar]]:
    """Each equation as (c, e, c0) with residual c * w_2 r_2^e + c0."""
    n, N1, N2 = p.n, p.N1, p.N2
    a, b, g = p.alpha1, p.beta1, p.gamma1
    g2 = g * g
    g4 = g2 * g2
    Ea = N1 * a - a + 1
    Eb = N2 * b - b + 1
    out = []

    # (I)
    out.append((N2 * Ea * (n * g2 - 1), 3,
                g * N1 * (n * (N1 - n - 1) * a * a + n * (n - 1) * a + 2 * n - N1)))
    # (II); the a^2 coefficient enters with a minus sign, as in (IV)
    out.append((N2 * Ea ** 2 * (n * n * g4 * (n + 2) - 2 * g2 * n * (2 * n + 1) + n + 2), 4,
                g2 * N1 * (n * n * (n + 2) * (N1 - 1) * (N1 - n - 1) * a ** 4
                           - n * (2 * (2 * n + 1) * N1 * N1 - (n ** 3 + 4 * n * n + 11 * n + 2) * N1
                                  + 3 * n * (n * n + 2 * n + 1)) * a * a
                           + 2 * n * (n - 1) * (n * n + n - 2 * N1) * a
                           + 3 * n * n * (n + 1) + (n + 2) * N1 * N1 - 3 * n * (n + 2) * N1)))
    # (III)
    out.append((g * N2 * (n * (N2 - n - 1) * b * b + n * (n - 1) * b + 2 * n - N2), 3,
                N1 * (n * g2 - 1) * ((N2 - 1) * b + 1)))
    # (IV)
    out.append((g2 * N2 * (n * n * (n + 2) * (N2 - 1) * (N2 - n - 1) * b ** 4
                           - n * (2 * (2 * n + 1) * N2 * N2 - (2 + 4 * n * n + 11 * n + n ** 3) * N2
                                  + 3 * n * (n + 1) ** 2) * b * b
                           + 2 * n * (n - 1) * (n * n + n - 2 * N2) * b
                           + (n + 2) * N2 * N2 - 3 * n * (n + 2) * N2 + 3 * n * n * (n + 1)), 4,
                N1 * Eb ** 2 * (n + 2 - 2 * n * (2 * n + 1) * g2 + (n + 2) * n * n * g4)))
    # (V)
    out.append((-N2 * Ea ** 2 * (n * n * a * (n + 2) * g4 - 2 * n * (n * a * a + (n + 2) * a - 1) * g2
                                  + a * (n + 2)), 4,
                N1 * g2 * (n * n * (N1 - 1) * (n + 2) * (2 * n - N1 + 1) * a ** 5
                           - n * n * (2 * n * N1 + 2 + 2 * n * n * N1 - 4 * n - 3 * n * n - 2 * N1 * N1) * a ** 4
                           + 2 * n * (N1 - 1) * ((n + 2) * N1 - 3 * n * n - 4 * n) * a ** 3
                           - n * (-2 * n * n * N1 + 2 * N1 * N1 + n - 2 * n * N1 + 4 * n * n + n ** 3) * a * a
                           + (-n ** 3 - 4 * n * n + 4 * n * (n + 1) * N1 - (n + 2) * N1 * N1) * a
                           + n * n)))
    # (VI)
    brace = (n * (-n * n * (N1 - 1) * (n + 2) * g4 + 2 * n * (-2 * n + N1 * N1 + N1 * n - 1) * g2
                  - (N1 - 1) * (n + 2)) * a * a
             + (n * n * (n + 2) * (-2 * n + N1 * n - N1 * N1 + N1) * g4
                - 2 * n * (-2 * n + 2 * N1 - 4 * n * n + 3 * N1 * n - N1 * N1 * n - 2 * N1 * N1
                           + N1 * n * n) * g2
                + (n + 2) * (-2 * n + N1 * n - N1 * N1 + N1)) * a
             + n * n * (n + 2) * (n - N1) * g4
             - 2 * n * (-2 * N1 + 2 * n * n + n - 3 * N1 * n + N1 * N1) * g2
             + (n + 2) * (n - N1))
    tail = (n ** 3 * (N1 - 1) * (n + 2) * (n - N1 + 1) * a ** 5
            - n * n * (n + 2) * (-n + 2 * N1 * n - N1 * N1 + N1) * (n - N1 + 1) * a ** 4
            + n * n * (2 * N1 ** 3 - 4 * N1 + 6 * n * n + 3 * n + 2 * N1 * N1 + 3 * n ** 3
                       + N1 * n ** 3 - 11 * N1 * n - 2 * N1 * N1 * n * n) * a ** 3
            - n * (-26 * N1 * n * n + 16 * N1 * N1 * n - 4 * N1 ** 3 + 4 * N1 * N1 - 4 * N1 * n
                   + 6 * n ** 3 + n * n + 5 * n ** 4 + 8 * N1 * N1 * n * n - 8 * N1 * n ** 3
                   - 2 * N1 ** 3 * n) * a * a
            + n * (12 * N1 * n - 4 * N1 * N1 - 3 * n ** 3 + 5 * N1 * N1 * n - 3 * N1 * n * n
                   - 2 * N1 ** 3 - 5 * n * n + 2 * n ** 4 + 2 * N1 * N1 * n * n - 4 * N1 * n ** 3) * a
            - 7 * N1 * n ** 3 + 8 * N1 * N1 * n + 3 * n ** 3 + 5 * N1 * N1 * n * n - 2 * N1 ** 3
            - N1 ** 3 * n - 10 * N1 * n * n + 3 * n ** 4)
    out.append((N2 * brace * Ea, 4, tail * N1 * g2))
    # (VII)
    out.append((N2 * (n * n * b ** 5 * (N2 - 1) * (2 + n) * (-2 * n + N2 - 1)
                      - n * n * (2 * N2 * N2 - 2 * n * n * N2 - 2 * N2 * n + 3 * n * n + 4 * n - 2) * b ** 4
                      - 2 * n * (N2 - 1) * (2 * N2 + N2 * n - 3 * n * n - 4 * n) * b ** 3
                      + n * (-2 * N2 * n + 2 * N2 * N2 - 2 * n * n * N2 + n + n ** 3 + 4 * n * n) * b * b
                      + (-4 * n * n * N2 + 4 * n * n - 4 * N2 * n + n * N2 * N2 + n ** 3 + 2 * N2 * N2) * b
                      - n * n) * g2, 4,
                N1 * (n * n * (n + 2) * b * g4 - 2 * n * (n * b * b + (n + 2) * b - 1) * g2 + (n + 2) * b)
                * ((N2 - 1) * b + 1) ** 2))
    # (VIII)
    coef = N2 * g2 * (
        -n ** 3 * (N2 - 1) * (n + 2) * (N2 - n - 1) * b ** 5
        - n * n * (n + 2) * (n - 2 * N2 * n + N2 * N2 - N2) * (N2 - n - 1) * b ** 4
        + n * n * (3 * n ** 3 + n ** 3 * N2 - 11 * N2 * n + 2 * N2 * N2 + 3 * n - 2 * n * n * N2 * N2
                   + 2 * N2 ** 3 + 6 * n * n - 4 * N2) * b ** 3
        + n * (2 * (n + 2) * N2 ** 3 - 4 * (2 * n * n + 4 * n + 1) * N2 * N2
               + n * (8 * n * n + 26 * n + 4) * N2 - (5 * n * n + 6 * n + 1) * n * n) * b * b
        - n * (-2 * n ** 4 + 3 * n * n * N2 + 4 * N2 * N2 - 2 * n * n * N2 * N2 + 5 * n * n
               - 5 * n * N2 * N2 - 12 * N2 * n + 3 * n ** 3 + 4 * n ** 3 * N2 + 2 * N2 ** 3) * b
        - N2 ** 3 * n - 7 * n ** 3 * N2 + 5 * n * n * N2 * N2 - 2 * N2 ** 3 - 10 * n * n * N2
        + 3 * n ** 4 + 3 * n ** 3 + 8 * n * N2 * N2)
    const = N1 * (
        -n * (n * n * (N2 - 1) * (2 + n) * g4 - 2 * n * (-1 + N2 * n - 2 * n + N2 * N2) * g2
              + (N2 - 1) * (2 + n)) * (N2 - 1) * b ** 3
        - (n * n * (N2 - 1) * (2 + n) * (-N2 * n + 3 * n + N2 * N2 - N2) * g4
           - 2 * n * (-3 * n - 6 * n * n - n * n * N2 * N2 + 2 * N2 ** 3 + N2 ** 3 * n + 6 * n * n * N2
                      - 3 * n * N2 * N2 + 5 * N2 * n + 2 * N2 - 4 * N2 * N2) * g2
           + (N2 - 1) * (2 + n) * (-N2 * n + 3 * n + N2 * N2 - N2)) * b * b
        - (n * n * (2 + n) * (3 * n - 2 * N2 * n + 2 * N2 * N2 - 2 * N2) * g4
           + 2 * n * (-6 * n * n - 3 * n + N2 ** 3 - 5 * N2 * N2 + 7 * N2 * n + 4 * N2 + 3 * n * n * N2
                      - 4 * n * N2 * N2) * g2
           + (2 + n) * (3 * n - 2 * N2 * n + 2 * N2 * N2 - 2 * N2)) * b
        - n * n * (2 + n) * (N2 - n) * g4 - 2 * n * (N2 * N2 - 3 * N2 * n + 2 * n * n + n - 2 * N2) * g2
        - (2 + n) * (N2 - n))
    out.append((coef, 4, const))
    # (IX)
    f = n * g2 - 1
    out.append((f * Ea * (-n * (n + 2) * (N2 - n - 1) * b * b + n * (-n * n - n + 2 * N2) * b
                          + N2 * n - 2 * n * n - 2 * n + 2 * N2) * N2, 4,
                f * Eb * (-n * (n + 2) * (N1 - n - 1) * a * a + n * (-n * n - n + 2 * N1) * a
                          + N1 * n - 2 * n * n - 2 * n + 2 * N1) * N1))
    return [(as_scalar(c), e, as_scalar(c0)) for c, e, c0 in out]


def nine_equation_residuals(p: TwoSphereParams) -> list[Scalar]:
    if p.r2 is None or p.w2 is None:
        raise ParameterError("nine equations need r2 and w2")
    return [c * p.w2 * p.r2 ** e + c0 for c, e, c0 in nine_equation_parts(p)]


# ------------------------------------------------------------ integrality

@dataclass
class IntegralityReport:
    entries: list[tuple[str, Scalar, bool]]

    @property
    def feasible(self) -> bool:
        return all(ok for _, _, ok in self.entries)

    def violations(self) -> list[str]:
        return [k for k, _, ok in self.entries if not ok]

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "entries": [{"key": k, "value": format_scalar(v), "ok": ok} for k, v, ok in self.entries],
        }


def is_nonneg_integer(v: Scalar) -> bool:
    return isinstance(v, Quad) and v.is_rational and v.a.denominator == 1 and v.a >= 0


def integrality_report(t: ClosedFormTensor) -> IntegralityReport:
    rows = []
    for (a, b, c), v in sorted(t.entries.items()):
        key = f"p^{label_name(c)}_{{{label_name(a)},{label_name(b)}}}"
        rows.append((key, v, is_nonneg_integer(v)))
    return IntegralityReport(rows)


# ------------------------------------------------------------ identities

def params_model(p: TwoSphereParams, simplex: bool = False) -> RelationalModel:
    if p.r2 is None or p.w2 is None:
        raise ParameterError("identities need r2 and w2")
    r, r2 = p.r2, p.r2 * p.r2
    alphas = [p.alpha1] if simplex else [p.alpha1, p.alpha2]
    ips = {
        (1, 1): alphas,
        (2, 2): [p.beta1 * r2, p.beta2 * r2],
        (1, 2): [p.gamma1 * r, p.gamma2 * r],
        (2, 1): [p.gamma1 * r, p.gamma2 * r],
    }
    return RelationalModel([p.N1, p.N2], [Quad(1), p.w2], [Quad(1), r2], ips)


def residual_identities_vs_tensor(p: TwoSphereParams, t: ClosedFormTensor | None = None,
                                  degree: int = 4) -> ResidualReport:
    """Substitute the closed-form numbers into the general identities for all
    l + k + 2j <= degree."""
    t = t or closed_form_tensor(p)
    return identity_residuals(params_model(p, t.simplex_fiber), t.value, p.n, degree)
