"""Relations of a layered design, brute-force intersection numbers, and the
association-scheme matrices of a fiber.

Relation labels are triples ``(lam, mu, u)`` with 1-based layer indices and
``u = 0`` the identity on a diagonal block.  Classes ``u >= 1`` follow the
inner products in descending order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .designs import (
    Design, DesignError, InnerProductProfile, LayerDecomposition, antipodal_check,
    decompose_layers, dot, inner_product_profile,
)
from .gegenbauer import gegenbauer_table
from .scalar import Quad, Scalar, format_scalar, scalar_cmp, sign, sqrt_exact

__all__ = [
    "Label", "RelationPartition", "IntersectionTensor", "SchemeEigen", "RelationalModel",
    "ResidualReport", "HypothesisReport", "build_relations", "intersection_tensor",
    "check_theorem12_hypotheses", "scheme_matrices", "prop31_residuals", "prop33_residuals",
    "identity_residuals", "transpose", "compatible_triples", "SchemeError",
]

Label = tuple[int, int, int]


class SchemeError(ValueError):
    pass


def transpose(a: Label) -> Label:
    return (a[1], a[0], a[2])


@dataclass
class RelationPartition:
    design: Design
    decomposition: LayerDecomposition
    profile: InnerProductProfile
    points: list[int]               # design indices taking part (origin removed)
    fiber_of: list[int]             # 1-based fiber per entry of ``points``
    fibers: list[list[int]]         # positions into ``points``
    relations: list[Label]
    labels: np.ndarray              # relation index for each ordered pair
    ips: dict[tuple[int, int], list[Scalar]]
    cosines: dict[tuple[int, int], list[Scalar]]
    constant_weights: bool

    @property
    def p(self) -> int:
        return len(self.fibers)

    def index(self, lab: Label) -> int:
        return self._index[lab]

    def __post_init__(self):
        self._index = {lab: i for i, lab in enumerate(self.relations)}

    def cosine(self, lab: Label) -> Scalar:
        lam, mu, u = lab
        return Quad(1) if u == 0 else self.cosines[(lam, mu)][u - 1]

    def class_sizes(self) -> dict[tuple[int, int], int]:
        return {k: len(v) for k, v in self.cosines.items()}

    def to_json(self) -> dict:
        return {
            "fibers": [len(f) for f in self.fibers],
            "relations": [
                {"label": list(lab), "cosine": format_scalar(self.cosine(lab))}
                for lab in self.relations
            ],
            "constant_weights": self.constant_weights,
        }


def build_relations(d: Design) -> RelationPartition:
    """Partition X x X (origin removed) into identity and cosine classes."""
    dec = decompose_layers(d)
    prof = inner_product_profile(d, dec)
    start = dec.origin_flag
    fibers_idx = [dec.layers[li].members for li in range(start, dec.p)]
    points = [i for mem in fibers_idx for i in mem]
    pos = {i: k for k, i in enumerate(points)}
    fiber_of = [0] * len(points)
    fibers = []
    for f, mem in enumerate(fibers_idx, start=1):
        fibers.append([pos[i] for i in mem])
        for i in mem:
            fiber_of[pos[i]] = f
    p = len(fibers)
    ips: dict[tuple[int, int], list[Scalar]] = {}
    cosines: dict[tuple[int, int], list[Scalar]] = {}
    relations: list[Label] = []
    for lam in range(1, p + 1):
        for mu in range(1, p + 1):
            key = (lam - 1 + start, mu - 1 + start)
            ips[(lam, mu)] = prof.inner_products[key]
            cosines[(lam, mu)] = prof.cosines[key]
            lo = 0 if lam == mu else 1
            relations.extend((lam, mu, u) for u in range(lo, len(ips[(lam, mu)]) + 1))
    index = {lab: i for i, lab in enumerate(relations)}
    exact = d.is_exact
    lookup: dict[tuple[int, int], dict] = {}
    if exact:
        for key, vals in ips.items():
            lookup[key] = {v: u for u, v in enumerate(vals, start=1)}
    npts = len(points)
    labels = np.zeros((npts, npts), dtype=np.int32)
    for x in range(npts):
        px = d.points[points[x]]
        lam = fiber_of[x]
        for y in range(npts):
            mu = fiber_of[y]
            if x == y:
                labels[x, y] = index[(lam, lam, 0)]
                continue
            ip = dot(px, d.points[points[y]])
            if exact:
                u = lookup[(lam, mu)][ip]
            else:
                u = next(k for k, v in enumerate(ips[(lam, mu)], start=1) if scalar_cmp(v, ip) == 0)
            labels[x, y] = index[(lam, mu, u)]
    const = all(dec.layers[li].weight is not None for li in range(start, dec.p))
    return RelationPartition(d, dec, prof, points, fiber_of, fibers, relations, labels,
                             ips, cosines, const)


def compatible_triples(relations: Iterable[Label]) -> list[tuple[Label, Label, Label]]:
    """All (a, b, c) with a = (lam, nu, u), b = (nu, mu, v), c = (lam, mu, q)."""
    rels = list(relations)
    out = []
    for c in rels:
        for a in rels:
            if a[0] != c[0]:
                continue
            for b in rels:
                if b[0] == a[1] and b[1] == c[1]:
                    out.append((a, b, c))
    return out


@dataclass
class IntersectionTensor:
    relations: list[Label]
    entries: dict[tuple[Label, Label, Label], Scalar | int]
    constant: bool
    fiber_sizes: list[int]
    witness: dict | None = None
    counts: np.ndarray | None = None
    labels: np.ndarray | None = None
    cosines: dict[Label, Scalar] = field(default_factory=dict)

    def value(self, a: Label, b: Label, c: Label):
        """p^c_{a,b}; zero for triples absent from the table."""
        return self.entries.get((a, b, c), 0)

    def fiber_sum_violations(self) -> list[str]:
        """Check sum_{u,v} p^c_{(lam,nu,u),(nu,mu,v)} = |X_nu| for every c and nu."""
        bad = []
        rels = self.relations
        if self.counts is not None:
            index = {lab: i for i, lab in enumerate(rels)}
            R = len(rels)
            for x, y in itertools.product(range(self.counts.shape[0]), repeat=2):
                c = rels[self.labels[x, y]]
                for nu in range(1, len(self.fiber_sizes) + 1):
                    tot = 0
                    for a in rels:
                        if a[0] != c[0] or a[1] != nu:
                            continue
                        for b in rels:
                            if b[0] == nu and b[1] == c[1]:
                                tot += int(self.counts[x, y, index[a] * R + index[b]])
                    if tot != self.fiber_sizes[nu - 1]:
                        bad.append(f"pair ({x},{y}) fiber {nu}: {tot}")
            return bad
        for c in rels:
            for nu in range(1, len(self.fiber_sizes) + 1):
                tot: Scalar = Quad(0)
                for a in rels:
                    if a[0] != c[0] or a[1] != nu:
                        continue
                    for b in rels:
                        if b[0] == nu and b[1] == c[1]:
                            tot = tot + self.value(a, b, c)
                if tot != self.fiber_sizes[nu - 1]:
                    bad.append(f"{c} fiber {nu}: {format_scalar(tot)}")
        return bad

    def transpose_violations(self) -> list[str]:
        """p^c_{a,b} = p^{c'}_{b',a'} with ' the transposed relation.  With raw
        counts at hand this is checked pair by pair: (x, y) against (y, x)."""
        bad = []
        if self.counts is not None:
            rels = self.relations
            R = len(rels)
            index = {lab: i for i, lab in enumerate(rels)}
            perm = np.empty(R * R, dtype=np.intp)
            for i, a in enumerate(rels):
                for j, b in enumerate(rels):
                    ta, tb = transpose(a), transpose(b)
                    perm[i * R + j] = (index[tb] * R + index[ta]) if tb in index and ta in index else -1
            if (perm < 0).any():
                return ["relation set is not closed under transposition"]
            swapped = np.asarray(self.counts).transpose(1, 0, 2)[:, :, perm]
            for x, y, col in zip(*np.nonzero(np.asarray(self.counts) != swapped)):
                a, b = rels[col // R], rels[col % R]
                bad.append(f"pair ({x},{y}) classes {a},{b}")
                if len(bad) >= 20:
                    break
            return bad
        for (a, b, c), v in self.entries.items():
            w = self.value(transpose(b), transpose(a), transpose(c))
            if v != w:
                bad.append(f"p^{c}_{{{a},{b}}} = {v} but transposed {w}")
        return bad

    def to_json(self) -> dict:
        return {
            "constant": self.constant,
            "fiber_sizes": self.fiber_sizes,
            "relations": [
                {"label": list(r), "cosine": format_scalar(self.cosines[r])} if r in self.cosines
                else {"label": list(r)} for r in self.relations
            ],
            "entries": [
                {"a": list(a), "b": list(b), "c": list(c), "value": format_scalar(v)}
                for (a, b, c), v in sorted(self.entries.items()) if v
            ],
            "witness": self.witness,
        }


def intersection_tensor(d: Design | None = None, rp: RelationPartition | None = None) -> IntersectionTensor:
    """Brute-force intersection numbers with an exact constancy decision."""
    if rp is None:
        if d is None:
            raise ValueError("need a design or a relation partition")
        rp = build_relations(d)
    R = len(rp.relations)
    counts = np.asarray(_kernels.count_triples(rp.labels, R))
    entries: dict = {}
    constant = True
    witness = None
    flat_labels = rp.labels.reshape(-1)
    flat = counts.reshape(-1, R * R)
    for ci, c in enumerate(rp.relations):
        rows = np.nonzero(flat_labels == ci)[0]
        if rows.size == 0:
            continue
        block = flat[rows]
        ref = block[0]
        diff = np.nonzero((block != ref).any(axis=1))[0]
        if diff.size and witness is None:
            constant = False
            other = int(rows[diff[0]])
            col = int(np.nonzero(block[diff[0]] != ref)[0][0])
            n = rp.labels.shape[0]
            witness = {
                "relation": list(c),
                "pair_a": [int(rows[0]) // n, int(rows[0]) % n],
                "pair_b": [other // n, other % n],
                "a": list(rp.relations[col // R]),
                "b": list(rp.relations[col % R]),
                "counts": [int(ref[col]), int(block[diff[0]][col])],
            }
        elif diff.size:
            constant = False
        for a, b, cc in compatible_triples_for(rp.relations, c):
            entries[(a, b, cc)] = int(ref[rp.index(a) * R + rp.index(b)])
    cos = {lab: rp.cosine(lab) for lab in rp.relations}
    return IntersectionTensor(list(rp.relations), entries, constant,
                              [len(f) for f in rp.fibers], witness, counts, rp.labels, cos)


def compatible_triples_for(relations: list[Label], c: Label):
    for a in relations:
        if a[0] != c[0]:
            continue
        for b in relations:
            if b[0] == a[1] and b[1] == c[1]:
                yield a, b, c


# ------------------------------------------------------------ hypotheses

@dataclass
class HypothesisReport:
    t: int
    p: int
    origin_flag: int
    bound: int
    antipodal: bool
    condition1: bool
    condition2: bool
    triples: list[dict]

    @property
    def holds(self) -> bool:
        return self.condition1 or self.condition2

    def to_json(self) -> dict:
        return {
            "t": self.t, "p": self.p, "origin_flag": self.origin_flag, "bound": self.bound,
            "antipodal": self.antipodal, "condition1": self.condition1,
            "condition2": self.condition2, "triples": self.triples,
        }


def check_theorem12_hypotheses(d: Design, t: int) -> HypothesisReport:
    """Evaluate the two sufficient conditions for coherence on every layer triple."""
    dec = decompose_layers(d)
    prof = inner_product_profile(d, dec)
    p = dec.p
    eps = dec.origin_flag
    bound = t - 2 * (p - eps - 2)
    anti = antipodal_check(d)
    layers = list(range(eps, p))
    c1 = c2 = True
    rows = []
    for lam, nu, mu in itertools.product(layers, repeat=3):
        s1 = prof.size(lam, nu)
        s2 = prof.size(nu, mu)
        one = s1 + s2 <= bound
        two = anti and s1 + s2 - (lam == nu) - (nu == mu) <= bound
        c1 &= one
        c2 &= two
        rows.append({"triple": [lam - eps + 1, nu - eps + 1, mu - eps + 1],
                     "s": [s1, s2], "cond1": one, "cond2": bool(two)})
    return HypothesisReport(t, p, eps, bound, anti, c1, bool(c2), rows)


# ------------------------------------------------------- residual identities

@dataclass
class RelationalModel:
    """Fiber data plus class inner products, enough to evaluate the
    intersection-number identities without coordinates."""

    sizes: list[int]
    weights: list[Scalar]
    norms2: list[Scalar]
    ips: dict[tuple[int, int], list[Scalar]]   # class u at position u-1

    @property
    def p(self) -> int:
        return len(self.sizes)

    def ip(self, lab: Label) -> Scalar:
        lam, mu, u = lab
        return self.norms2[lam - 1] if u == 0 else self.ips[(lam, mu)][u - 1]

    def classes(self, lam: int, mu: int) -> list[int]:
        return list(range(1, len(self.ips[(lam, mu)]) + 1))

    def kernel(self, l: int, lab: Label, n: int) -> Scalar:
        """(r_lam r_mu)^l Q_l(cosine), written in the inner product and squared norms."""
        q = gegenbauer_table(n, max(l, 6)).coeffs[l]
        ip = self.ip(lab)
        nn = self.norms2[lab[0] - 1] * self.norms2[lab[1] - 1]
        acc: Scalar = Quad(0)
        for c in range(l % 2, l + 1, 2):
            if q[c]:
                acc = acc + q[c] * (ip ** c) * (nn ** ((l - c) // 2))
        return acc

    def antipode_class(self, lam: int) -> int | None:
        for u, v in enumerate(self.ips[(lam, lam)], start=1):
            if scalar_cmp(v, -self.norms2[lam - 1]) == 0:
                return u
        return None

    def conjugate_class(self, lam: int, mu: int, q: int) -> int | None:
        """Index of the class with the negated inner product (q* in the antipodal setting)."""
        if q == 0:
            return self.antipode_class(lam)
        target = -self.ips[(lam, mu)][q - 1]
        if lam == mu and scalar_cmp(target, self.norms2[lam - 1]) == 0:
            return 0
        for u, v in enumerate(self.ips[(lam, mu)], start=1):
            if scalar_cmp(v, target) == 0:
                return u
        return None


@dataclass
class ResidualReport:
    t: int
    variant: str
    entries: list[tuple[str, Scalar, bool]]

    @property
    def passed(self) -> bool:
        return all(z for _, _, z in self.entries)

    def failures(self) -> list[str]:
        return [k for k, _, z in self.entries if not z]

    def to_json(self) -> dict:
        return {
            "t": self.t, "variant": self.variant, "pass": self.passed,
            "residuals": [{"key": k, "value": format_scalar(v), "zero": z} for k, v, z in self.entries],
        }


def _is_zero(x: Scalar) -> bool:
    return not x if x.is_exact else sign(x) == 0


def identity_residuals(model: RelationalModel, p_value: Callable[[Label, Label, Label], object],
                       n: int, t: int, antipodal: bool = False) -> ResidualReport:
    """Residuals LHS - RHS of the intersection-number identities for all
    l + k + 2j <= t and every base relation, multiplied through by
    r_lam^l r_mu^k so that only inner products and squared norms occur.

    With ``antipodal`` set, the antipode classes are moved to the right side
    as in the antipodal variant."""
    h = gegenbauer_table(n, max(t, 6)).h
    entries = []
    P = model.p
    kern_cache: dict = {}

    def K(l: int, lab: Label) -> Scalar:
        key = (l, lab)
        if key not in kern_cache:
            kern_cache[key] = model.kernel(l, lab, n)
        return kern_cache[key]

    if antipodal:
        anti = {lam: model.antipode_class(lam) for lam in range(1, P + 1)}
        if any(v is None for v in anti.values()):
            raise DesignError("antipodal identities need the class -1 on every fiber")
    for lam in range(1, P + 1):
        for mu in range(1, P + 1):
            base = ([0] if lam == mu else []) + model.classes(lam, mu)
            for q in base:
                c = (lam, mu, q)
                for l in range(t + 1):
                    for k in range(t + 1 - l):
                        for j in range((t - l - k) // 2 + 1):
                            lhs: Scalar = Quad(0)
                            total: Scalar = Quad(0)
                            for nu in range(1, P + 1):
                                r2 = model.norms2[nu - 1]
                                total = total + model.sizes[nu - 1] * model.weights[nu - 1] * r2 ** (l + j)
                                us = model.classes(lam, nu)
                                vs = model.classes(nu, mu)
                                if antipodal:
                                    if nu == lam:
                                        us = [u for u in us if u != anti[lam]]
                                    if nu == mu:
                                        vs = [v for v in vs if v != anti[mu]]
                                inner: Scalar = Quad(0)
                                for u in us:
                                    a = (lam, nu, u)
                                    for v in vs:
                                        b = (nu, mu, v)
                                        pv = p_value(a, b, c)
                                        if pv:
                                            inner = inner + pv * K(l, a) * K(k, b)
                                lhs = lhs + model.weights[nu - 1] * r2 ** j * inner
                            rhs: Scalar = (total * K(l, c)) if l == k else Quad(0)
                            rhs = rhs - _identity_terms(model, h, lam, mu, q, l, k, j, antipodal, K)
                            res = lhs - rhs
                            entries.append((f"({l},{k},{j})@{c}", res, _is_zero(res)))
    return ResidualReport(t, "antipodal" if antipodal else "general", entries)


def _identity_terms(model, h, lam, mu, q, l, k, j, antipodal, K) -> Scalar:
    wl, wm = model.weights[lam - 1], model.weights[mu - 1]
    rl, rm = model.norms2[lam - 1], model.norms2[mu - 1]
    c = (lam, mu, q)
    if lam == mu:
        if not antipodal:
            if q == 0:
                return wl * rl ** (j + l + k) * h[l] * h[k]
            return wl * rl ** j * (K(l, c) * rl ** k * h[k] + rl ** l * h[l] * K(k, c))
        sgn = 1 + (-1) ** (l + k)
        if q == 0:
            return sgn * wl * rl ** (j + l + k) * h[l] * h[k]
        if q == model.antipode_class(lam):
            return ((-1) ** k + (-1) ** l) * wl * rl ** (j + l + k) * h[l] * h[k]
        return sgn * wl * rl ** j * (K(l, c) * rl ** k * h[k] + rl ** l * h[l] * K(k, c))
    sgn = (1 + (-1) ** (l + k)) if antipodal else 1
    return sgn * (wm * rm ** j * K(l, c) * rm ** k * h[k] + wl * rl ** j * rl ** l * h[l] * K(k, c))


def _model_from_partition(rp: RelationPartition) -> RelationalModel:
    if not rp.constant_weights:
        raise DesignError("weights must be constant on each layer")
    dec = rp.decomposition
    start = dec.origin_flag
    layers = dec.layers[start:]
    return RelationalModel([len(L.members) for L in layers], [L.weight for L in layers],
                           [L.radius2 for L in layers], dict(rp.ips))


def prop31_residuals(d: Design, tensor: IntersectionTensor, t: int,
                     rp: RelationPartition | None = None) -> ResidualReport:
    rp = rp or build_relations(d)
    if not tensor.constant:
        raise SchemeError("tensor is not constant; identities are stated for constant counts")
    return identity_residuals(_model_from_partition(rp), tensor.value, d.n, t)


def prop33_residuals(d: Design, tensor: IntersectionTensor, t: int,
                     rp: RelationPartition | None = None) -> ResidualReport:
    if not antipodal_check(d):
        raise DesignError("design is not antipodal")
    rp = rp or build_relations(d)
    if not tensor.constant:
        raise SchemeError("tensor is not constant; identities are stated for constant counts")
    return identity_residuals(_model_from_partition(rp), tensor.value, d.n, t, antipodal=True)


# ------------------------------------------------------------ eigenmatrices

@dataclass
class SchemeEigen:
    fiber: int
    size: int
    relations: list[Label]
    B: list[list[list[Scalar]]]
    P: list[list[Scalar]]
    Q: list[list[Scalar]]

    @property
    def valencies(self) -> list[Scalar]:
        return self.P[0]

    def check_PQ(self) -> bool:
        m = len(self.P)
        for i in range(m):
            for j in range(m):
                acc: Scalar = Quad(0)
                for k in range(m):
                    acc = acc + self.P[i][k] * self.Q[k][j]
                if acc != (self.size if i == j else 0):
                    return False
        return True

    def to_json(self) -> dict:
        fmt = lambda M: [[format_scalar(x) for x in row] for row in M]
        return {
            "fiber": self.fiber, "size": self.size,
            "relations": [list(r) for r in self.relations],
            "B": [fmt(b) for b in self.B], "P": fmt(self.P), "Q": fmt(self.Q),
        }


def _matmul(A, B):
    n, m, r = len(A), len(B), len(B[0])
    return [[sum((A[i][k] * B[k][j] for k in range(m)), Quad(0)) for j in range(r)] for i in range(n)]


def _det3(M) -> Scalar:
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def _inverse(M):
    m = len(M)
    if m == 1:
        return [[Quad(1) / M[0][0]]]
    if m == 2:
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        return [[M[1][1] / det, -M[0][1] / det], [-M[1][0] / det, M[0][0] / det]]
    if m == 3:
        det = _det3(M)
        adj = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != j]
                cols = [c for c in range(3) if c != i]
                minor = (M[rows[0]][cols[0]] * M[rows[1]][cols[1]]
                         - M[rows[0]][cols[1]] * M[rows[1]][cols[0]])
                adj[i][j] = minor if (i + j) % 2 == 0 else -minor
        return [[adj[i][j] / det for j in range(3)] for i in range(3)]
    raise SchemeError("eigenmatrices are implemented for at most two classes")


def scheme_matrices(tensor: IntersectionTensor, fiber: int) -> SchemeEigen:
    """Intersection matrices B_i[j][k] = p^{k}_{i,j}, eigenmatrix P (rows sorted by
    descending eigenvalue of the first class) and Q = |fiber| P^{-1}.

    Classes of valency zero are dropped before the computation."""
    rels = [r for r in tensor.relations if r[0] == fiber and r[1] == fiber]
    rels.sort(key=lambda r: r[2])
    ident = rels[0]
    if ident[2] != 0:
        raise SchemeError(f"no identity relation on fiber {fiber}")
    val = {r: tensor.value(r, transpose(r), ident) for r in rels}
    rels = [r for r in rels if r[2] == 0 or val[r] != 0]
    m = len(rels)
    size = tensor.fiber_sizes[fiber - 1]
    for a, b in itertools.product(rels, repeat=2):
        for c in rels:
            if tensor.value(a, b, c) != tensor.value(b, a, c):
                raise SchemeError(f"fiber {fiber} block is not commutative")
            if tensor.value(a, b, c) != tensor.value(transpose(b), transpose(a), transpose(c)):
                raise SchemeError(f"fiber {fiber} block is not symmetric")
    B = [[[as_q(tensor.value(rels[i], rels[j], rels[k])) for k in range(m)] for j in range(m)]
         for i in range(m)]
    for i, j in itertools.product(range(m), repeat=2):
        if _matmul(B[i], B[j]) != _matmul(B[j], B[i]):
            raise SchemeError(f"fiber {fiber} block is not associative/commutative")
    k = [B[i][i][0] for i in range(m)]  # p^{0}_{i,i} = valency
    if m == 1:
        P = [[Quad(1)]]
    elif m == 2:
        P = [[Quad(1), k[1]], [Quad(1), Quad(-1)]]
    elif m == 3:
        thetas = _two_class_eigenvalues(B[1], k[1])
        # A_2 = J - I - A_1: eigenvalue k_2 on the all-ones vector, -1 - theta elsewhere
        P = [[Quad(1), k[1], k[2]]] + [[Quad(1), th, -1 - th] for th in thetas[1:]]
    else:
        raise SchemeError("eigenmatrices are implemented for at most two classes")
    Pinv = _inverse(P)
    Q = [[size * x for x in row] for row in Pinv]
    return SchemeEigen(fiber, size, rels, B, P, Q)


def as_q(x) -> Scalar:
    return x if isinstance(x, Scalar) else Quad(x)


def _two_class_eigenvalues(B1, k1) -> list[Scalar]:
    """Eigenvalues of the first adjacency matrix: k1 and the two roots of the
    quadratic left after dividing the characteristic polynomial by (x - k1)."""
    # char poly x^3 - tr x^2 + s2 x - det
    tr = B1[0][0] + B1[1][1] + B1[2][2]
    s2 = (B1[0][0] * B1[1][1] - B1[0][1] * B1[1][0]
          + B1[0][0] * B1[2][2] - B1[0][2] * B1[2][0]
          + B1[1][1] * B1[2][2] - B1[1][2] * B1[2][1])
    # x^3 - tr x^2 + s2 x - det = (x - k1)(x^2 + b x + c)
    b = k1 - tr
    c = s2 + k1 * b
    disc = b * b - 4 * c
    if not (isinstance(disc, Quad) and disc.is_rational):
        raise SchemeError("irrational discriminant outside the supported field")
    root = sqrt_exact(disc.a)
    th1 = (-b + root) / 2
    th2 = (-b - root) / 2
    return [k1, th1, th2]
